#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "globeq/field.hpp"

namespace globeq {

enum class Topology { Rectangle, SphereChart };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);

/// Index pair (i, j) of the grid vertex (i a / n, j b / n).
///
/// In the sphere chart, i is taken modulo n and both pole rows collapse to
/// i = 0, so every geometric vertex has exactly one canonical id.
struct VertexId {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

using OppositePair = std::pair<VertexId, VertexId>;

struct TiedPair {
  VertexId first;
  VertexId second;
  double difference = 0.0;
};

/// Result of a nondegeneracy scan. `pairs` is truncated at the scan limit;
/// `pair_count` is always exact.
struct TieReport {
  std::size_t pair_count = 0;
  std::vector<TiedPair> pairs;
  bool empty() const { return pair_count == 0; }
};

/// Values of a field on the equidistant n x n division of [0,a] x [0,b].
///
/// Immutable once built. Values are stored row-major by j: value(i, j) is
/// element j * (n + 1) + i. In the sphere chart (a = 2 pi, b = pi, x is
/// longitude and y colatitude) column n repeats column 0 and the pole rows
/// j = 0 and j = n hold a single value each.
class GridSampling {
 public:
  GridSampling(int n, double a, double b, Topology topology, std::vector<double> values);

  int n() const { return n_; }
  double a() const { return a_; }
  double b() const { return b_; }
  Topology topology() const { return topology_; }
  /// Minimal distance between two grid vertices, min(a, b) / n.
  double delta() const { return std::min(a_, b_) / n_; }
  /// Cell diagonal sqrt(a^2 + b^2) / n.
  double big_delta() const;

  double x(int i) const { return i == n_ ? a_ : a_ * i / n_; }
  double y(int j) const { return j == n_ ? b_ : b_ * j / n_; }

  double value(int i, int j) const { return values_[index(i, j)]; }
  double value(VertexId v) const { return value(v.i, v.j); }
  const std::vector<double>& values() const { return values_; }

  bool valid(VertexId v) const;
  VertexId canonical(int i, int j) const;
  bool is_pole(VertexId v) const {
    return topology_ == Topology::SphereChart && (v.j == 0 || v.j == n_);
  }

  /// Canonical vertices in (i, j) order; each geometric vertex appears once.
  std::vector<VertexId> vertices() const;

  /// Opposite neighbor pairs. Two pairs for ordinary vertices; a pole gets
  /// n/2 pairs of diametrically opposite vertices of the adjacent row.
  std::vector<OppositePair> neighbors(VertexId v) const;

  /// Whether the grid circle of radius r around v lies fully inside the grid.
  /// Always true in the sphere chart.
  bool circle_complete(VertexId v, int r) const;

  /// Visits every vertex of C_r(v) once, v included. Stops early when `fn`
  /// returns false; returns false in that case. In the sphere chart, index
  /// distance may also run through a pole: (l, m) is in the circle of (i, j)
  /// when j + m <= r (or (n - j) + (n - m) <= r), whatever the column.
  template <typename Fn>
  bool for_each_in_circle(VertexId v, int r, Fn&& fn) const;

  /// All vertices at Chebyshev index distance <= r from v, in (i, j) order.
  std::vector<VertexId> grid_circle(VertexId v, int r) const;

  /// Pairs of canonical vertices whose values differ by at most tol.
  TieReport nondegeneracy_check(double tol, std::size_t max_pairs = 1000) const;

  /// Copy with values shifted by eps_tie * u(i, j), u in [0, 1) a seeded hash
  /// and eps_tie = 1e-12 * (value range). Pole rows stay constant.
  GridSampling perturbed(std::uint64_t seed) const;

  /// Copy with every value negated.
  GridSampling negated() const;

  void dump(std::ostream& out) const;
  static GridSampling load(std::istream& in);

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_ + 1) +
           static_cast<std::size_t>(i);
  }

  int n_;
  double a_;
  double b_;
  Topology topology_;
  std::vector<double> values_;
};

/// Samples `field` at every grid vertex. Sphere-chart grids require n even
/// and a = 2 b; pole rows are evaluated once and replicated.
GridSampling sample(const ScalarField& field, int n, Topology topology = Topology::Rectangle);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

template <typename Fn>
bool GridSampling::for_each_in_circle(VertexId v, int r, Fn&& fn) const {
  if (topology_ == Topology::Rectangle) {
    for (int m = v.j - r; m <= v.j + r; ++m)
      for (int l = v.i - r; l <= v.i + r; ++l)
        if (!fn(VertexId{l, m})) return false;
    return true;
  }

  // Rows within r - j of the first pole (r - (n - j) of the last) are reached
  // through the pole, so they join the circle in every column.
  const bool touches_first_pole = v.j - r <= 0;
  const bool touches_last_pole = v.j + r >= n_;
  if (touches_first_pole && !fn(VertexId{0, 0})) return false;
  const int lo = std::max(1, v.j - r);
  const int hi = std::min(n_ - 1, v.j + r);
  const int first_cap = r - v.j;
  const int last_cap = n_ - (r - (n_ - v.j));
  const int span = 2 * r + 1;
  for (int m = lo; m <= hi; ++m) {
    if (m <= first_cap || m >= last_cap || span >= n_) {
      for (int l = 0; l < n_; ++l)
        if (!fn(VertexId{l, m})) return false;
    } else {
      for (int d = -r; d <= r; ++d) {
        const int l = ((v.i + d) % n_ + n_) % n_;
        if (!fn(VertexId{l, m})) return false;
      }
    }
  }
  if (touches_last_pole && !fn(VertexId{0, n_})) return false;
  return true;
}

}  // namespace globeq
