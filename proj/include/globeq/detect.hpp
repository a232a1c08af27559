#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "globeq/grid.hpp"

namespace globeq {

enum class CensusMode { Rectangle, ClosedSurface };

std::string to_string(CensusMode m);
CensusMode census_mode_from_string(const std::string& s);

/// Stable (S), unstable (U) and saddle (N) equilibria found on a grid.
struct Census {
  CensusMode mode = CensusMode::Rectangle;
  int n = 0;
  int r = 0;
  std::vector<VertexId> minima;
  std::vector<VertexId> maxima;
  /// S + U - 2 on closed surfaces; empty on rectangles.
  std::optional<int> saddles;
  std::vector<std::string> warnings;

  int S() const { return static_cast<int>(minima.size()); }
  int U() const { return static_cast<int>(maxima.size()); }
};

struct RadiusParams {
  double tau = 1.0;  // lambda2 / lambda1 >= 1
  double epsilon = 0.1;
  double a = 1.0;
  double b = 1.0;
};

/// Total order used for every comparison: value first, then (i, j).
inline bool precedes(const GridSampling& g, VertexId v, VertexId w) {
  const double a = g.value(v), b = g.value(w);
  return a < b || (a == b && v < w);
}

/// Vertices that are above or below both members of each opposite neighbor
/// pair. Rectangle grids only consider interior vertices.
std::vector<VertexId> stationary_vertices(const GridSampling& grid);

bool is_circle_minimum(const GridSampling& grid, VertexId v, int r);
bool is_circle_maximum(const GridSampling& grid, VertexId v, int r);

/// Vertices strictly smallest within their grid circle of radius r, in (i, j)
/// order. On rectangles only vertices with complete circles take part.
std::vector<VertexId> circle_minima(const GridSampling& grid, int r);
std::vector<VertexId> circle_maxima(const GridSampling& grid, int r);

/// Smallest integer r with
///   r >= max{ 3 d / 2, tau d sqrt((1 + eps) / (1 - eps)) },  d = sqrt(a^2 + b^2) / min(a, b),
/// bumped by one when the bound sits within 1e-9 of an integer.
int radius_bound(const RadiusParams& params);

/// Throws InconsistentCensusError in closed-surface mode when S + U < 2.
Census equilibrium_census(const GridSampling& grid, int r, CensusMode mode);

struct SweepEntry {
  int r = 0;
  int S = 0;
  int U = 0;
};

struct Plateau {
  int S = 0;
  int U = 0;
  int r_first = 0;
  int r_last = 0;
  int length() const { return r_last - r_first + 1; }
};

struct RadiusSweep {
  std::vector<SweepEntry> entries;
  Plateau plateau;
};

/// Census counts for every r in [r_min, r_max] and the longest run of equal
/// (S, U); equal-length runs resolve toward larger r.
RadiusSweep radius_sweep(const GridSampling& grid, int r_min, int r_max, CensusMode mode);
std::string sweep_csv(const RadiusSweep& sweep);

struct Count1d {
  int minima = 0;
  int maxima = 0;
};

/// Interior local minima and maxima of an equidistant 1D sampling.
Count1d count_1d(std::span<const double> values);

/// Eigenvalue ratio estimate at a detected extremum, given the current radius.
using TauEstimator = std::function<std::optional<double>(VertexId, int r)>;

struct AutoRadiusOptions {
  double epsilon = 0.1;
  int max_refinements = 2;
  /// Upper cap on r; 0 selects n / 8.
  int r_cap = 0;
  /// After the tau passes, double r up to the cap while the counts change.
  bool stability_check = true;
};

/// Census with r taken from radius_bound: start at tau = 1, estimate tau at
/// the detected extrema, re-run with the implied radius, at most
/// `max_refinements` times. The radius never shrinks between passes.
Census auto_radius_census(const GridSampling& grid, CensusMode mode, const TauEstimator& tau_at,
                          const AutoRadiusOptions& options = {});

/// `mode`, `n`, `r`, `S`, `U`, `N`, `minima`, `maxima` ([i, j, x, y, value]) and `warnings`.
nlohmann::ordered_json census_json(const Census& census, const GridSampling& grid);

}  // namespace globeq
