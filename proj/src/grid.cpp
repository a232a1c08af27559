#include "globeq/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "globeq/errors.hpp"

namespace globeq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string describe(VertexId v) {
  std::ostringstream s;
  s << "(" << v.i << ", " << v.j << ")";
  return s.str();
}

}  // namespace

std::string to_string(Topology t) { return t == Topology::Rectangle ? "rectangle" : "sphere_chart"; }

Topology topology_from_string(const std::string& s) {
  if (s == "rectangle") return Topology::Rectangle;
  if (s == "sphere_chart") return Topology::SphereChart;
  throw ParseError("unknown topology '" + s + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

GridSampling::GridSampling(int n, double a, double b, Topology topology, std::vector<double> values)
    : n_(n), a_(a), b_(b), topology_(topology), values_(std::move(values)) {
  if (n < 4) throw ParameterError("grid needs n >= 4");
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("grid domain lengths must be positive");
  if (values_.size() != static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1))
    throw ParameterError("grid value array must hold (n+1)^2 entries");
  if (topology == Topology::SphereChart) {
    if (n % 2 != 0) throw ParameterError("sphere-chart grid needs an even n");
    if (std::abs(a - 2.0 * b) > 1e-12 * a) throw ParameterError("sphere-chart grid needs a = 2b");
  }
}

double GridSampling::big_delta() const { return std::hypot(a_, b_) / n_; }

bool GridSampling::valid(VertexId v) const {
  if (v.j < 0 || v.j > n_) return false;
  if (topology_ == Topology::Rectangle) return v.i >= 0 && v.i <= n_;
  if (v.j == 0 || v.j == n_) return v.i == 0;
  return v.i >= 0 && v.i < n_;
}

VertexId GridSampling::canonical(int i, int j) const {
  if (topology_ == Topology::Rectangle) return {i, j};
  if (j <= 0) return {0, 0};
  if (j >= n_) return {0, n_};
  return {((i % n_) + n_) % n_, j};
}

std::vector<VertexId> GridSampling::vertices() const {
  std::vector<VertexId> out;
  if (topology_ == Topology::Rectangle) {
    out.reserve(values_.size());
    for (int i = 0; i <= n_; ++i)
      for (int j = 0; j <= n_; ++j) out.push_back({i, j});
    return out;
  }
  out.reserve(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_ - 1) + 2);
  for (int i = 0; i < n_; ++i) {
    if (i == 0) out.push_back({0, 0});
    for (int j = 1; j < n_; ++j) out.push_back({i, j});
    if (i == 0) out.push_back({0, n_});
  }
  return out;
}

std::vector<OppositePair> GridSampling::neighbors(VertexId v) const {
  if (!valid(v)) throw ParameterError("invalid vertex " + describe(v));
  if (topology_ == Topology::Rectangle) {
    if (v.i <= 0 || v.i >= n_ || v.j <= 0 || v.j >= n_)
      throw BoundaryVertexError("boundary vertex " + describe(v) + " lacks a full neighbor set");
    return {{{v.i - 1, v.j}, {v.i + 1, v.j}}, {{v.i, v.j - 1}, {v.i, v.j + 1}}};
  }
  if (is_pole(v)) {
    const int row = v.j == 0 ? 1 : n_ - 1;
    std::vector<OppositePair> pairs;
    pairs.reserve(static_cast<std::size_t>(n_ / 2));
    for (int k = 0; k < n_ / 2; ++k) pairs.push_back({{k, row}, {k + n_ / 2, row}});
    return pairs;
  }
  return {{canonical(v.i - 1, v.j), canonical(v.i + 1, v.j)},
          {canonical(v.i, v.j - 1), canonical(v.i, v.j + 1)}};
}

bool GridSampling::circle_complete(VertexId v, int r) const {
  if (topology_ == Topology::SphereChart) return true;
  return v.i - r >= 0 && v.i + r <= n_ && v.j - r >= 0 && v.j + r <= n_;
}

std::vector<VertexId> GridSampling::grid_circle(VertexId v, int r) const {
  if (r < 1) throw ParameterError("grid circle radius must be >= 1");
  if (!valid(v)) throw ParameterError("invalid vertex " + describe(v));
  if (!circle_complete(v, r))
    throw IncompleteCircleError("grid circle of radius " + std::to_string(r) + " around " +
                                describe(v) + " leaves the grid");
  std::vector<VertexId> out;
  for_each_in_circle(v, r, [&](VertexId w) {
    out.push_back(w);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

TieReport GridSampling::nondegeneracy_check(double tol, std::size_t max_pairs) const {
  std::vector<VertexId> order = vertices();
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId l, VertexId r) { return value(l) < value(r); });
  TieReport report;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double base = value(order[k]);
    for (std::size_t m = k + 1; m < order.size(); ++m) {
      const double diff = value(order[m]) - base;
      if (diff > tol) break;
      ++report.pair_count;
      if (report.pairs.size() < max_pairs) {
        auto [lo, hi] = std::minmax(order[k], order[m]);
        report.pairs.push_back({lo, hi, diff});
      }
    }
  }
  return report;
}

GridSampling GridSampling::perturbed(std::uint64_t seed) const {
  const auto [mn, mx] = std::minmax_element(values_.begin(), values_.end());
  const double eps = 1e-12 * (*mx - *mn);
  std::vector<double> out(values_.size());
  for (int j = 0; j <= n_; ++j) {
    for (int i = 0; i <= n_; ++i) {
      const VertexId c = canonical(i, j);
      const std::uint64_t h = splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(c.i) << 32) |
                                                           static_cast<std::uint32_t>(c.j)));
      const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
      out[index(i, j)] = values_[index(i, j)] + eps * u;
    }
  }
  return GridSampling(n_, a_, b_, topology_, std::move(out));
}

GridSampling GridSampling::negated() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](double v) { return -v; });
  return GridSampling(n_, a_, b_, topology_, std::move(out));
}

void GridSampling::dump(std::ostream& out) const {
  out << n_ << ' ' << format_double(a_) << ' ' << format_double(b_) << ' ' << to_string(topology_)
      << '\n';
  for (int j = 0; j <= n_; ++j) {
    for (int i = 0; i <= n_; ++i) {
      if (i) out << ' ';
      out << format_double(value(i, j));
    }
    out << '\n';
  }
}

GridSampling GridSampling::load(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("grid file: missing header");
  std::istringstream hs(header);
  int n = 0;
  std::string a_text, b_text, topo;
  if (!(hs >> n >> a_text >> b_text >> topo)) throw ParseError("grid file: bad header '" + header + "'");
  auto parse = [](const std::string& t) {
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
      throw ParseError("grid file: bad number '" + t + "'");
    return v;
  };
  const double a = parse(a_text);
  const double b = parse(b_text);
  if (n < 4) throw ParseError("grid file: n must be >= 4");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1));
  std::string line, token;
  for (int j = 0; j <= n; ++j) {
    if (!std::getline(in, line)) throw ParseError("grid file: missing row " + std::to_string(j));
    std::istringstream ls(line);
    int count = 0;
    while (ls >> token) {
      values.push_back(parse(token));
      ++count;
    }
    if (count != n + 1) throw ParseError("grid file: row " + std::to_string(j) + " has wrong length");
  }
  return GridSampling(n, a, b, topology_from_string(topo), std::move(values));
}

GridSampling sample(const ScalarField& field, int n, Topology topology) {
  if (n < 4) throw ParameterError("sampling needs n >= 4");
  const double a = field.a(), b = field.b();
  std::vector<double> values(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1));
  auto x = [&](int i) { return i == n ? a : a * i / n; };
  auto y = [&](int j) { return j == n ? b : b * j / n; };
  const std::size_t stride = static_cast<std::size_t>(n + 1);
  if (topology == Topology::Rectangle) {
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) values[j * stride + i] = field.eval(x(i), y(j));
  } else {
    if (n % 2 != 0) throw ParameterError("sphere-chart grid needs an even n");
    if (std::abs(a - 2.0 * b) > 1e-12 * a) throw ParameterError("sphere-chart grid needs a = 2b");
    const double first_pole = field.eval(0.0, 0.0);
    const double last_pole = field.eval(0.0, b);
    for (int i = 0; i <= n; ++i) {
      values[i] = first_pole;
      values[n * stride + i] = last_pole;
    }
    for (int j = 1; j < n; ++j) {
      for (int i = 0; i < n; ++i) values[j * stride + i] = field.eval(x(i), y(j));
      values[j * stride + n] = values[j * stride];
    }
  }
  return GridSampling(n, a, b, topology, std::move(values));
}

}  // namespace globeq
