#include "globeq/detect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "globeq/errors.hpp"

namespace globeq {

std::string to_string(CensusMode m) { return m == CensusMode::Rectangle ? "rectangle" : "closed_surface"; }

CensusMode census_mode_from_string(const std::string& s) {
  if (s == "rectangle") return CensusMode::Rectangle;
  if (s == "closed_surface") return CensusMode::ClosedSurface;
  throw ParameterError("unknown census mode '" + s + "'");
}

std::vector<VertexId> stationary_vertices(const GridSampling& grid) {
  std::vector<VertexId> out;
  for (const VertexId v : grid.vertices()) {
    if (grid.topology() == Topology::Rectangle &&
        (v.i == 0 || v.j == 0 || v.i == grid.n() || v.j == grid.n()))
      continue;
    bool stationary = true;
    for (const auto& [q, q2] : grid.neighbors(v)) {
      const bool above = precedes(grid, q, v) && precedes(grid, q2, v);
      const bool below = precedes(grid, v, q) && precedes(grid, v, q2);
      if (!above && !below) {
        stationary = false;
        break;
      }
    }
    if (stationary) out.push_back(v);
  }
  return out;
}

bool is_circle_minimum(const GridSampling& grid, VertexId v, int r) {
  return grid.for_each_in_circle(v, r, [&](VertexId w) { return w == v || precedes(grid, v, w); });
}

bool is_circle_maximum(const GridSampling& grid, VertexId v, int r) {
  // minimum of -f under the same (i, j) tie-break
  return grid.for_each_in_circle(v, r, [&](VertexId w) {
    if (w == v) return true;
    const double a = -grid.value(v), b = -grid.value(w);
    return a < b || (a == b && v < w);
  });
}

namespace {

template <typename Pred>
std::vector<VertexId> circle_extrema(const GridSampling& grid, int r, Pred&& is_extremum) {
  if (r < 1) throw ParameterError("grid circle radius must be >= 1");
  std::vector<VertexId> out;
  for (const VertexId v : grid.vertices()) {
    if (!grid.circle_complete(v, r)) continue;
    if (is_extremum(grid, v, r)) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<VertexId> circle_minima(const GridSampling& grid, int r) {
  return circle_extrema(grid, r, is_circle_minimum);
}

std::vector<VertexId> circle_maxima(const GridSampling& grid, int r) {
  return circle_extrema(grid, r, is_circle_maximum);
}

int radius_bound(const RadiusParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (!(p.tau >= 1.0)) throw ParameterError("tau must be >= 1");
  if (!(p.a > 0.0) || !(p.b > 0.0)) throw ParameterError("domain lengths must be positive");
  const double d = std::hypot(p.a, p.b) / std::min(p.a, p.b);
  const double bound =
      std::max(1.5 * d, p.tau * d * std::sqrt((1.0 + p.epsilon) / (1.0 - p.epsilon)));
  const double nearest = std::round(bound);
  if (std::abs(bound - nearest) < 1e-9) return static_cast<int>(nearest) + 1;
  return static_cast<int>(std::ceil(bound));
}

Census equilibrium_census(const GridSampling& grid, int r, CensusMode mode) {
  if (mode == CensusMode::ClosedSurface && grid.topology() != Topology::SphereChart)
    throw ParameterError("closed-surface census needs a sphere-chart grid");
  Census c;
  c.mode = mode;
  c.n = grid.n();
  c.r = r;
  c.minima = circle_minima(grid, r);
  c.maxima = circle_maxima(grid, r);

  const TieReport ties = grid.nondegeneracy_check(1e-12, 1);
  if (!ties.empty()) {
    std::ostringstream w;
    w << "nondegeneracy: " << ties.pair_count << " vertex pairs within 1e-12, e.g. ("
      << ties.pairs[0].first.i << "," << ties.pairs[0].first.j << ") and (" << ties.pairs[0].second.i
      << "," << ties.pairs[0].second.j << "); ties broken by (i, j) order";
    c.warnings.push_back(w.str());
  }

  if (mode == CensusMode::ClosedSurface) {
    if (c.S() + c.U() < 2) {
      std::ostringstream msg;
      msg << "inconsistent closed-surface census: S=" << c.S() << ", U=" << c.U()
          << " gives a negative saddle count (n=" << grid.n() << ", r=" << r << ")";
      throw InconsistentCensusError(msg.str());
    }
    c.saddles = c.S() + c.U() - 2;
  }
  return c;
}

RadiusSweep radius_sweep(const GridSampling& grid, int r_min, int r_max, CensusMode mode) {
  if (r_min < 1 || r_max < r_min) throw ParameterError("sweep needs 1 <= r_min <= r_max");
  if (mode == CensusMode::ClosedSurface && grid.topology() != Topology::SphereChart)
    throw ParameterError("closed-surface sweep needs a sphere-chart grid");
  RadiusSweep sweep;
  for (int r = r_min; r <= r_max; ++r) {
    sweep.entries.push_back({r, static_cast<int>(circle_minima(grid, r).size()),
                             static_cast<int>(circle_maxima(grid, r).size())});
  }
  std::size_t best_start = 0, best_len = 0;
  for (std::size_t k = 0; k < sweep.entries.size();) {
    std::size_t m = k + 1;
    while (m < sweep.entries.size() && sweep.entries[m].S == sweep.entries[k].S &&
           sweep.entries[m].U == sweep.entries[k].U)
      ++m;
    if (m - k >= best_len) {
      best_len = m - k;
      best_start = k;
    }
    k = m;
  }
  const SweepEntry& first = sweep.entries[best_start];
  sweep.plateau = {first.S, first.U, first.r, sweep.entries[best_start + best_len - 1].r};
  return sweep;
}

std::string sweep_csv(const RadiusSweep& sweep) {
  std::ostringstream out;
  out << "r,S,U\n";
  for (const auto& e : sweep.entries) out << e.r << ',' << e.S << ',' << e.U << '\n';
  return out.str();
}

Count1d count_1d(std::span<const double> values) {
  if (values.size() < 3) throw ParameterError("count_1d needs at least 3 samples");
  auto before = [&](std::size_t p, std::size_t q) {
    return values[p] < values[q] || (values[p] == values[q] && p < q);
  };
  Count1d c;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    if (before(k, k - 1) && before(k, k + 1)) ++c.minima;
    if (before(k - 1, k) && before(k + 1, k)) ++c.maxima;
  }
  return c;
}

Census auto_radius_census(const GridSampling& grid, CensusMode mode, const TauEstimator& tau_at,
                          const AutoRadiusOptions& options) {
  const int cap = options.r_cap > 0 ? options.r_cap : std::max(1, grid.n() / 8);
  auto bound_for = [&](double tau) {
    return std::min(cap, radius_bound({std::max(1.0, tau), options.epsilon, grid.a(), grid.b()}));
  };

  int r = bound_for(1.0);
  Census census = equilibrium_census(grid, r, mode);
  std::vector<std::string> notes;
  for (int pass = 0; pass < options.max_refinements; ++pass) {
    double tau_max = 1.0;
    for (const auto& group : {census.minima, census.maxima}) {
      for (const VertexId v : group) {
        if (const auto tau = tau_at(v, r)) tau_max = std::max(tau_max, *tau);
      }
    }
    // circles only grow: extrema removed at a wider radius stay removed
    const int next = std::max(r, bound_for(tau_max));
    std::ostringstream note;
    note << "auto radius pass " << pass + 1 << ": tau_max=" << tau_max << " at r=" << r
         << " implies r=" << next;
    notes.push_back(note.str());
    if (next == r) break;
    r = next;
    census = equilibrium_census(grid, r, mode);
  }
  // kinks fool the tau estimate; keep doubling while the counts at 2r differ
  while (options.stability_check && r < cap) {
    const int wider = std::min(cap, 2 * r);
    Census next = equilibrium_census(grid, wider, mode);
    const bool stable = next.S() == census.S() && next.U() == census.U();
    std::ostringstream note;
    note << "stability: r=" << r << " gives (" << census.S() << "," << census.U() << "), r=" << wider
         << " gives (" << next.S() << "," << next.U() << ")";
    notes.push_back(note.str());
    if (stable) break;
    r = wider;
    census = std::move(next);
  }
  census.warnings.insert(census.warnings.begin(), notes.begin(), notes.end());
  return census;
}

nlohmann::ordered_json census_json(const Census& census, const GridSampling& grid) {
  auto points = [&](const std::vector<VertexId>& vs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const VertexId v : vs)
      arr.push_back({v.i, v.j, grid.x(v.i), grid.y(v.j), grid.value(v)});
    return arr;
  };
  nlohmann::ordered_json j;
  j["mode"] = to_string(census.mode);
  j["n"] = census.n;
  j["r"] = census.r;
  j["S"] = census.S();
  j["U"] = census.U();
  j["N"] = census.saddles ? nlohmann::ordered_json(*census.saddles) : nlohmann::ordered_json(nullptr);
  j["minima"] = points(census.minima);
  j["maxima"] = points(census.maxima);
  j["warnings"] = census.warnings;
  return j;
}

}  // namespace globeq
