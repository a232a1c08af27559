#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "globeq/field.hpp"

namespace globeq {

enum class PointKind { Minimum, Maximum, Saddle };

std::string to_string(PointKind k);

struct StationaryPoint {
  double x = 0.0;
  double y = 0.0;
  PointKind kind = PointKind::Minimum;
  HessianEigens eigens;
};

/// Continuous stationary points of a field, sorted by x then y.
struct OracleReport {
  std::vector<StationaryPoint> points;
  int s = 0;
  int u = 0;
  int saddles = 0;
  double g_tol = 0.0;
  double merge_radius = 0.0;

  /// Largest eigenvalue ratio over minima and maxima; nullopt without extrema.
  std::optional<double> tau_max() const;
};

/// Kind from the Hessian eigenvalue signs. Throws DegeneracyError on a
/// singular Hessian.
std::pair<PointKind, HessianEigens> classify(const ScalarField& field, double x, double y);

/// Whether both gradient components change sign (or vanish) over the corners
/// of seed cell (ci, cj) of a seed_grid x seed_grid division.
bool cell_may_contain_root(const ScalarField& field, int seed_grid, int ci, int cj);

/// Damped Newton on the gradient from every seed cell flagged by
/// cell_may_contain_root; converged interior roots are merged and classified.
/// Non-converging seeds are dropped.
OracleReport find_stationary(const ScalarField& field, int seed_grid = 512, int polish_iters = 50);

/// `points` as {x, y, kind, lambda1, lambda2}, plus `s`, `u`, `saddles`.
nlohmann::ordered_json oracle_json(const OracleReport& report);

}  // namespace globeq
