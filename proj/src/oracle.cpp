#include "globeq/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "globeq/errors.hpp"

namespace globeq {

namespace {

using Grad = std::array<double, 2>;

double norm(const Grad& g) { return std::hypot(g[0], g[1]); }

bool straddles_zero(double a, double b, double c, double d) {
  return std::min({a, b, c, d}) <= 0.0 && std::max({a, b, c, d}) >= 0.0;
}

bool corners_straddle(const Grad& g00, const Grad& g10, const Grad& g01, const Grad& g11) {
  return straddles_zero(g00[0], g10[0], g01[0], g11[0]) &&
         straddles_zero(g00[1], g10[1], g01[1], g11[1]);
}

struct Polisher {
  const ScalarField& field;
  int max_iters;
  double g_tol;

  std::optional<Eigen::Vector2d> run(Eigen::Vector2d p) const {
    Grad g = field.gradient(p.x(), p.y());
    for (int it = 0; it < max_iters; ++it) {
      if (norm(g) < g_tol) return p;
      const Eigen::Matrix2d h = field.hessian(p.x(), p.y());
      const double det = h.determinant();
      if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return std::nullopt;
      const Eigen::Vector2d step = -h.inverse() * Eigen::Vector2d(g[0], g[1]);
      double t = 1.0;
      bool improved = false;
      for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
        const Eigen::Vector2d q = p + t * step;
        if (!field.contains(q.x(), q.y())) continue;
        const Grad gq = field.gradient(q.x(), q.y());
        if (norm(gq) < norm(g)) {
          p = q;
          g = gq;
          improved = true;
          break;
        }
      }
      if (!improved) return norm(g) < g_tol ? std::optional(p) : std::nullopt;
    }
    return norm(g) < g_tol ? std::optional(p) : std::nullopt;
  }
};

}  // namespace

std::string to_string(PointKind k) {
  switch (k) {
    case PointKind::Minimum: return "minimum";
    case PointKind::Maximum: return "maximum";
    case PointKind::Saddle: return "saddle";
  }
  return "unknown";
}

std::optional<double> OracleReport::tau_max() const {
  std::optional<double> best;
  for (const auto& p : points) {
    if (p.kind == PointKind::Saddle || !p.eigens.tau) continue;
    best = best ? std::max(*best, *p.eigens.tau) : *p.eigens.tau;
  }
  return best;
}

std::pair<PointKind, HessianEigens> classify(const ScalarField& field, double x, double y) {
  const HessianEigens e = field.hessian_eigens(x, y);
  if (e.lambda1 > 0.0 && e.lambda2 > 0.0) return {PointKind::Minimum, e};
  if (e.lambda1 < 0.0 && e.lambda2 < 0.0) return {PointKind::Maximum, e};
  return {PointKind::Saddle, e};
}

bool cell_may_contain_root(const ScalarField& field, int seed_grid, int ci, int cj) {
  const double hx = field.a() / seed_grid, hy = field.b() / seed_grid;
  auto x = [&](int i) { return i == seed_grid ? field.a() : hx * i; };
  auto y = [&](int j) { return j == seed_grid ? field.b() : hy * j; };
  return corners_straddle(field.gradient(x(ci), y(cj)), field.gradient(x(ci + 1), y(cj)),
                          field.gradient(x(ci), y(cj + 1)), field.gradient(x(ci + 1), y(cj + 1)));
}

OracleReport find_stationary(const ScalarField& field, int seed_grid, int polish_iters) {
  if (seed_grid < 1) throw ParameterError("seed grid must be positive");
  const int m = seed_grid;
  const double a = field.a(), b = field.b();
  auto x = [&](int i) { return i == m ? a : a * i / m; };
  auto y = [&](int j) { return j == m ? b : b * j / m; };

  std::vector<Grad> corner(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(m + 1));
  auto at = [&](int i, int j) -> Grad& { return corner[static_cast<std::size_t>(j) * (m + 1) + i]; };
  double scale = 0.0;
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= m; ++i) {
      at(i, j) = field.gradient(x(i), y(j));
      scale = std::max(scale, norm(at(i, j)));
    }

  OracleReport report;
  report.g_tol = 1e-10 * (scale > 0.0 ? scale : 1.0);
  report.merge_radius = 1e-6 * std::min(a, b);
  const Polisher polish{field, polish_iters, report.g_tol};

  std::vector<Eigen::Vector2d> roots;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (!corners_straddle(at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1))) continue;
      const auto root = polish.run({0.5 * (x(i) + x(i + 1)), 0.5 * (y(j) + y(j + 1))});
      if (!root) continue;
      const double r = report.merge_radius;
      if (root->x() <= r || root->x() >= a - r || root->y() <= r || root->y() >= b - r) continue;
      roots.push_back(*root);
    }
  }

  std::sort(roots.begin(), roots.end(), [](const Eigen::Vector2d& l, const Eigen::Vector2d& r) {
    return l.x() < r.x() || (l.x() == r.x() && l.y() < r.y());
  });
  std::vector<Eigen::Vector2d> merged;
  for (const auto& p : roots) {
    const bool dup = std::any_of(merged.begin(), merged.end(), [&](const Eigen::Vector2d& q) {
      return (p - q).norm() <= report.merge_radius;
    });
    if (!dup) merged.push_back(p);
  }

  for (const auto& p : merged) {
    const auto [kind, eig] = classify(field, p.x(), p.y());
    report.points.push_back({p.x(), p.y(), kind, eig});
    switch (kind) {
      case PointKind::Minimum: ++report.s; break;
      case PointKind::Maximum: ++report.u; break;
      case PointKind::Saddle: ++report.saddles; break;
    }
  }
  return report;
}

nlohmann::ordered_json oracle_json(const OracleReport& report) {
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : report.points) {
    nlohmann::ordered_json e;
    e["x"] = p.x;
    e["y"] = p.y;
    e["kind"] = to_string(p.kind);
    e["lambda1"] = p.eigens.lambda1;
    e["lambda2"] = p.eigens.lambda2;
    pts.push_back(e);
  }
  nlohmann::ordered_json j;
  j["points"] = pts;
  j["s"] = report.s;
  j["u"] = report.u;
  j["saddles"] = report.saddles;
  return j;
}

}  // namespace globeq
