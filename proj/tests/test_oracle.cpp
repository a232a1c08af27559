#include <cmath>
#include <numbers>
#include <set>

#include <doctest.h>

#include "globeq/errors.hpp"
#include "globeq/oracle.hpp"

using namespace globeq;
using std::numbers::pi;

TEST_CASE("paraboloid has one minimum at its centre") {
  const OracleReport o = find_stationary(fields::paraboloid());
  REQUIRE(o.points.size() == 1);
  CHECK(o.points[0].kind == PointKind::Minimum);
  CHECK(std::abs(o.points[0].x - 0.47) < 1e-10);
  CHECK(std::abs(o.points[0].y - 0.53) < 1e-10);
  CHECK(o.s == 1);
  CHECK(o.u == 0);
}

TEST_CASE("product field inventory") {
  const OracleReport o = find_stationary(fields::product());
  CHECK(o.points.size() == 13);
  CHECK(o.s == 4);
  CHECK(o.u == 5);
  CHECK(o.saddles == 4);
  // every critical point sits on the lattice {1/6, 1/3, 1/2, 2/3, 5/6}^2
  for (const auto& p : o.points) {
    CHECK(std::abs(p.x * 6.0 - std::round(p.x * 6.0)) < 1e-9);
    CHECK(std::abs(p.y * 6.0 - std::round(p.y * 6.0)) < 1e-9);
    const double value = fields::product().eval(p.x, p.y);
    if (p.kind == PointKind::Minimum) CHECK(value == doctest::Approx(-1.0));
    if (p.kind == PointKind::Maximum) CHECK(value == doctest::Approx(1.0));
    if (p.kind == PointKind::Saddle) CHECK(std::abs(value) < 1e-9);
  }
}

TEST_CASE("linear field has no stationary points") {
  CHECK(find_stationary(fields::linear()).points.empty());
}

TEST_CASE("classify examples") {
  const auto [k1, e1] = classify(fields::paraboloid(), 0.47, 0.53);
  CHECK(k1 == PointKind::Minimum);
  CHECK(e1.lambda1 == doctest::Approx(2.0));
  CHECK(e1.lambda2 == doctest::Approx(2.0));

  const auto [k2, e2] = classify(fields::saddle(), 0.47, 0.53);
  CHECK(k2 == PointKind::Saddle);
  CHECK(e2.lambda1 == doctest::Approx(2.0));
  CHECK(e2.lambda2 == doctest::Approx(-2.0));

  const auto [k3, e3] = classify(fields::product(), 0.5, 0.5);
  CHECK(k3 == PointKind::Maximum);
  CHECK(fields::product().eval(0.5, 0.5) == doctest::Approx(1.0));
  CHECK(e3.lambda1 == doctest::Approx(-9.0 * pi * pi));
  CHECK(e3.lambda2 == doctest::Approx(-9.0 * pi * pi));
}

TEST_CASE("degenerate root is an error") {
  // (x - 0.5)^4 + (y - 0.5)^2 has a singular Hessian at its minimum
  const ScalarField f("quartic", 1.0, 1.0,
                      [](double x, double y) { return std::pow(x - 0.5, 4) + (y - 0.5) * (y - 0.5); },
                      [](double x, double y) {
                        return std::array<double, 2>{4.0 * std::pow(x - 0.5, 3), 2.0 * (y - 0.5)};
                      },
                      [](double x, double) {
                        return std::array<double, 3>{12.0 * (x - 0.5) * (x - 0.5), 0.0, 2.0};
                      });
  CHECK_THROWS_AS(classify(f, 0.5, 0.5), DegeneracyError);
}

TEST_CASE("oracle invariants on the built-in fields") {
  for (const std::string& name : fields::catalog()) {
    CAPTURE(name);
    const ScalarField f = fields::by_name(name);
    const OracleReport o = find_stationary(f, 512);
    CHECK(o.s + o.u + o.saddles == static_cast<int>(o.points.size()));
    std::set<std::pair<int, int>> cells;
    for (std::size_t k = 0; k < o.points.size(); ++k) {
      const auto& p = o.points[k];
      const auto g = f.gradient(p.x, p.y);
      CHECK(std::hypot(g[0], g[1]) < o.g_tol);
      CHECK(p.x > 0.0);
      CHECK(p.x < 1.0);
      CHECK(p.y > 0.0);
      CHECK(p.y < 1.0);
      if (p.kind == PointKind::Minimum) CHECK((p.eigens.lambda1 > 0 && p.eigens.lambda2 > 0));
      if (p.kind == PointKind::Maximum) CHECK((p.eigens.lambda1 < 0 && p.eigens.lambda2 < 0));
      if (p.kind == PointKind::Saddle) CHECK(p.eigens.lambda1 * p.eigens.lambda2 < 0);
      for (std::size_t m = 0; m < k; ++m)
        CHECK(std::hypot(p.x - o.points[m].x, p.y - o.points[m].y) > o.merge_radius);
      if (k > 0) {
        const auto& q = o.points[k - 1];
        CHECK((q.x < p.x || (q.x == p.x && q.y < p.y)));
      }
      // sign-change exhaustion: the cell holding the point is flagged
      const int ci = std::min(511, static_cast<int>(p.x * 512));
      const int cj = std::min(511, static_cast<int>(p.y * 512));
      CHECK(cell_may_contain_root(f, 512, ci, cj));
      CHECK(cells.insert({ci, cj}).second);
    }
  }
}

TEST_CASE("oracle counts match the closed-form inventories") {
  struct Expect {
    std::string name;
    int s, u, saddles;
  };
  for (const auto& e : std::vector<Expect>{{"paraboloid", 1, 0, 0},
                                           {"linear", 0, 0, 0},
                                           {"saddle", 0, 0, 1},
                                           {"product", 4, 5, 4},
                                           {"aniso", 1, 0, 0}}) {
    CAPTURE(e.name);
    const OracleReport o = find_stationary(fields::by_name(e.name));
    CHECK(o.s == e.s);
    CHECK(o.u == e.u);
    CHECK(o.saddles == e.saddles);
  }
}

TEST_CASE("oracle is deterministic and serializes") {
  const OracleReport a = find_stationary(fields::product(), 256);
  const OracleReport b = find_stationary(fields::product(), 256);
  CHECK(oracle_json(a).dump() == oracle_json(b).dump());
  const auto j = oracle_json(a);
  CHECK(j["s"] == 4);
  CHECK(j["points"][0].contains("lambda1"));
  CHECK(j["points"][0]["kind"].is_string());
  CHECK_THROWS_AS(find_stationary(fields::product(), 0), ParameterError);
}

TEST_CASE("finite-difference fields work with the oracle") {
  const OracleReport o = find_stationary(fields::product().with_finite_differences(), 256);
  CHECK(o.s == 4);
  CHECK(o.u == 5);
  CHECK(o.saddles == 4);
}
