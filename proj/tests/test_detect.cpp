#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "globeq/detect.hpp"
#include "globeq/errors.hpp"
#include "globeq/oracle.hpp"
#include "reference.hpp"

using namespace globeq;
using std::numbers::pi;

namespace {

std::vector<std::pair<int, int>> as_pairs(const std::vector<VertexId>& vs) {
  std::vector<std::pair<int, int>> out;
  for (const VertexId v : vs) out.emplace_back(v.i, v.j);
  return out;
}

bool contains(const std::vector<VertexId>& vs, VertexId v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

int chebyshev(VertexId a, VertexId b) { return std::max(std::abs(a.i - b.i), std::abs(a.j - b.j)); }

// Random smooth field: a few Gaussian bumps of either sign plus a tilt.
struct RandomField {
  std::vector<std::array<double, 4>> bumps;  // cx, cy, width, height
  double tx = 0.0, ty = 0.0;

  explicit RandomField(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(0.1, 0.9), wid(0.08, 0.3), hgt(-1.0, 1.0), tilt(-0.3, 0.3);
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int m = 0; m < k; ++m) bumps.push_back({pos(rng), pos(rng), wid(rng), hgt(rng)});
    tx = tilt(rng);
    ty = tilt(rng);
  }

  double operator()(double x, double y) const {
    double f = tx * x + ty * y;
    for (const auto& b : bumps) {
      const double dx = x - b[0], dy = y - b[1];
      f += b[3] * std::exp(-(dx * dx + dy * dy) / (b[2] * b[2]));
    }
    return f;
  }
};

}  // namespace

TEST_CASE("stationary vertices of the linear field") {
  CHECK(stationary_vertices(sample(fields::linear(), 10)).empty());
}

TEST_CASE("stationary vertices near the paraboloid minimum and the saddle") {
  const auto s1 = stationary_vertices(sample(fields::paraboloid(), 64));
  CHECK(contains(s1, {30, 34}));
  const auto s2 = stationary_vertices(sample(fields::saddle(), 64));
  CHECK(contains(s2, {30, 34}));
}

TEST_CASE("stationary vertices match the brute-force scan") {
  for (const std::string& name : fields::catalog()) {
    CAPTURE(name);
    const ScalarField f = fields::by_name(name);
    const ref::Raw raw = ref::raw_sample([&](double x, double y) { return f.eval(x, y); }, 64);
    CHECK(as_pairs(stationary_vertices(sample(f, 64))) == ref::stationary(raw));
  }
}

TEST_CASE("circle minima examples") {
  const auto m = circle_minima(sample(fields::paraboloid(), 64), 3);
  REQUIRE(m.size() == 1);
  CHECK(chebyshev(m[0], {30, 34}) <= 3);
  CHECK(circle_minima(sample(fields::saddle(), 64), 3).empty());
  CHECK(circle_minima(sample(fields::linear(), 64), 3).empty());
}

TEST_CASE("circle maxima examples") {
  CHECK(circle_maxima(sample(fields::negated(fields::paraboloid()), 64), 3).size() == 1);
  const int r = radius_bound({1.0, 0.1, 1.0, 1.0});
  const auto mx = circle_maxima(sample(fields::product(), 256), r);
  CHECK(mx.size() == 5);
  CHECK(circle_maxima(sample(fields::linear(), 64), 3).empty());
}

TEST_CASE("circle extrema match the brute-force scan") {
  for (const std::string& name : fields::catalog()) {
    for (int r : {1, 2, 3, 5}) {
      CAPTURE(name);
      CAPTURE(r);
      const ScalarField f = fields::by_name(name);
      const ref::Raw raw = ref::raw_sample([&](double x, double y) { return f.eval(x, y); }, 48);
      const GridSampling g = sample(f, 48);
      CHECK(as_pairs(circle_minima(g, r)) == ref::circle_minima(raw, r));
      CHECK(as_pairs(circle_maxima(g, r)) == ref::circle_minima(raw, r, true));
    }
  }
}

TEST_CASE("radius_bound worked examples") {
  CHECK(radius_bound({1.0, 0.1, 1.0, 1.0}) == 3);
  CHECK(radius_bound({4.0, 0.1, 1.0, 1.0}) == 7);
  CHECK(radius_bound({1.0, 1e-9, 3.0, 4.0}) == 3);
}

TEST_CASE("radius_bound against direct evaluation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> tau(1.0, 20.0), eps(0.001, 0.9), len(0.1, 10.0);
  for (int k = 0; k < 200; ++k) {
    const RadiusParams p{tau(rng), eps(rng), len(rng), len(rng)};
    const double d = std::sqrt(p.a * p.a + p.b * p.b) / std::min(p.a, p.b);
    const double bound = std::max(1.5 * d, p.tau * d * std::sqrt((1 + p.epsilon) / (1 - p.epsilon)));
    const int r = radius_bound(p);
    CHECK(r >= bound);
    CHECK(r - 1 < bound + 1e-9);
  }
}

TEST_CASE("radius_bound rejects bad parameters") {
  CHECK_THROWS_AS(radius_bound({1.0, 0.0, 1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(radius_bound({1.0, 1.0, 1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(radius_bound({0.5, 0.1, 1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(radius_bound({1.0, 0.1, 0.0, 1.0}), ParameterError);
}

TEST_CASE("radius_bound bumps exact integers") {
  // a = b = 1, 3 d / 2 = 2.1213 dominates for tau = 1; choose tau making the second term an integer
  const double d = std::sqrt(2.0), s = std::sqrt(1.1 / 0.9);
  const double tau = 5.0 / (d * s);
  CHECK(radius_bound({tau, 0.1, 1.0, 1.0}) == 6);
}

TEST_CASE("equilibrium census on rectangles") {
  const Census p = equilibrium_census(sample(fields::paraboloid(), 64), 3, CensusMode::Rectangle);
  CHECK(p.S() == 1);
  CHECK(p.U() == 0);
  CHECK(!p.saddles);
  CHECK(p.r == 3);
  CHECK(p.n == 64);

  const Census q = equilibrium_census(sample(fields::product(), 256), 3, CensusMode::Rectangle);
  CHECK(q.S() == 4);
  CHECK(q.U() == 5);
  CHECK(!q.saddles);
}

TEST_CASE("census mode must match topology") {
  CHECK_THROWS_AS(equilibrium_census(sample(fields::product(), 16), 2, CensusMode::ClosedSurface),
                  ParameterError);
}

TEST_CASE("census warns about ties") {
  const Census c = equilibrium_census(sample(fields::paraboloid(0.5, 0.5), 16), 2, CensusMode::Rectangle);
  REQUIRE(!c.warnings.empty());
  CHECK(c.warnings[0].find("nondegeneracy") != std::string::npos);
  // perturbation separates every value, though by less than the 1e-12 warning band
  const GridSampling p = sample(fields::paraboloid(0.5, 0.5), 16).perturbed(3);
  CHECK(p.nondegeneracy_check(0.0).empty());
  CHECK(equilibrium_census(p, 2, CensusMode::Rectangle).S() == 1);
}

TEST_CASE("census JSON layout") {
  const GridSampling g = sample(fields::paraboloid(), 64);
  const auto j = census_json(equilibrium_census(g, 3, CensusMode::Rectangle), g);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"mode", "n", "r", "S", "U", "N", "minima", "maxima", "warnings"});
  CHECK(j["N"].is_null());
  CHECK(j["mode"] == "rectangle");
  REQUIRE(j["minima"].size() == 1);
  const auto& m = j["minima"][0];
  CHECK(m.size() == 5);
  CHECK(m[2].get<double>() == g.x(m[0].get<int>()));
  CHECK(m[4].get<double>() == g.value(m[0].get<int>(), m[1].get<int>()));
}

TEST_CASE("radius sweep examples") {
  const RadiusSweep a = radius_sweep(sample(fields::paraboloid(), 64), 1, 8, CensusMode::Rectangle);
  CHECK(a.entries.size() == 8);
  CHECK(a.plateau.S == 1);
  CHECK(a.plateau.U == 0);
  CHECK(a.plateau.r_first == 1);
  CHECK(a.plateau.r_last == 8);

  const RadiusSweep b = radius_sweep(sample(fields::product(), 256), 1, 10, CensusMode::Rectangle);
  CHECK(b.plateau.S == 4);
  CHECK(b.plateau.U == 5);

  const RadiusSweep c = radius_sweep(sample(fields::linear(), 64), 1, 5, CensusMode::Rectangle);
  for (const auto& e : c.entries) {
    CHECK(e.S == 0);
    CHECK(e.U == 0);
  }
  CHECK(c.plateau.length() == 5);
  CHECK(sweep_csv(c).rfind("r,S,U\n1,0,0\n", 0) == 0);
}

TEST_CASE("sweep plateau ties resolve toward larger r") {
  // minima counts 2,2,1,1 over r = 1..4 give two runs of length 2
  std::vector<double> v(17 * 17, 0.0);
  for (int j = 0; j <= 16; ++j)
    for (int i = 0; i <= 16; ++i) v[j * 17 + i] = 1e-3 * (i * 17 + j);
  // a deep well at (8, 8) and a shallow one at (5, 8), three columns away
  v[8 * 17 + 8] = -2.0;
  v[8 * 17 + 5] = -1.0;
  const GridSampling g(16, 1.0, 1.0, Topology::Rectangle, v);
  const RadiusSweep s = radius_sweep(g, 1, 4, CensusMode::Rectangle);
  REQUIRE(s.entries.size() == 4);
  CHECK(s.entries[0].S == 2);
  CHECK(s.entries[1].S == 2);
  CHECK(s.entries[2].S == 1);
  CHECK(s.entries[3].S == 1);
  CHECK(s.plateau.r_first == 3);
  CHECK(s.plateau.S == 1);
  CHECK_THROWS_AS(radius_sweep(g, 3, 2, CensusMode::Rectangle), ParameterError);
}

TEST_CASE("count_1d examples") {
  auto sampled = [](int points, double lo, double hi, auto f) {
    std::vector<double> v;
    for (int k = 0; k < points; ++k) v.push_back(f(lo + (hi - lo) * k / (points - 1)));
    return v;
  };
  const auto lin = sampled(11, 0.0, 1.0, [](double x) { return x; });
  CHECK(count_1d(lin).minima == 0);
  CHECK(count_1d(lin).maxima == 0);
  const auto s = sampled(101, 0.0, 1.0, [](double x) { return std::sin(2 * pi * x); });
  CHECK(count_1d(s).minima == 1);
  CHECK(count_1d(s).maxima == 1);
  const auto c = sampled(201, -2.0, 2.0, [](double x) { return x * x * x - x; });
  CHECK(count_1d(c).minima == 1);
  CHECK(count_1d(c).maxima == 1);
  const std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(count_1d(two), ParameterError);
  // a tied pair resolves by index: the earlier sample counts as lower
  const std::vector<double> tie{3.0, 1.0, 1.0, 3.0};
  CHECK(count_1d(tie).minima == 1);
}

TEST_CASE("auto radius grows with tau and never shrinks") {
  const GridSampling g = sample(fields::aniso(), 128);
  int calls = 0;
  const Census c = auto_radius_census(
      g, CensusMode::Rectangle,
      [&](VertexId, int) -> std::optional<double> {
        ++calls;
        return 4.0;
      },
      {0.1, 2, 0, false});
  CHECK(c.r == 7);
  CHECK(c.S() == 1);
  CHECK(calls >= 1);

  const Census d = auto_radius_census(
      g, CensusMode::Rectangle,
      [&](VertexId, int r) -> std::optional<double> { return r < 10 ? 9.0 : 1.0; }, {0.1, 2, 0, false});
  CHECK(d.r == 15);
}

TEST_CASE("auto radius respects the cap") {
  const GridSampling g = sample(fields::aniso(), 64);
  const Census c = auto_radius_census(
      g, CensusMode::Rectangle, [](VertexId, int) -> std::optional<double> { return 100.0; },
      {0.1, 2, 5, true});
  CHECK(c.r == 5);
}

TEST_CASE("aniso field needs the wider radius") {
  const ScalarField f = fields::aniso();
  const OracleReport o = find_stationary(f, 256);
  REQUIRE(o.tau_max());
  CHECK(*o.tau_max() == doctest::Approx(4.0));
  const int r = radius_bound({*o.tau_max(), 0.1, 1.0, 1.0});
  CHECK(r == 7);
  const Census c = equilibrium_census(sample(f, 256), r, CensusMode::Rectangle);
  CHECK(c.S() == 1);
  CHECK(c.U() == 0);
}

TEST_CASE("property suite on random fields") {
  std::mt19937_64 rng(424242);
  int instances = 0;
  for (; instances < 120; ++instances) {
    const RandomField rf(rng);
    const int n = 16 + static_cast<int>(rng() % 33);
    const int r = 1 + static_cast<int>(rng() % 4);
    CAPTURE(instances);
    CAPTURE(n);
    CAPTURE(r);
    const ScalarField f = ScalarField::finite_difference("random", 1.0, 1.0, rf);
    const GridSampling g = sample(f, n);

    const auto mins = circle_minima(g, r), maxs = circle_maxima(g, r);
    const auto mins1 = circle_minima(g, r + 1), maxs1 = circle_maxima(g, r + 1);
    CHECK(std::includes(mins.begin(), mins.end(), mins1.begin(), mins1.end()));
    CHECK(std::includes(maxs.begin(), maxs.end(), maxs1.begin(), maxs1.end()));

    const auto st = stationary_vertices(g);
    for (const VertexId v : mins) CHECK(std::binary_search(st.begin(), st.end(), v));
    for (const VertexId v : maxs) CHECK(std::binary_search(st.begin(), st.end(), v));

    for (const VertexId v : mins) CHECK(!std::binary_search(maxs.begin(), maxs.end(), v));

    const GridSampling neg = g.negated();
    CHECK(circle_minima(neg, r) == maxs);
    CHECK(circle_maxima(neg, r) == mins);

    const ref::Raw raw = ref::raw_sample(rf, n);
    CHECK(as_pairs(mins) == ref::circle_minima(raw, r));
    CHECK(as_pairs(maxs) == ref::circle_minima(raw, r, true));
  }
  CHECK(instances >= 100);
}

TEST_CASE("saddle exclusion") {
  for (int n : {64, 128, 256}) {
    const GridSampling g = sample(fields::saddle(), n);
    for (int r = 1; r <= 5; ++r) {
      CHECK(circle_minima(g, r).empty());
      CHECK(circle_maxima(g, r).empty());
    }
  }
}

TEST_CASE("convergence ladder and localization for the built-in fields") {
  const std::vector<int> ladder{64, 128, 256, 512};
  for (const std::string& name : fields::catalog()) {
    CAPTURE(name);
    const ScalarField f = fields::by_name(name);
    const OracleReport o = find_stationary(f, 512);
    const int r = radius_bound({o.tau_max().value_or(1.0), 0.1, 1.0, 1.0});
    std::vector<bool> match;
    for (int n : ladder) {
      const Census c = equilibrium_census(sample(f, n), r, CensusMode::Rectangle);
      match.push_back(c.S() == o.s && c.U() == o.u);
    }
    // from some n0 on, every rung agrees with the oracle
    const auto first = std::find(match.begin(), match.end(), true);
    CHECK(first != match.end());
    CHECK(std::all_of(first, match.end(), [](bool b) { return b; }));

    const int n = ladder.back();
    const GridSampling g = sample(f, n);
    const Census c = equilibrium_census(g, r, CensusMode::Rectangle);
    for (const auto& [group, kind] : {std::pair{c.minima, PointKind::Minimum}, std::pair{c.maxima, PointKind::Maximum}}) {
      for (const VertexId v : group) {
        double best = 1e300;
        for (const auto& p : o.points)
          if (p.kind == kind) best = std::min(best, std::hypot(g.x(v.i) - p.x, g.y(v.j) - p.y));
        CHECK(best <= 3.0 * g.big_delta() * r);
      }
    }
  }
}
