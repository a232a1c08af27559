// globeq: global equilibria census of sampled fields and convex meshes.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "globeq/detect.hpp"
#include "globeq/errors.hpp"
#include "globeq/field.hpp"
#include "globeq/grid.hpp"
#include "globeq/oracle.hpp"
#include "globeq/surface.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace globeq;

namespace {

struct Options {
  std::string field;
  std::vector<double> coeffs;
  std::vector<double> center;
  std::string mesh;
  int n = 0;
  std::string r = "auto";
  double epsilon = 0.1;
  std::string tie_policy = "strict";
  std::uint64_t seed = 1;
  std::string output = "-";
  std::string format;
  int rotation_trials = 0;
  double flat_tol = 2e-3;
  int r_min = 1;
  int r_max = 8;
  int seed_grid = 512;
  int polish_iters = 50;
  std::string values;
  std::string fn;
  int points = 101;
  double lo = 0.0;
  double hi = 1.0;
};

std::optional<int> parse_radius(const std::string& s) {
  if (s == "auto") return std::nullopt;
  int r = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), r);
  if (ec != std::errc() || p != s.data() + s.size() || r < 1)
    throw ParameterError("--r must be a positive integer or 'auto', got '" + s + "'");
  return r;
}

// Writes next to the target and renames, so readers never see a partial report.
void write_report(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Other, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::Other, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

ScalarField select_field(const Options& o) {
  if (!o.coeffs.empty()) {
    if (o.coeffs.size() != 5) throw ParameterError("--coeffs takes c_xx,c_xy,c_yy,g_x,g_y");
    QuadraticCoeffs c{o.coeffs[0], o.coeffs[1], o.coeffs[2], o.coeffs[3], o.coeffs[4]};
    if (!o.center.empty()) {
      if (o.center.size() != 2) throw ParameterError("--center takes x,y");
      c.center_x = o.center[0];
      c.center_y = o.center[1];
    }
    return fields::quadratic(c);
  }
  return fields::by_name(o.field);
}

json field_config(const Options& o) {
  json c;
  if (!o.coeffs.empty()) {
    c["field"] = "quadratic";
    c["coeffs"] = o.coeffs;
    c["center"] = o.center.empty() ? std::vector<double>{0.5, 0.5} : o.center;
  } else {
    c["field"] = o.field;
  }
  return c;
}

GridSampling apply_tie_policy(GridSampling grid, const Options& o) {
  if (o.tie_policy == "perturb") return grid.perturbed(o.seed);
  return grid;
}

int run_analyze_fn(const Options& o) {
  const ScalarField field = select_field(o);
  const GridSampling grid = apply_tie_policy(sample(field, o.n), o);
  const std::optional<int> r = parse_radius(o.r);
  Census census;
  if (r) {
    census = equilibrium_census(grid, *r, CensusMode::Rectangle);
  } else {
    auto tau_at = [&](VertexId v, int) -> std::optional<double> {
      try {
        return field.hessian_eigens(grid.x(v.i), grid.y(v.j)).tau;
      } catch (const DegeneracyError&) {
        return std::nullopt;
      }
    };
    AutoRadiusOptions ao;
    ao.epsilon = o.epsilon;
    census = auto_radius_census(grid, CensusMode::Rectangle, tau_at, ao);
  }

  json config = {{"command", "analyze-fn"}};
  config.update(field_config(o));
  config["n"] = o.n;
  config["r"] = r ? json(*r) : json("auto");
  config["epsilon"] = o.epsilon;
  config["tie_policy"] = o.tie_policy;
  config["seed"] = o.seed;
  config["format"] = "json";
  json report = census_json(census, grid);
  report["config"] = config;
  write_report(o.output, json_text(report));
  return 0;
}

int run_analyze_mesh(const Options& o) {
  const ConvexMesh mesh = load_mesh(o.mesh);
  const std::optional<int> r = parse_radius(o.r);
  SurfaceOptions so;
  so.epsilon = o.epsilon;
  so.flat_tol = o.flat_tol;
  SurfaceCensus result = census_surface(mesh, o.n, r, so);

  json rotation = nullptr;
  if (o.rotation_trials > 0) {
    const RotationReport rep = rotation_consistency(mesh, o.n, r, o.rotation_trials, o.seed, so);
    json trials = json::array();
    for (const auto& t : rep.trials) {
      json tj;
      tj["S"] = t.S;
      tj["U"] = t.U;
      tj["N"] = t.N ? json(*t.N) : json(nullptr);
      if (!t.error.empty()) tj["error"] = t.error;
      trials.push_back(tj);
    }
    rotation["pass"] = rep.pass;
    rotation["trials"] = trials;
    if (!rep.pass)
      result.census.warnings.push_back("pole instability: rotated censuses disagree");
  }

  json config;
  config["command"] = "analyze-mesh";
  config["mesh"] = o.mesh;
  config["n"] = o.n;
  config["r"] = r ? json(*r) : json("auto");
  config["epsilon"] = o.epsilon;
  config["flat_tol"] = o.flat_tol;
  config["rotation_trials"] = o.rotation_trials;
  config["seed"] = o.seed;
  config["format"] = "json";
  json report = surface_census_json(result, mesh);
  if (!rotation.is_null()) report["rotation_consistency"] = rotation;
  report["config"] = config;
  write_report(o.output, json_text(report));
  return 0;
}

int run_sweep(const Options& o) {
  const int selectors = !o.field.empty() + !o.coeffs.empty() + !o.mesh.empty();
  if (selectors != 1)
    throw ParameterError("sweep needs exactly one of --field/--coeffs or --mesh");
  std::optional<GridSampling> grid;
  CensusMode mode = CensusMode::Rectangle;
  json config;
  config["command"] = "sweep";
  if (!o.mesh.empty()) {
    const ConvexMesh mesh = load_mesh(o.mesh);
    grid.emplace(sample(radial_field(mesh), o.n, Topology::SphereChart));
    mode = CensusMode::ClosedSurface;
    config["mesh"] = o.mesh;
  } else {
    grid.emplace(sample(select_field(o), o.n));
    config.update(field_config(o));
  }
  const GridSampling g = apply_tie_policy(std::move(*grid), o);
  const RadiusSweep sweep = radius_sweep(g, o.r_min, o.r_max, mode);
  const std::string format = o.format.empty() ? "csv" : o.format;
  config["n"] = o.n;
  config["r_min"] = o.r_min;
  config["r_max"] = o.r_max;
  config["tie_policy"] = o.tie_policy;
  config["seed"] = o.seed;
  config["format"] = format;

  if (format == "csv") {
    write_report(o.output, "# config " + config.dump() + "\n" + sweep_csv(sweep));
    return 0;
  }
  json entries = json::array();
  for (const auto& e : sweep.entries) entries.push_back({{"r", e.r}, {"S", e.S}, {"U", e.U}});
  json report;
  report["entries"] = entries;
  report["plateau"] = {{"S", sweep.plateau.S},
                       {"U", sweep.plateau.U},
                       {"r_first", sweep.plateau.r_first},
                       {"r_last", sweep.plateau.r_last}};
  report["config"] = config;
  write_report(o.output, json_text(report));
  return 0;
}

int run_oracle(const Options& o) {
  const ScalarField field = select_field(o);
  const OracleReport rep = find_stationary(field, o.seed_grid, o.polish_iters);
  json config = {{"command", "oracle"}};
  config.update(field_config(o));
  config["seed_grid"] = o.seed_grid;
  config["polish_iters"] = o.polish_iters;
  config["format"] = "json";
  json report = oracle_json(rep);
  report["config"] = config;
  write_report(o.output, json_text(report));
  return 0;
}

std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::getline(in, tok);
      continue;
    }
    double v = 0.0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ParseError(path + ": not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

int run_count_1d(const Options& o) {
  if (o.values.empty() == o.fn.empty()) throw ParameterError("count-1d needs exactly one of --values or --fn");
  std::vector<double> values;
  json config;
  config["command"] = "count-1d";
  if (!o.values.empty()) {
    values = read_values(o.values);
    config["values"] = o.values;
  } else {
    if (o.points < 3) throw ParameterError("--points must be >= 3");
    if (!(o.hi > o.lo)) throw ParameterError("--hi must exceed --lo");
    for (int k = 0; k < o.points; ++k) {
      const double x = k == o.points - 1 ? o.hi : o.lo + (o.hi - o.lo) * k / (o.points - 1);
      if (o.fn == "sin") values.push_back(std::sin(2.0 * std::numbers::pi * x));
      else if (o.fn == "cubic") values.push_back(x * x * x - x);
      else if (o.fn == "linear") values.push_back(x);
      else throw ParameterError("unknown --fn '" + o.fn + "'");
    }
    config["fn"] = o.fn;
    config["points"] = o.points;
    config["lo"] = o.lo;
    config["hi"] = o.hi;
  }
  config["format"] = "json";
  const Count1d c = count_1d(values);
  json report;
  report["k"] = c.minima;
  report["l"] = c.maxima;
  report["config"] = config;
  write_report(o.output, json_text(report));
  return 0;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::Convexity: return 3;
    case ErrorKind::Degeneracy: return 4;
    case ErrorKind::InconsistentCensus: return 5;
    case ErrorKind::Other: return 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census of global equilibria on sampled fields and convex meshes"};
  app.require_subcommand(1);
  Options o;

  auto add_field = [&](CLI::App* sub) {
    auto* f = sub->add_option("--field", o.field, "Built-in field")
                  ->check(CLI::IsMember(fields::catalog()));
    auto* c = sub->add_option("--coeffs", o.coeffs, "Quadratic c_xx,c_xy,c_yy,g_x,g_y")->delimiter(',');
    sub->add_option("--center", o.center, "Quadratic center x,y (default 0.5,0.5)")->delimiter(',')->needs(c);
    f->excludes(c);
    return std::pair{f, c};
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output,-o", o.output, "Report path, - for stdout")->capture_default_str();
  };
  auto add_ties = [&](CLI::App* sub) {
    sub->add_option("--tie-policy", o.tie_policy, "strict or perturb")
        ->check(CLI::IsMember({"strict", "perturb"}))
        ->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed for perturbation and rotations")->capture_default_str();
  };

  auto* fn = app.add_subcommand("analyze-fn", "Census of a built-in or quadratic field on [0,1]^2");
  {
    auto [f, c] = add_field(fn);
    (void)f;
    (void)c;
    fn->add_option("--n", o.n, "Subdivisions per side")->required()->check(CLI::Range(4, 1 << 14));
    fn->add_option("--r", o.r, "Grid circle radius or 'auto'")->capture_default_str();
    fn->add_option("--epsilon", o.epsilon, "Radius bound epsilon")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    add_ties(fn);
    fn->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
    add_output(fn);
  }

  auto* mesh = app.add_subcommand("analyze-mesh", "Closed-surface census of a convex mesh");
  mesh->add_option("--mesh", o.mesh, "OFF or OBJ file")->required();
  mesh->add_option("--n", o.n, "Sphere chart subdivisions (even)")->required()->check(CLI::Range(16, 1 << 14));
  mesh->add_option("--r", o.r, "Grid circle radius or 'auto'")->capture_default_str();
  mesh->add_option("--epsilon", o.epsilon, "Radius bound epsilon")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  mesh->add_option("--rotation-trials", o.rotation_trials, "Seeded rotation re-runs (0 = off, else >= 2)")
      ->check(CLI::Range(0, 1000))
      ->capture_default_str();
  mesh->add_option("--seed", o.seed, "Rotation seed")->capture_default_str();
  mesh->add_option("--flat-tol", o.flat_tol, "Relative radius spread treated as flat")->capture_default_str();
  mesh->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
  add_output(mesh);

  auto* sweep = app.add_subcommand("sweep", "Census over a range of radii");
  {
    auto [f, c] = add_field(sweep);
    auto* m = sweep->add_option("--mesh", o.mesh, "OFF or OBJ file");
    m->excludes(f)->excludes(c);
    sweep->add_option("--n", o.n, "Subdivisions")->required()->check(CLI::Range(4, 1 << 14));
    sweep->add_option("--r-min", o.r_min, "First radius")->capture_default_str();
    sweep->add_option("--r-max", o.r_max, "Last radius")->capture_default_str();
    add_ties(sweep);
    sweep->add_option("--format", o.format, "csv (default) or json")->check(CLI::IsMember({"csv", "json"}));
    add_output(sweep);
  }

  auto* oracle = app.add_subcommand("oracle", "Continuous stationary points of a field");
  {
    auto [f, c] = add_field(oracle);
    (void)f;
    (void)c;
    oracle->add_option("--seed-grid", o.seed_grid, "Seed cells per side")->check(CLI::Range(128, 1 << 13))->capture_default_str();
    oracle->add_option("--polish-iters", o.polish_iters, "Newton iterations")->check(CLI::Range(1, 1000))->capture_default_str();
    oracle->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
    add_output(oracle);
  }

  auto* c1 = app.add_subcommand("count-1d", "Interior extrema of a 1D sampling");
  {
    auto* v = c1->add_option("--values", o.values, "Whitespace-separated values file");
    auto* f = c1->add_option("--fn", o.fn, "sin (2 pi x), cubic (x^3 - x) or linear")
                  ->check(CLI::IsMember({"sin", "cubic", "linear"}));
    v->excludes(f);
    c1->add_option("--points", o.points, "Sample count")->capture_default_str();
    c1->add_option("--lo", o.lo, "Interval start")->capture_default_str();
    c1->add_option("--hi", o.hi, "Interval end")->capture_default_str();
    c1->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
    add_output(c1);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*fn || *oracle) {
      if (o.field.empty() && o.coeffs.empty()) throw ParameterError("need --field or --coeffs");
    }
    if (*fn) return run_analyze_fn(o);
    if (*mesh) {
      if (o.rotation_trials == 1) throw ParameterError("--rotation-trials must be 0 or >= 2");
      return run_analyze_mesh(o);
    }
    if (*sweep) return run_sweep(o);
    if (*oracle) return run_oracle(o);
    if (*c1) return run_count_1d(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
