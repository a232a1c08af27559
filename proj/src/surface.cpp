#include "globeq/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

#include <Eigen/Geometry>

#include "globeq/errors.hpp"

namespace globeq {

namespace {

// Written out so that cross(b, a) is the exact negation of cross(a, b); the
// walk relies on neighbouring triangles seeing bit-identical edge planes.
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
          a.x() * b.y() - a.y() * b.x()};
}

double dot(const Vec3& a, const Vec3& b) { return a.x() * b.x() + a.y() * b.y() + a.z() * b.z(); }

struct EdgeKey {
  int lo, hi;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

EdgeKey key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// position of directed edge a->b in t, or -1
int directed_slot(const Triangle& t, int a, int b) {
  for (int k = 0; k < 3; ++k)
    if (t[k] == a && t[(k + 1) % 3] == b) return k;
  return -1;
}

double bbox_diagonal(const std::vector<Vec3>& pts) {
  Vec3 lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

}  // namespace

Vec3 SphereDirection::unit() const {
  const double sv = std::sin(v);
  return {sv * std::cos(u), sv * std::sin(u), std::cos(v)};
}

double signed_volume(const std::vector<Vec3>& vertices, const std::vector<Triangle>& triangles) {
  double six_v = 0.0;
  for (const auto& t : triangles)
    six_v += dot(vertices[t[0]], cross(vertices[t[1]], vertices[t[2]]));
  return six_v / 6.0;
}

Vec3 centroid(const std::vector<Vec3>& vertices, const std::vector<Triangle>& triangles,
              const Vec3& origin) {
  double six_v = 0.0;
  Vec3 weighted = Vec3::Zero();
  for (const auto& t : triangles) {
    const Vec3 a = vertices[t[0]] - origin, b = vertices[t[1]] - origin, c = vertices[t[2]] - origin;
    const double w = dot(a, cross(b, c));
    six_v += w;
    weighted += w * (a + b + c);
  }
  if (six_v == 0.0) throw DegeneracyError("mesh encloses zero volume");
  return origin + weighted / (4.0 * six_v);
}

ConvexMesh::ConvexMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles,
                       double convexity_tol)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (vertices_.size() < 4) throw MeshTopologyError("mesh needs at least 4 vertices");
  if (triangles_.size() < 4) throw MeshTopologyError("mesh needs at least 4 triangles");
  const int nv = static_cast<int>(vertices_.size());
  for (const auto& t : triangles_) {
    for (int idx : t)
      if (idx < 0 || idx >= nv) throw MeshTopologyError("triangle references a missing vertex");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw MeshTopologyError("triangle repeats a vertex");
  }
  for (const auto& p : vertices_)
    if (!p.allFinite()) throw ParseError("mesh has a non-finite vertex coordinate");
  const double diag = bbox_diagonal(vertices_);
  convexity_tol_ = convexity_tol >= 0.0 ? convexity_tol : 1e-9 * diag;

  // every undirected edge must be shared by exactly two triangles
  std::map<EdgeKey, std::vector<int>> edge_faces;
  for (int f = 0; f < static_cast<int>(triangles_.size()); ++f)
    for (int k = 0; k < 3; ++k) edge_faces[key(triangles_[f][k], triangles_[f][(k + 1) % 3])].push_back(f);
  for (const auto& [e, fs] : edge_faces)
    if (fs.size() != 2)
      throw MeshTopologyError("edge (" + std::to_string(e.lo) + ", " + std::to_string(e.hi) +
                              ") is shared by " + std::to_string(fs.size()) +
                              " triangles; surface is not closed");

  // propagate a consistent orientation across edges
  const std::size_t nt = triangles_.size();
  std::vector<char> seen(nt, 0);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const int f = todo.front();
    todo.pop();
    for (int k = 0; k < 3; ++k) {
      const int a = triangles_[f][k], b = triangles_[f][(k + 1) % 3];
      const auto& fs = edge_faces[key(a, b)];
      const int g = fs[0] == f ? fs[1] : fs[0];
      const bool agrees = directed_slot(triangles_[g], b, a) >= 0;
      if (seen[g]) {
        if (!agrees) throw MeshTopologyError("surface is not orientable");
        continue;
      }
      if (!agrees) std::swap(triangles_[g][1], triangles_[g][2]);
      seen[g] = 1;
      ++reached;
      todo.push(g);
    }
  }
  if (reached != nt) throw MeshTopologyError("mesh has more than one connected component");

  double vol = signed_volume(vertices_, triangles_);
  if (vol < 0.0) {
    for (auto& t : triangles_) std::swap(t[1], t[2]);
    vol = -vol;
  }
  if (!(vol > 1e-12 * diag * diag * diag)) throw DegeneracyError("mesh encloses (nearly) zero volume");
  volume_ = vol;

  Vec3 mean = Vec3::Zero();
  for (const auto& p : vertices_) mean += p;
  mean /= static_cast<double>(vertices_.size());
  centroid_ = globeq::centroid(vertices_, triangles_, mean);

  // convexity certificate: every vertex on the inner side of every face plane
  const double area_floor = 1e-14 * diag * diag;
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t worst_v = 0, worst_f = 0;
  for (std::size_t f = 0; f < nt; ++f) {
    const auto& t = triangles_[f];
    const Vec3 nrm = cross(vertices_[t[1]] - vertices_[t[0]], vertices_[t[2]] - vertices_[t[0]]);
    const double len = nrm.norm();
    if (len <= area_floor) continue;
    const Vec3 unit = nrm / len;
    const double off = dot(unit, vertices_[t[0]]);
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      const double excess = dot(unit, vertices_[v]) - off;
      if (excess > worst) {
        worst = excess;
        worst_v = v;
        worst_f = f;
      }
    }
    if (!(dot(unit, centroid_) - off < 0.0))
      throw DegeneracyError("centroid is not strictly inside face " + std::to_string(f));
  }
  if (worst > convexity_tol_) {
    std::ostringstream msg;
    msg << "convexity violated: vertex " << worst_v << " lies " << worst << " beyond the plane of face "
        << worst_f << " (tolerance " << convexity_tol_ << ")";
    throw ConvexityError(msg.str(), worst_v, worst_f, worst);
  }

  rel_.reserve(vertices_.size());
  for (const auto& p : vertices_) {
    rel_.push_back(p - centroid_);
    max_vertex_distance_ = std::max(max_vertex_distance_, rel_.back().norm());
  }
  adjacent_.resize(nt);
  edge_normals_.resize(nt);
  face_normals_.resize(nt);
  face_offsets_.resize(nt);
  for (std::size_t f = 0; f < nt; ++f) {
    const auto& t = triangles_[f];
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      const auto& fs = edge_faces[key(a, b)];
      adjacent_[f][k] = fs[0] == static_cast<int>(f) ? fs[1] : fs[0];
      edge_normals_[f][k] = cross(rel_[a], rel_[b]);
    }
    face_normals_[f] = cross(rel_[t[1]] - rel_[t[0]], rel_[t[2]] - rel_[t[0]]);
    face_offsets_[f] = dot(face_normals_[f], rel_[t[0]]);
  }
}

bool ConvexMesh::contains(int t, const Vec3& d, bool& on_boundary) const {
  on_boundary = false;
  for (int k = 0; k < 3; ++k) {
    const double s = dot(edge_normals_[t][k], d);
    if (s < 0.0) return false;
    if (s == 0.0) on_boundary = true;
  }
  return true;
}

double ConvexMesh::plane_distance(int t, const Vec3& d) const {
  return face_offsets_[t] / dot(face_normals_[t], d);
}

int ConvexMesh::walk(const Vec3& d, int start) const {
  const int nt = static_cast<int>(triangles_.size());
  int t = start;
  for (int step = 0; step <= nt; ++step) {
    int exit = -1;
    double most_negative = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double s = dot(edge_normals_[t][k], d);
      if (s < most_negative) {
        most_negative = s;
        exit = k;
      }
    }
    if (exit < 0) return t;
    t = adjacent_[t][exit];
  }
  return -1;
}

int ConvexMesh::hit_triangle(const Vec3& d) const {
  thread_local const ConvexMesh* last_mesh = nullptr;
  thread_local int last_hit = 0;
  const int nt = static_cast<int>(triangles_.size());
  int start = (last_mesh == this && last_hit < nt) ? last_hit : 0;
  int t = walk(d, start);
  if (t < 0) {
    bool edge = false;
    for (int f = 0; f < nt && t < 0; ++f)
      if (contains(f, d, edge)) t = f;
  }
  if (t < 0) {
    // within rounding of a vertex every fan edge can report the same sign;
    // take the face that is violated least
    double best = -std::numeric_limits<double>::infinity();
    for (int f = 0; f < nt; ++f) {
      const double m = margin(f, d);
      if (m > best) {
        best = m;
        t = f;
      }
    }
    if (best < -1e-9) throw SeamError("direction falls between triangles; mesh is not star-shaped around its centroid");
  }
  last_mesh = this;
  last_hit = t;
  return t;
}

double ConvexMesh::margin(int t, const Vec3& d) const {
  double m = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) m = std::min(m, dot(edge_normals_[t][k], d) / edge_normals_[t][k].norm());
  return m;
}

double ConvexMesh::radial(const Vec3& unit_dir) const {
  const int t = hit_triangle(unit_dir);
  bool on_boundary = false;
  if (!contains(t, unit_dir, on_boundary)) return plane_distance(t, unit_dir);
  if (!on_boundary) return plane_distance(t, unit_dir);
  // on an edge or vertex cone: every accepting triangle is valid, take the
  // smallest clip distance so the answer does not depend on the walk path
  double best = std::numeric_limits<double>::infinity();
  for (int f = 0; f < static_cast<int>(triangles_.size()); ++f) {
    bool edge = false;
    if (contains(f, unit_dir, edge)) best = std::min(best, plane_distance(f, unit_dir));
  }
  return best;
}

ConvexMesh ConvexMesh::transformed(const Eigen::Matrix3d& rotation, const Vec3& translation) const {
  std::vector<Vec3> pts;
  pts.reserve(vertices_.size());
  for (const auto& p : vertices_) pts.push_back(rotation * (p - centroid_) + centroid_ + translation);
  return ConvexMesh(std::move(pts), triangles_, convexity_tol_);
}

ConvexMesh ConvexMesh::scaled(double factor) const {
  if (!(factor > 0.0)) throw ParameterError("scale factor must be positive");
  std::vector<Vec3> pts;
  pts.reserve(vertices_.size());
  for (const auto& p : vertices_) pts.push_back(factor * p);
  return ConvexMesh(std::move(pts), triangles_);
}

// ---- file formats ---------------------------------------------------------

namespace {

std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

void fan(const std::vector<int>& poly, std::vector<Triangle>& out) {
  if (poly.size() < 3) throw ParseError("face with fewer than 3 vertices");
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) out.push_back({poly[0], poly[k], poly[k + 1]});
}

}  // namespace

ConvexMesh parse_off(std::istream& in, double convexity_tol) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ParseError("OFF: empty input");
  std::istringstream head(lines[0]);
  std::string magic;
  head >> magic;
  if (magic.size() < 3 || magic.compare(magic.size() - 3, 3, "OFF") != 0)
    throw ParseError("OFF: missing OFF header");
  std::size_t cursor = 1;
  long nv = -1, nf = -1;
  if (!(head >> nv >> nf)) {
    if (cursor >= lines.size()) throw ParseError("OFF: missing counts line");
    std::istringstream counts(lines[cursor++]);
    if (!(counts >> nv >> nf)) throw ParseError("OFF: bad counts line");
  }
  if (nv < 0 || nf < 0) throw ParseError("OFF: negative counts");
  if (lines.size() < cursor + static_cast<std::size_t>(nv + nf)) throw ParseError("OFF: truncated file");

  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(nv));
  for (long k = 0; k < nv; ++k) {
    std::istringstream ls(lines[cursor++]);
    double x, y, z;
    if (!(ls >> x >> y >> z)) throw ParseError("OFF: bad vertex line " + std::to_string(k));
    pts.emplace_back(x, y, z);
  }
  std::vector<Triangle> tris;
  for (long k = 0; k < nf; ++k) {
    std::istringstream ls(lines[cursor++]);
    long count = 0;
    if (!(ls >> count) || count < 3) throw ParseError("OFF: bad face line " + std::to_string(k));
    std::vector<int> poly(static_cast<std::size_t>(count));
    for (auto& idx : poly) {
      long v;
      if (!(ls >> v) || v < 0 || v >= nv) throw ParseError("OFF: bad index in face " + std::to_string(k));
      idx = static_cast<int>(v);
    }
    fan(poly, tris);
  }
  return ConvexMesh(std::move(pts), std::move(tris), convexity_tol);
}

ConvexMesh parse_obj(std::istream& in, double convexity_tol) {
  std::vector<Vec3> pts;
  std::vector<std::vector<long>> faces;
  std::size_t line_no = 0;
  for (const auto& line : content_lines(in)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) throw ParseError("OBJ: bad vertex on content line " + std::to_string(line_no));
      pts.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<long> poly;
      std::string tok;
      while (ls >> tok) {
        const std::string head = tok.substr(0, tok.find('/'));
        long idx = 0;
        try {
          std::size_t used = 0;
          idx = std::stol(head, &used);
          if (used != head.size()) throw std::invalid_argument(head);
        } catch (const std::exception&) {
          throw ParseError("OBJ: bad face index '" + tok + "'");
        }
        // negative indices count back from the most recent vertex
        const long resolved = idx < 0 ? static_cast<long>(pts.size()) + idx : idx - 1;
        if (idx == 0 || resolved < 0) throw ParseError("OBJ: bad face index '" + tok + "'");
        poly.push_back(resolved);
      }
      faces.push_back(std::move(poly));
    }
  }
  std::vector<Triangle> tris;
  for (const auto& f : faces) {
    std::vector<int> poly;
    for (long v : f) {
      if (v >= static_cast<long>(pts.size())) throw ParseError("OBJ: face index out of range");
      poly.push_back(static_cast<int>(v));
    }
    fan(poly, tris);
  }
  return ConvexMesh(std::move(pts), std::move(tris), convexity_tol);
}

MeshFormat mesh_format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".off") return MeshFormat::Off;
  if (ext == ".obj") return MeshFormat::Obj;
  throw ParseError("cannot infer mesh format from '" + path.string() + "'");
}

ConvexMesh load_mesh(const std::filesystem::path& path, std::optional<MeshFormat> format,
                     double convexity_tol) {
  const MeshFormat fmt = format ? *format : mesh_format_from_path(path);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file '" + path.string() + "'");
  return fmt == MeshFormat::Off ? parse_off(in, convexity_tol) : parse_obj(in, convexity_tol);
}

void write_off(const ConvexMesh& mesh, std::ostream& out) {
  out << "OFF\n" << mesh.vertices().size() << ' ' << mesh.triangles().size() << " 0\n";
  for (const auto& p : mesh.vertices())
    out << format_double(p.x()) << ' ' << format_double(p.y()) << ' ' << format_double(p.z()) << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

// ---- radial field and census ----------------------------------------------

double radial_function(const ConvexMesh& mesh, const SphereDirection& dir) { return mesh.radial(dir); }

ScalarField radial_field(const ConvexMesh& mesh) {
  const double two_pi = 2.0 * std::numbers::pi;
  return ScalarField::finite_difference(
      "radial", two_pi, std::numbers::pi,
      [shared = std::make_shared<const ConvexMesh>(mesh)](double u, double v) {
        return shared->radial(SphereDirection{u, v});
      },
      0.0,
      mesh.max_vertex_distance());
}

std::optional<double> tangent_tau(const ConvexMesh& mesh, const Vec3& dir, double step) {
  const Vec3 d = dir.normalized();
  const Vec3 helper = std::abs(d.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = cross(d, helper).normalized();
  const Vec3 e2 = cross(d, e1);
  auto g = [&](double s, double t) { return mesh.radial((d + s * e1 + t * e2).normalized()); };
  const double h = step;
  const double f0 = g(0.0, 0.0);
  Eigen::Matrix2d hm;
  const double fxx = (g(h, 0.0) - 2.0 * f0 + g(-h, 0.0)) / (h * h);
  const double fyy = (g(0.0, h) - 2.0 * f0 + g(0.0, -h)) / (h * h);
  const double fxy = ((g(h, h) + g(-h, -h)) - (g(h, -h) + g(-h, h))) / (4.0 * h * h);
  hm << fxx, fxy, fxy, fyy;
  const HessianEigens e = eigens_of(hm);
  if (e.tau) return e.tau;
  // saddle-like candidate: the magnitude ratio grows with the kink and forces a wider circle
  if (e.lambda1 == 0.0) return std::nullopt;
  return std::abs(e.lambda2 / e.lambda1);
}

SurfaceCensus census_surface(const ConvexMesh& mesh, int n, std::optional<int> r,
                             const SurfaceOptions& options) {
  if (n < 16) throw ParameterError("surface census needs n >= 16");
  const GridSampling grid = sample(radial_field(mesh), n, Topology::SphereChart);

  const auto [lo, hi] = std::minmax_element(grid.values().begin(), grid.values().end());
  const double spread = (*hi - *lo) / *hi;
  if (spread <= options.flat_tol) {
    const TieReport ties = grid.nondegeneracy_check(options.flat_tol * *hi, 1);
    std::ostringstream msg;
    msg << "radial function is flat: relative spread " << spread << " <= " << options.flat_tol
        << " (" << ties.pair_count << " vertex pairs tie within that band); no isolated equilibria";
    throw DegeneracyError(msg.str());
  }

  Census census;
  if (r) {
    census = equilibrium_census(grid, *r, CensusMode::ClosedSurface);
  } else {
    const double step = radius_bound({1.0, options.epsilon, grid.a(), grid.b()}) * grid.delta();
    auto at = [&](VertexId v, int) {
      const Vec3 dir = SphereDirection{grid.x(v.i), grid.y(v.j)}.unit();
      return tangent_tau(mesh, dir, step);
    };
    AutoRadiusOptions auto_opts;
    auto_opts.epsilon = options.epsilon;
    census = auto_radius_census(grid, CensusMode::ClosedSurface, at, auto_opts);
  }
  census.warnings.push_back(
      "sphere-chart pole collapse and the piecewise-smooth polyhedral radial function are "
      "engineering closures; confirm with rotation_consistency");

  SurfaceCensus out{census, grid, {}, {}};
  auto position = [&](VertexId v) {
    const Vec3 dir = SphereDirection{grid.x(v.i), grid.y(v.j)}.unit();
    return Vec3(mesh.centroid() + grid.value(v) * dir);
  };
  for (const VertexId v : census.minima) out.min_positions.push_back(position(v));
  for (const VertexId v : census.maxima) out.max_positions.push_back(position(v));
  return out;
}

nlohmann::ordered_json surface_census_json(const SurfaceCensus& result, const ConvexMesh& mesh) {
  nlohmann::ordered_json j = census_json(result.census, result.grid);
  nlohmann::ordered_json positions = nlohmann::ordered_json::array();
  for (const auto& group : {result.min_positions, result.max_positions})
    for (const auto& p : group) positions.push_back({p.x(), p.y(), p.z()});
  j["positions"] = positions;
  nlohmann::ordered_json stats;
  stats["vertex_count"] = mesh.vertices().size();
  stats["face_count"] = mesh.triangles().size();
  stats["volume"] = mesh.volume();
  stats["centroid"] = {mesh.centroid().x(), mesh.centroid().y(), mesh.centroid().z()};
  j["mesh_stats"] = stats;
  return j;
}

Eigen::Matrix3d random_rotation(std::uint64_t seed, int index) {
  std::mt19937_64 gen(seed);
  gen.discard(static_cast<unsigned long long>(3 * index));
  auto uniform = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  const double u1 = uniform(), u2 = uniform(), u3 = uniform();
  const double two_pi = 2.0 * std::numbers::pi;
  // Shoemake's uniform random unit quaternion
  const Eigen::Quaterniond q(std::sqrt(u1) * std::cos(two_pi * u3), std::sqrt(1.0 - u1) * std::sin(two_pi * u2),
                             std::sqrt(1.0 - u1) * std::cos(two_pi * u2), std::sqrt(u1) * std::sin(two_pi * u3));
  return q.normalized().toRotationMatrix();
}

RotationReport rotation_consistency(const ConvexMesh& mesh, int n, std::optional<int> r, int trials,
                                    std::uint64_t seed, const SurfaceOptions& options) {
  if (trials < 2) throw ParameterError("rotation consistency needs at least 2 trials");
  RotationReport report;
  report.pass = true;
  for (int k = 0; k < trials; ++k) {
    RotationTrial trial;
    trial.rotation = random_rotation(seed, k);
    try {
      const ConvexMesh rotated = mesh.transformed(trial.rotation, Vec3::Zero());
      const SurfaceCensus sc = census_surface(rotated, n, r, options);
      trial.S = sc.census.S();
      trial.U = sc.census.U();
      trial.N = sc.census.saddles;
    } catch (const Error& e) {
      trial.error = e.what();
      report.pass = false;
    }
    if (!report.trials.empty() &&
        (trial.S != report.trials.front().S || trial.U != report.trials.front().U))
      report.pass = false;
    report.trials.push_back(std::move(trial));
  }
  return report;
}

// ---- shapes ---------------------------------------------------------------

namespace shapes {

namespace {

struct RawMesh {
  std::vector<Vec3> pts;
  std::vector<Triangle> tris;
};

RawMesh raw_icosphere(int subdivisions) {
  if (subdivisions < 0) throw ParameterError("subdivision level must be >= 0");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  RawMesh m;
  m.pts = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
           {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : m.pts) p.normalize();
  m.tris = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},  {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
            {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
            {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int level = 0; level < subdivisions; ++level) {
    std::map<EdgeKey, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto [it, fresh] = midpoint.try_emplace(key(a, b), static_cast<int>(m.pts.size()));
      if (fresh) m.pts.push_back((0.5 * (m.pts[a] + m.pts[b])).normalized());
      return it->second;
    };
    std::vector<Triangle> next;
    next.reserve(m.tris.size() * 4);
    for (const auto& t : m.tris) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.tris = std::move(next);
  }
  return m;
}

}  // namespace

ConvexMesh icosphere(int subdivisions) {
  RawMesh m = raw_icosphere(subdivisions);
  return ConvexMesh(std::move(m.pts), std::move(m.tris));
}

ConvexMesh ellipsoid(const Vec3& axes, int subdivisions, const Vec3& center) {
  RawMesh m = raw_icosphere(subdivisions);
  for (auto& p : m.pts) p = p.cwiseProduct(axes) + center;
  return ConvexMesh(std::move(m.pts), std::move(m.tris));
}

ConvexMesh cube(double half) {
  std::vector<Vec3> pts;
  for (int k = 0; k < 8; ++k)
    pts.emplace_back(k & 1 ? half : -half, k & 2 ? half : -half, k & 4 ? half : -half);
  // quads listed counter-clockwise seen from outside, split along one diagonal
  const std::array<std::array<int, 4>, 6> quads{{{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                                 {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}}};
  std::vector<Triangle> tris;
  for (const auto& q : quads) {
    tris.push_back({q[0], q[1], q[2]});
    tris.push_back({q[0], q[2], q[3]});
  }
  return ConvexMesh(std::move(pts), std::move(tris));
}

ConvexMesh corner_tetrahedron() {
  return ConvexMesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                    {Triangle{0, 2, 1}, Triangle{0, 1, 3}, Triangle{0, 3, 2}, Triangle{1, 2, 3}});
}

ConvexMesh regular_tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  return ConvexMesh({{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}},
                    {Triangle{0, 1, 2}, Triangle{0, 3, 1}, Triangle{0, 2, 3}, Triangle{1, 3, 2}});
}

}  // namespace shapes

}  // namespace globeq
