#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "globeq/detect.hpp"
#include "globeq/field.hpp"
#include "globeq/grid.hpp"

namespace globeq {

using Vec3 = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

/// Longitude u in [0, 2 pi), colatitude v in [0, pi].
struct SphereDirection {
  double u = 0.0;
  double v = 0.0;

  Vec3 unit() const;
};

/// A closed, outward-oriented, convex triangle mesh and its solid centroid.
///
/// Construction fixes the orientation (consistent across edges, positive
/// signed volume), certifies convexity and computes the uniform-density
/// centroid. The mesh is immutable afterwards.
class ConvexMesh {
 public:
  /// `convexity_tol` < 0 selects 1e-9 times the bounding-box diagonal.
  ConvexMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles,
             double convexity_tol = -1.0);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const Vec3& centroid() const { return centroid_; }
  double volume() const { return volume_; }
  double convexity_tol() const { return convexity_tol_; }
  double max_vertex_distance() const { return max_vertex_distance_; }

  /// Distance from the centroid to the boundary along a unit direction.
  double radial(const Vec3& unit_dir) const;
  double radial(const SphereDirection& dir) const { return radial(dir.unit()); }

  /// Index of the triangle whose central cone contains `unit_dir`.
  int hit_triangle(const Vec3& unit_dir) const;

  /// Applies x -> rotation * (x - centroid) + centroid + translation.
  ConvexMesh transformed(const Eigen::Matrix3d& rotation, const Vec3& translation) const;
  ConvexMesh scaled(double factor) const;

 private:
  int walk(const Vec3& d, int start) const;
  double plane_distance(int t, const Vec3& d) const;
  bool contains(int t, const Vec3& d, bool& on_boundary) const;
  /// Smallest edge-plane distance of unit `d` from the cone of t; negative outside.
  double margin(int t, const Vec3& d) const;

  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  double convexity_tol_;
  Vec3 centroid_ = Vec3::Zero();
  double volume_ = 0.0;
  double max_vertex_distance_ = 0.0;

  std::vector<Vec3> rel_;                     // vertices relative to the centroid
  std::vector<std::array<int, 3>> adjacent_;  // triangle across edge (k, k+1)
  std::vector<std::array<Vec3, 3>> edge_normals_;
  std::vector<Vec3> face_normals_;
  std::vector<double> face_offsets_;
};

enum class MeshFormat { Off, Obj };

MeshFormat mesh_format_from_path(const std::filesystem::path& path);

ConvexMesh parse_off(std::istream& in, double convexity_tol = -1.0);
ConvexMesh parse_obj(std::istream& in, double convexity_tol = -1.0);
ConvexMesh load_mesh(const std::filesystem::path& path, std::optional<MeshFormat> format = {},
                     double convexity_tol = -1.0);
void write_off(const ConvexMesh& mesh, std::ostream& out);

/// Solid centroid by signed tetrahedra against `origin`.
Vec3 centroid(const std::vector<Vec3>& vertices, const std::vector<Triangle>& triangles,
              const Vec3& origin);
/// Enclosed signed volume.
double signed_volume(const std::vector<Vec3>& vertices, const std::vector<Triangle>& triangles);

double radial_function(const ConvexMesh& mesh, const SphereDirection& dir);

/// Radial function as a finite-difference field on [0, 2 pi] x [0, pi].
ScalarField radial_field(const ConvexMesh& mesh);

/// Eigenvalue ratio of the radial function's Hessian in the tangent plane at
/// `dir`, by central differences of angular step `step`. Indefinite Hessians
/// report |lambda2 / lambda1|; nullopt when lambda1 vanishes.
std::optional<double> tangent_tau(const ConvexMesh& mesh, const Vec3& dir, double step);

struct SurfaceOptions {
  double epsilon = 0.1;
  /// Relative spread (max - min) / max of sampled radii below which the
  /// radial function is treated as constant and the census refused.
  double flat_tol = 2e-3;
};

struct SurfaceCensus {
  Census census;
  GridSampling grid;
  std::vector<Vec3> min_positions;
  std::vector<Vec3> max_positions;
};

/// Samples the radial function on the n x n sphere chart and runs the
/// closed-surface census. Without `r`, the radius comes from
/// auto_radius_census with tangent-plane tau estimates.
SurfaceCensus census_surface(const ConvexMesh& mesh, int n, std::optional<int> r,
                             const SurfaceOptions& options = {});

/// Census JSON extended with `positions` and `mesh_stats`.
nlohmann::ordered_json surface_census_json(const SurfaceCensus& result, const ConvexMesh& mesh);

struct RotationTrial {
  Eigen::Matrix3d rotation;
  int S = 0;
  int U = 0;
  std::optional<int> N;
  std::string error;
};

struct RotationReport {
  bool pass = false;
  std::vector<RotationTrial> trials;
};

/// Uniformly distributed rotation from a seeded generator.
Eigen::Matrix3d random_rotation(std::uint64_t seed, int index);

/// Re-runs census_surface under `trials` seeded random rotations; passes iff
/// every trial succeeds with the same (S, U).
RotationReport rotation_consistency(const ConvexMesh& mesh, int n, std::optional<int> r, int trials,
                                    std::uint64_t seed, const SurfaceOptions& options = {});

namespace shapes {

/// Subdivided icosahedron projected to the unit sphere.
ConvexMesh icosphere(int subdivisions);
/// icosphere scaled by `axes` and moved to `center`.
ConvexMesh ellipsoid(const Vec3& axes, int subdivisions, const Vec3& center = Vec3::Zero());
/// Axis-aligned cube [-h, h]^3, each square split into two triangles.
ConvexMesh cube(double half = 0.5);
/// Tetrahedron with vertices at the origin and the unit axis points.
ConvexMesh corner_tetrahedron();
/// Regular tetrahedron inscribed in the unit sphere.
ConvexMesh regular_tetrahedron();

}  // namespace shapes

}  // namespace globeq
