#pragma once

// Evaluation of scans: Chamfer distance between point clouds, surface
// sampling of reference meshes, algebraic sphere fitting and the sphere
// (Test A) and single-point repeatability (Test B) probing tests.

#include "roboscan/geometry.hpp"
#include "roboscan/kinematics.hpp"
#include "roboscan/scene.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace roboscan {

struct ChamferReport {
  double cd = 0.0;             // forward_mean + backward_mean
  double forward_mean = 0.0;   // P -> Q
  double backward_mean = 0.0;  // Q -> P
  std::size_t m = 0;
  std::size_t n = 0;
};

/// Mean over p in `from` of the distance to its nearest neighbour in `to`.
double directed_mean_distance(const PointCloud& from, const PointCloud& to);

/// Sum of the two directed mean nearest-neighbour distances (not their
/// average). Uses a k-d tree; distances are exact. Throws on an empty operand.
ChamferReport chamfer_distance(const PointCloud& p, const PointCloud& q);

/// Same quantity by exhaustive search with the active distance kernel.
ChamferReport chamfer_distance_exhaustive(const PointCloud& p, const PointCloud& q);

/// Area-weighted uniform samples, reproducible for a given seed.
PointCloud sample_mesh_surface(const TriangleMesh& mesh, std::size_t count, std::uint64_t seed);

double mesh_area(const TriangleMesh& mesh);

struct SphereFit {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
  std::vector<double> per_point_dd;  // 2 |‖p - c‖ - r|
  double mean_dd = 0.0;
};

/// Linear least-squares (Kasa) fit. Throws Error(kSingular) for fewer than 4
/// points or coplanar/degenerate input.
SphereFit fit_sphere(const PointCloud& points);

struct ProbePoint {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
};

/// Nine-point layout: four at the equator, four at 45 degrees, one at the pole.
std::vector<ProbePoint> sphere_probe_layout();

struct TestAConfig {
  Vec3 center{300.0, 0.0, 25.0};
  double diameter = 25.0;  // nominal, [10, 50] mm
  double standoff = 10.0;  // approach start along the outward normal
};

struct TestARow {
  ProbePoint at;
  Vec3 nominal = Vec3::Zero();
  Vec3 measured = Vec3::Zero();
  double dd = 0.0;
};

struct TestAReport {
  std::vector<TestARow> rows;
  SphereFit fit;
  double average_dd = 0.0;
};

/// Probes the nine layout points along their inward normals with contact
/// error applied along the normal, fits a sphere and reports per-point Δd.
/// Throws Error(kUnreachable) if any approach pose has no in-limit solution,
/// Error(kInvalidArgument) if the diameter is outside [10, 50].
TestAReport test_a(const TestAConfig& cfg, const RobotGeometry& geom, const NoiseModel& noise);

/// Mean of average Δd over `trials` runs with seeds noise.seed + t.
double test_a_mean_average_dd(const TestAConfig& cfg, const RobotGeometry& geom, const NoiseModel& noise,
                              std::size_t trials);

struct TestBConfig {
  std::vector<double> distances{120.0, 300.0, 500.0};
  int repeats = 30;
  double surface_z = 0.0;  // height of the probed flat surface
  double standoff = 10.0;
};

struct RepeatabilityReport {
  double distance_from_base = 0.0;
  int repeats = 0;
  double repeatability = 0.0;  // max distance from the centroid, reported as +/-
  Vec3 centroid = Vec3::Zero();
  PointCloud points;
};

/// Repeated vertical touches of (d, 0, surface_z) for each distance d. One
/// noise stream covers the whole test in probe order.
std::vector<RepeatabilityReport> test_b(const TestBConfig& cfg, const RobotGeometry& geom, const NoiseModel& noise);

/// Max distance of any point to the centroid of `points`.
double repeatability_of(const PointCloud& points, Vec3* centroid = nullptr);

/// E[max_j |z_j - mean z|] / sigma for `repeats` i.i.d. normals, by seeded Monte Carlo.
double expected_repeatability_factor(int repeats, std::size_t trials, std::uint64_t seed);

/// Fits sigma(r) = sigma_contact + sigma_per_mm * r so that the expected
/// Test B repeatability at each distance matches `targets` in the least-squares
/// sense. drift is left at zero.
NoiseModel calibrate_repeatability(const std::vector<double>& distances, const std::vector<double>& targets,
                                   int repeats, std::uint64_t seed);

std::string format_chamfer_report(const ChamferReport& r);
std::string format_test_a_report(const TestAReport& r);
std::string format_test_b_report(const std::vector<RepeatabilityReport>& rows);

}  // namespace roboscan
