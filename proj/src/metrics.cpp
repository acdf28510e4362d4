#include "roboscan/metrics.hpp"

#include "roboscan/error.hpp"
#include "roboscan/format.hpp"
#include "roboscan/simd/kernels.hpp"
#include "roboscan/spatial_index.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace roboscan {

namespace {

void require_nonempty(const PointCloud& p, const PointCloud& q) {
  if (p.empty() || q.empty()) throw Error(ErrorKind::kInvalidArgument, "chamfer distance: empty point cloud");
}

struct SoaCloud {
  std::vector<double> x, y, z;
  explicit SoaCloud(const PointCloud& pts) {
    x.reserve(pts.size());
    y.reserve(pts.size());
    z.reserve(pts.size());
    for (const auto& p : pts) {
      x.push_back(p.x());
      y.push_back(p.y());
      z.push_back(p.z());
    }
  }
  simd::PointBlock block() const { return {x.data(), y.data(), z.data(), x.size()}; }
};

double exhaustive_directed(const PointCloud& from, const PointCloud& to) {
  const SoaCloud soa(to);
  const auto& k = simd::active_kernels();
  double sum = 0.0;
  for (const auto& p : from) sum += std::sqrt(k.min_sq_distance(soa.block(), p.x(), p.y(), p.z()));
  return sum / static_cast<double>(from.size());
}

}  // namespace

double directed_mean_distance(const PointCloud& from, const PointCloud& to) {
  if (from.empty() || to.empty()) throw Error(ErrorKind::kInvalidArgument, "directed distance: empty point cloud");
  const KdTree tree(to);
  double sum = 0.0;
  for (const auto& p : from) sum += tree.nearest_distance(p);
  return sum / static_cast<double>(from.size());
}

ChamferReport chamfer_distance(const PointCloud& p, const PointCloud& q) {
  require_nonempty(p, q);
  ChamferReport r;
  r.m = p.size();
  r.n = q.size();
  r.forward_mean = directed_mean_distance(p, q);
  r.backward_mean = directed_mean_distance(q, p);
  r.cd = r.forward_mean + r.backward_mean;
  return r;
}

ChamferReport chamfer_distance_exhaustive(const PointCloud& p, const PointCloud& q) {
  require_nonempty(p, q);
  ChamferReport r;
  r.m = p.size();
  r.n = q.size();
  r.forward_mean = exhaustive_directed(p, q);
  r.backward_mean = exhaustive_directed(q, p);
  r.cd = r.forward_mean + r.backward_mean;
  return r;
}

double mesh_area(const TriangleMesh& mesh) {
  double a = 0.0;
  for (const auto& t : mesh) a += triangle_area(t);
  return a;
}

PointCloud sample_mesh_surface(const TriangleMesh& mesh, std::size_t count, std::uint64_t seed) {
  if (mesh.empty()) throw Error(ErrorKind::kInvalidArgument, "surface sampling: empty mesh");
  std::vector<double> cumulative;
  cumulative.reserve(mesh.size());
  double total = 0.0;
  for (const auto& t : mesh) {
    total += triangle_area(t);
    cumulative.push_back(total);
  }
  if (!(total > 0.0)) throw Error(ErrorKind::kInvalidArgument, "surface sampling: mesh has zero area");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PointCloud out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double pick = unit(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    if (it == cumulative.end()) --it;
    const Triangle& t = mesh[static_cast<std::size_t>(it - cumulative.begin())];
    const double r1 = std::sqrt(unit(rng));
    const double r2 = unit(rng);
    const double b = r1 * (1.0 - r2);
    const double c = r1 * r2;
    out.push_back(t.v1 + b * (t.v2 - t.v1) + c * (t.v3 - t.v1));
  }
  return out;
}

SphereFit fit_sphere(const PointCloud& points) {
  if (points.size() < 4) throw Error(ErrorKind::kSingular, "sphere fit: need at least 4 points");
  Vec3 mean = Vec3::Zero();
  for (const auto& p : points) mean += p;
  mean /= static_cast<double>(points.size());

  // ‖p‖² = 2 c·p - (‖c‖² - r²), in coordinates centred on the point mean.
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(n, 4);
  Eigen::VectorXd b(n);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3 p = points[static_cast<std::size_t>(i)] - mean;
    a.row(i) << 2.0 * p.x(), 2.0 * p.y(), 2.0 * p.z(), -1.0;
    b(i) = p.squaredNorm();
    scale = std::max(scale, p.norm());
  }
  if (!(scale > 0.0)) throw Error(ErrorKind::kSingular, "sphere fit: all points coincide");
  // Column scaling keeps the rank test independent of the sphere size.
  const Eigen::Vector4d col_scale(1.0 / scale, 1.0 / scale, 1.0 / scale, 1.0 / (scale * scale));
  const Eigen::MatrixXd as = a * col_scale.asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(as);
  qr.setThreshold(1e-10);
  if (qr.rank() < 4) throw Error(ErrorKind::kSingular, "sphere fit: points are coplanar or degenerate");
  const Eigen::Vector4d sol = col_scale.asDiagonal() * qr.solve(b);

  const Vec3 c_local = sol.head<3>();
  const double r2 = c_local.squaredNorm() - sol(3);
  if (!(r2 > 0.0)) throw Error(ErrorKind::kSingular, "sphere fit: non-positive squared radius");

  SphereFit fit;
  fit.center = c_local + mean;
  fit.radius = std::sqrt(r2);
  fit.per_point_dd.reserve(points.size());
  double sum = 0.0;
  for (const auto& p : points) {
    const double dd = 2.0 * std::abs((p - fit.center).norm() - fit.radius);
    fit.per_point_dd.push_back(dd);
    sum += dd;
  }
  fit.mean_dd = sum / static_cast<double>(points.size());
  return fit;
}

std::vector<ProbePoint> sphere_probe_layout() {
  return {{0, 0}, {0, 90}, {0, 180}, {0, -90}, {45, 0}, {45, 90}, {45, 180}, {45, -90}, {90, 0}};
}

namespace {

Vec3 outward_normal(const ProbePoint& p) {
  const double lat = deg_to_rad(p.latitude_deg);
  const double lon = deg_to_rad(p.longitude_deg);
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

void require_reachable(const Vec3& point, const Mat3& rotation, const RobotGeometry& geom, const std::string& what) {
  Pose pose;
  pose.rotation = rotation;
  pose.position = point;
  const IkSolution sol = inverse_kinematics(pose, geom);
  if (!sol.ok()) {
    std::ostringstream os;
    os << what << " at (" << point.x() << ", " << point.y() << ", " << point.z() << "): " << sol.detail;
    throw Error(sol.status == IkStatus::kJointLimit ? ErrorKind::kJointLimit : ErrorKind::kUnreachable, os.str());
  }
}

}  // namespace

TestAReport test_a(const TestAConfig& cfg, const RobotGeometry& geom, const NoiseModel& noise_model) {
  if (!(cfg.diameter >= 10.0 && cfg.diameter <= 50.0))
    throw Error(ErrorKind::kInvalidArgument, "test A: nominal diameter must lie in [10, 50] mm");
  const double radius = cfg.diameter / 2.0;
  ContactNoise noise(noise_model);
  TestAReport report;
  PointCloud measured;
  std::uint64_t index = 0;
  for (const auto& at : sphere_probe_layout()) {
    const Vec3 n = outward_normal(at);
    const Vec3 nominal = cfg.center + radius * n;
    const Mat3 rot = rotation_with_approach(-n);
    require_reachable(nominal, rot, geom, "test A contact");
    require_reachable(nominal + cfg.standoff * n, rot, geom, "test A approach");
    const double err = noise.error(index++, std::hypot(nominal.x(), nominal.y()));
    TestARow row;
    row.at = at;
    row.nominal = nominal;
    row.measured = nominal + err * n;
    report.rows.push_back(row);
    measured.push_back(row.measured);
  }
  report.fit = fit_sphere(measured);
  for (std::size_t i = 0; i < report.rows.size(); ++i) report.rows[i].dd = report.fit.per_point_dd[i];
  report.average_dd = report.fit.mean_dd;
  return report;
}

double test_a_mean_average_dd(const TestAConfig& cfg, const RobotGeometry& geom, const NoiseModel& noise,
                              std::size_t trials) {
  double sum = 0.0;
  NoiseModel m = noise;
  for (std::size_t t = 0; t < trials; ++t) {
    m.seed = noise.seed + t;
    sum += test_a(cfg, geom, m).average_dd;
  }
  return trials ? sum / static_cast<double>(trials) : 0.0;
}

double repeatability_of(const PointCloud& points, Vec3* centroid) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : points) c += p;
  if (!points.empty()) c /= static_cast<double>(points.size());
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, (p - c).norm());
  if (centroid) *centroid = c;
  return worst;
}

std::vector<RepeatabilityReport> test_b(const TestBConfig& cfg, const RobotGeometry& geom,
                                        const NoiseModel& noise_model) {
  if (cfg.repeats < 1) throw Error(ErrorKind::kInvalidArgument, "test B: repeats must be >= 1");
  double far = 0.0;
  for (double d : cfg.distances) far = std::max(far, std::abs(d));
  // A flat plate under every test point.
  const double half = far + 50.0;
  const double z = cfg.surface_z;
  const TriangleMesh plate{make_triangle({-half, -half, z}, {half, -half, z}, {half, half, z}),
                           make_triangle({-half, -half, z}, {half, half, z}, {-half, half, z})};
  const TargetScene scene(plate, z, FloorMode::kTable);
  ContactNoise noise(noise_model);

  std::vector<RepeatabilityReport> out;
  std::uint64_t index = 0;
  for (double d : cfg.distances) {
    const Vec3 target(d, 0.0, z);
    require_reachable(target, tool_down_rotation(), geom, "test B contact");
    require_reachable(target + Vec3(0, 0, cfg.standoff), tool_down_rotation(), geom, "test B approach");
    RepeatabilityReport r;
    r.distance_from_base = d;
    r.repeats = cfg.repeats;
    for (int j = 0; j < cfg.repeats; ++j) {
      r.points.push_back(probe_contact(target.x(), target.y(), index++, scene, noise).measured());
    }
    r.repeatability = repeatability_of(r.points, &r.centroid);
    out.push_back(std::move(r));
  }
  return out;
}

double expected_repeatability_factor(int repeats, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(static_cast<std::size_t>(repeats));
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    double mean = 0.0;
    for (auto& v : z) {
      v = normal(rng);
      mean += v;
    }
    mean /= repeats;
    double worst = 0.0;
    for (double v : z) worst = std::max(worst, std::abs(v - mean));
    sum += worst;
  }
  return sum / static_cast<double>(trials);
}

NoiseModel calibrate_repeatability(const std::vector<double>& distances, const std::vector<double>& targets,
                                   int repeats, std::uint64_t seed) {
  if (distances.size() != targets.size() || distances.empty())
    throw Error(ErrorKind::kInvalidArgument, "calibration: distances and targets must pair up");
  const double k = expected_repeatability_factor(repeats, 200000, seed);
  NoiseModel m;
  m.seed = seed;
  if (distances.size() == 1) {
    m.sigma_contact = targets[0] / k;
    return m;
  }
  // Least-squares line sigma = a + b r through (r_i, target_i / k).
  const auto n = static_cast<double>(distances.size());
  double sr = 0, ss = 0, srr = 0, srs = 0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double r = distances[i], s = targets[i] / k;
    sr += r;
    ss += s;
    srr += r * r;
    srs += r * s;
  }
  const double den = n * srr - sr * sr;
  if (!(std::abs(den) > 0.0)) throw Error(ErrorKind::kSingular, "calibration: distances must differ");
  double b = (n * srs - sr * ss) / den;
  double a = (ss - b * sr) / n;
  if (a < 0.0) {  // keep sigma non-negative at the base
    a = 0.0;
    b = srs / srr;
  }
  if (b < 0.0) {
    b = 0.0;
    a = ss / n;
  }
  m.sigma_contact = a;
  m.sigma_per_mm = b;
  return m;
}

std::string format_chamfer_report(const ChamferReport& r) {
  std::ostringstream os;
  os << "Chamfer distance\n";
  os << "  P points (m)        " << r.m << "\n";
  os << "  Q points (n)        " << r.n << "\n";
  os << "  mean P->Q (mm)      " << fixed6(r.forward_mean) << "\n";
  os << "  mean Q->P (mm)      " << fixed6(r.backward_mean) << "\n";
  os << "  CD (mm)             " << fixed6(r.cd) << "\n";
  os << "\n[chamfer]\n";
  os << "m = " << r.m << "\nn = " << r.n << "\n";
  os << "forward_mean = " << exact(r.forward_mean) << "\n";
  os << "backward_mean = " << exact(r.backward_mean) << "\n";
  os << "cd = " << exact(r.cd) << "\n";
  return os.str();
}

std::string format_test_a_report(const TestAReport& r) {
  std::ostringstream os;
  os << "Accuracy test A (sphere)\n";
  os << "Latitude (deg)  Longitude (deg)  Diameter difference (mm)\n";
  for (const auto& row : r.rows) {
    os << pad_right(fixed_n(row.at.latitude_deg, 0), 16) << pad_right(fixed_n(row.at.longitude_deg, 0), 17)
       << fixed6(row.dd) << "\n";
  }
  os << pad_right("Average", 33) << fixed6(r.average_dd) << "\n";
  os << "\n[test_a]\n";
  os << "fit_center = " << exact(r.fit.center.x()) << " " << exact(r.fit.center.y()) << " " << exact(r.fit.center.z())
     << "\n";
  os << "fit_radius = " << exact(r.fit.radius) << "\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) os << "dd_" << (i + 1) << " = " << exact(r.rows[i].dd) << "\n";
  os << "average_dd = " << exact(r.average_dd) << "\n";
  return os.str();
}

std::string format_test_b_report(const std::vector<RepeatabilityReport>& rows) {
  std::ostringstream os;
  os << "Repeatability test B (single point)\n";
  os << "Point distance (mm)  Repeats  Point repeatability (mm)\n";
  for (const auto& r : rows) {
    os << pad_right(fixed_n(r.distance_from_base, 1), 21) << pad_right(std::to_string(r.repeats), 9) << "+/- "
       << fixed6(r.repeatability) << "\n";
  }
  os << "\n[test_b]\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "distance_" << (i + 1) << " = " << exact(rows[i].distance_from_base) << "\n";
    os << "repeatability_" << (i + 1) << " = " << exact(rows[i].repeatability) << "\n";
  }
  return os.str();
}

}  // namespace roboscan
