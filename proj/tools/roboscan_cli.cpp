// roboscan: command-line front end for scan jobs, comparisons and probe tests.

#include "roboscan/format.hpp"
#include "roboscan/job.hpp"
#include "roboscan/meshio.hpp"
#include "roboscan/metrics.hpp"
#include "roboscan/targets.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <iostream>
#include <optional>

using namespace roboscan;

namespace {

std::string lower_ext(const std::filesystem::path& p) {
  std::string e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
  return e;
}

// STL inputs are surface-sampled, anything else is read as XYZ.
PointCloud load_cloud(const std::filesystem::path& p, std::size_t samples, std::uint64_t seed) {
  if (lower_ext(p) == ".stl") {
    const TriangleMesh mesh = meshio::load_stl(p);
    if (mesh.empty()) throw Error(ErrorKind::kInvalidArgument, p.string() + ": mesh has no triangles");
    return sample_mesh_surface(mesh, samples, seed);
  }
  PointCloud pts = meshio::load_xyz(p);
  if (pts.empty()) throw Error(ErrorKind::kInvalidArgument, p.string() + ": point cloud is empty");
  return pts;
}

ScanJob job_or_default(const std::string& config) {
  return config.empty() ? ScanJob{} : load_job(config);
}

void print_pose(const Pose& pose) {
  const Mat3& r = pose.rotation;
  std::cout << "position_mm = " << fixed6(pose.position.x()) << ' ' << fixed6(pose.position.y()) << ' '
            << fixed6(pose.position.z()) << '\n';
  for (int i = 0; i < 3; ++i)
    std::cout << "rotation_row" << (i + 1) << " = " << fixed_n(r(i, 0), 9) << ' ' << fixed_n(r(i, 1), 9) << ' '
              << fixed_n(r(i, 2), 9) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact-probe scanning simulator"};
  app.require_subcommand(1);

  std::string config;
  std::string path_a, path_b;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::optional<double> sigma;
  std::optional<std::uint64_t> noise_seed;
  std::size_t trials = 0;
  std::vector<double> joints_deg;
  std::vector<double> point;
  std::vector<double> approach{0.0, 0.0, -1.0};
  std::string target_kind, out_path, naca = "6409";
  std::vector<double> bounds{250.0, 370.0, -75.0, 75.0};
  double height = 25.0;
  WingSpec wing;
  bool ascii = false;

  auto* scan = app.add_subcommand("scan", "Run a scan job");
  scan->add_option("config", config, "Job config file")->required();

  auto* compare = app.add_subcommand("compare", "Chamfer distance between two STL/XYZ files");
  compare->add_option("a", path_a)->required();
  compare->add_option("b", path_b)->required();
  compare->add_option("--samples", samples, "Surface samples per STL input")->check(CLI::PositiveNumber);
  compare->add_option("--seed", seed, "Sampling seed");

  auto* ta = app.add_subcommand("test-a", "Sphere probing test");
  auto* tb = app.add_subcommand("test-b", "Single-point repeatability test");
  for (auto* sub : {ta, tb}) {
    sub->add_option("--config", config, "Job config supplying robot, noise and test settings");
    sub->add_option("--sigma", sigma, "Override contact sigma (mm)");
    sub->add_option("--seed", noise_seed, "Override noise seed");
  }
  ta->add_option("--trials", trials, "Also report the mean average dd over this many seeded runs");

  auto* fk = app.add_subcommand("fk", "Forward kinematics");
  fk->add_option("joints", joints_deg, "Six joint angles in degrees")->expected(6)->required();
  fk->add_option("--config", config, "Job config supplying the robot");

  auto* ik = app.add_subcommand("ik", "Inverse kinematics");
  ik->add_option("point", point, "Probe tip x y z (mm)")->expected(3)->required();
  ik->add_option("--approach", approach, "Approach direction")->expected(3);
  ik->add_option("--config", config, "Job config supplying the robot");

  auto* mk = app.add_subcommand("make-target", "Write an analytic target mesh");
  mk->add_option("kind", target_kind)->required()->check(CLI::IsMember({"plate", "wing"}));
  mk->add_option("--out", out_path)->required();
  mk->add_option("--bounds", bounds, "Plate x_lo x_hi y_lo y_hi")->expected(4);
  mk->add_option("--height", height, "Plate top z");
  mk->add_option("--naca", naca, "Four-digit section");
  mk->add_option("--chord", wing.chord);
  mk->add_option("--span", wing.span);
  mk->add_option("--le-x", wing.leading_edge_x);
  mk->add_option("--center-y", wing.center_y);
  mk->add_flag("--ascii", ascii);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*scan) {
      const ScanJob job = load_job(config);
      const JobOutcome out = run_job(job);
      std::cout << "points_probed = " << out.summary.probed << "\ntriangles = " << out.summary.triangles
                << "\nmisses = " << out.summary.misses << "\nunreachable = " << out.summary.unreachable << '\n';
      if (out.exit_code != kExitOk) std::cerr << "roboscan: " << out.stage << ": " << out.message << '\n';
      return out.exit_code;
    }
    if (*compare) {
      const PointCloud p = load_cloud(path_a, samples, seed);
      const PointCloud q = load_cloud(path_b, samples, seed);
      std::cout << format_chamfer_report(chamfer_distance(p, q));
      return kExitOk;
    }
    if (*ta || *tb) {
      ScanJob job = job_or_default(config);
      job.robot.validate();
      if (sigma) job.noise.sigma_contact = *sigma;
      if (noise_seed) job.noise.seed = *noise_seed;
      job.noise.validate();
      if (*ta) {
        std::cout << format_test_a_report(test_a(job.test_a, job.robot, job.noise));
        if (trials > 0)
          std::cout << "mean_average_dd_over_" << trials
                    << "_trials = " << fixed_n(test_a_mean_average_dd(job.test_a, job.robot, job.noise, trials), 6)
                    << '\n';
      } else {
        std::cout << format_test_b_report(test_b(job.test_b, job.robot, job.noise));
      }
      return kExitOk;
    }
    if (*fk) {
      const ScanJob job = job_or_default(config);
      JointAngles q;
      for (int j = 0; j < kNumJoints; ++j) q[j] = deg_to_rad(joints_deg[static_cast<std::size_t>(j)]);
      int bad = -1;
      if (!within_limits(q, job.robot, &bad))
        throw Error(ErrorKind::kJointLimit, "joint " + std::to_string(bad + 1) + " outside its limits");
      print_pose(forward_kinematics(q, job.robot));
      return kExitOk;
    }
    if (*ik) {
      const ScanJob job = job_or_default(config);
      const Vec3 a(approach[0], approach[1], approach[2]);
      if (!(a.norm() > 0)) throw Error(ErrorKind::kInvalidArgument, "approach direction must be non-zero");
      Pose pose;
      pose.position = Vec3(point[0], point[1], point[2]);
      pose.rotation = a.normalized() == Vec3(0, 0, -1) ? tool_down_rotation() : rotation_with_approach(a);
      const IkSolution sol = inverse_kinematics(pose, job.robot);
      if (!sol.ok())
        throw Error(sol.status == IkStatus::kUnreachable ? ErrorKind::kUnreachable : ErrorKind::kJointLimit,
                    sol.detail);
      std::cout << "joints_deg =";
      for (int j = 0; j < kNumJoints; ++j) std::cout << ' ' << fixed6(rad_to_deg(sol.angles[j]));
      std::cout << "\nwrist_center_mm = " << fixed6(sol.wrist.x()) << ' ' << fixed6(sol.wrist.y()) << ' '
                << fixed6(sol.wrist.z()) << "\nwrist_singular = " << (sol.wrist_singular ? "true" : "false")
                << '\n';
      return kExitOk;
    }
    if (*mk) {
      TriangleMesh mesh;
      if (target_kind == "plate") {
        mesh = make_plate(bounds[0], bounds[1], bounds[2], bounds[3], height);
      } else {
        wing.profile = NacaProfile::from_digits(naca);
        mesh = make_wing(wing);
      }
      if (ascii) meshio::write_file(out_path, meshio::write_stl_ascii(mesh));
      else meshio::write_file(out_path, meshio::write_stl_binary(mesh));
      std::cout << "triangles = " << mesh.size() << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "roboscan: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}
