#pragma once

#include "roboscan/geometry.hpp"
#include "roboscan/kinematics.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>

namespace roboscan::testing {

inline JointAngles random_in_limits(std::mt19937_64& rng, const RobotGeometry& geom) {
  JointAngles q;
  for (int j = 0; j < kNumJoints; ++j) {
    const auto& lim = geom.limits[static_cast<std::size_t>(j)];
    q[j] = std::uniform_real_distribution<double>(lim.lo, lim.hi)(rng);
  }
  return q;
}

inline PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, double extent) {
  std::uniform_real_distribution<double> u(-extent, extent);
  PointCloud out(n);
  for (auto& p : out) p = Vec3(u(rng), u(rng), u(rng));
  return out;
}

// Triangle soup with vertices in [-extent, extent]^2 x [z_lo, z_hi].
inline TriangleMesh random_mesh(std::mt19937_64& rng, std::size_t n, double extent, double z_lo, double z_hi) {
  std::uniform_real_distribution<double> u(-extent, extent), z(z_lo, z_hi);
  std::uniform_real_distribution<double> size(1.0, extent / 2);
  TriangleMesh out;
  while (out.size() < n) {
    const Vec3 c(u(rng), u(rng), z(rng));
    const double s = size(rng);
    std::uniform_real_distribution<double> d(-s, s);
    auto vert = [&] { return Vec3(c.x() + d(rng), c.y() + d(rng), std::clamp(c.z() + d(rng), z_lo, z_hi)); };
    const Triangle t = make_triangle(vert(), vert(), vert());
    if (!t.normal.isZero(0.0)) out.push_back(t);
  }
  return out;
}

// Scratch directory unique to a test name, emptied on creation.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("roboscan_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace roboscan::testing
