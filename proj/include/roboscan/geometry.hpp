#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace roboscan {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// STL facet. The normal is whatever was computed or read; use
/// make_triangle() to derive it from the vertex order.
struct Triangle {
  Vec3 normal = Vec3::Zero();
  Vec3 v1 = Vec3::Zero();
  Vec3 v2 = Vec3::Zero();
  Vec3 v3 = Vec3::Zero();
};

using TriangleMesh = std::vector<Triangle>;
using PointCloud = std::vector<Vec3>;

/// Right-hand-rule unit normal of (v1, v2, v3). Returns zero for collinear input.
Vec3 facet_normal(const Vec3& v1, const Vec3& v2, const Vec3& v3);

Triangle make_triangle(const Vec3& v1, const Vec3& v2, const Vec3& v3);

double triangle_area(const Triangle& t);

struct Aabb {
  Vec3 lo;
  Vec3 hi;
};

Aabb bounding_box(const TriangleMesh& mesh);

}  // namespace roboscan
