#include "roboscan/geometry.hpp"

#include <limits>

namespace roboscan {

Vec3 facet_normal(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
  const Vec3 n = (v2 - v1).cross(v3 - v1);
  const double len = n.norm();
  if (!(len > 0.0)) return Vec3::Zero();
  return n / len;
}

Triangle make_triangle(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
  return Triangle{facet_normal(v1, v2, v3), v1, v2, v3};
}

double triangle_area(const Triangle& t) { return 0.5 * (t.v2 - t.v1).cross(t.v3 - t.v1).norm(); }

Aabb bounding_box(const TriangleMesh& mesh) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Aabb box{Vec3::Constant(inf), Vec3::Constant(-inf)};
  for (const auto& t : mesh) {
    for (const Vec3* v : {&t.v1, &t.v2, &t.v3}) {
      box.lo = box.lo.cwiseMin(*v);
      box.hi = box.hi.cwiseMax(*v);
    }
  }
  return box;
}

}  // namespace roboscan
