#include "kernels_impl.hpp"

#include <cmath>
#include <limits>

namespace roboscan::simd::detail {

double min_sq_distance_scalar(const PointBlock& b, double qx, double qy, double qz) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < b.n; ++i) {
    const double dx = b.x[i] - qx;
    const double dy = b.y[i] - qy;
    const double dz = b.z[i] - qz;
    const double d = dx * dx + dy * dy + dz * dz;
    best = d < best ? d : best;
  }
  return best;
}

double max_vertical_hit_scalar(const RayTriangleBlock& t, double x, double y) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.n; ++i) {
    const double px = x - t.ax[i];
    const double py = y - t.ay[i];
    const double u = (px * t.e2y[i] - py * t.e2x[i]) / t.det[i];
    const double v = (t.e1x[i] * py - t.e1y[i] * px) / t.det[i];
    if (u >= -kEdgeSlack && v >= -kEdgeSlack && u + v <= 1.0 + kEdgeSlack) {
      const double z = t.az[i] + u * t.dz1[i] + v * t.dz2[i];
      best = z > best ? z : best;
    }
  }
  return best;
}

}  // namespace roboscan::simd::detail
