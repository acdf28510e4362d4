#pragma once

#include "roboscan/simd/kernels.hpp"

namespace roboscan::simd::detail {

double min_sq_distance_scalar(const PointBlock& b, double qx, double qy, double qz);
double max_vertical_hit_scalar(const RayTriangleBlock& t, double x, double y);

#if defined(ROBOSCAN_HAVE_AVX2_TU)
double min_sq_distance_avx2(const PointBlock& b, double qx, double qy, double qz);
double max_vertical_hit_avx2(const RayTriangleBlock& t, double x, double y);
#endif

}  // namespace roboscan::simd::detail
