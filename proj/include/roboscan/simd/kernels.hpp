#pragma once

// Data-parallel inner loops. Every kernel has a portable scalar reference and
// optional vector variants chosen once at runtime. Variants use the same
// operation order as the scalar code, so results are bit-identical.

#include <cstddef>

namespace roboscan::simd {

/// Structure-of-arrays view over n points.
struct PointBlock {
  const double* x = nullptr;
  const double* y = nullptr;
  const double* z = nullptr;
  std::size_t n = 0;
};

/// Triangles prepared for vertical ray queries, relative to vertex a:
/// e1 = b - a, e2 = c - a (xy only), dz1 = b.z - a.z, dz2 = c.z - a.z and
/// det = e1 x e2 (z component). Triangles with |det| below the parallel
/// threshold must be dropped before they reach a kernel.
struct RayTriangleBlock {
  const double* ax = nullptr;
  const double* ay = nullptr;
  const double* az = nullptr;
  const double* e1x = nullptr;
  const double* e1y = nullptr;
  const double* e2x = nullptr;
  const double* e2y = nullptr;
  const double* dz1 = nullptr;
  const double* dz2 = nullptr;
  const double* det = nullptr;
  std::size_t n = 0;
};

/// Barycentric slack: hits this close outside an edge still count.
inline constexpr double kEdgeSlack = 1e-12;
/// |det| below this marks a triangle parallel to the vertical ray.
inline constexpr double kParallelThreshold = 1e-12;

struct Kernels {
  const char* name;
  /// Smallest squared Euclidean distance from (qx, qy, qz) to the block, +inf if empty.
  double (*min_sq_distance)(const PointBlock& block, double qx, double qy, double qz);
  /// Largest hit height of the vertical line through (x, y), -inf if nothing is hit.
  double (*max_vertical_hit)(const RayTriangleBlock& block, double x, double y);
};

const Kernels& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const Kernels* avx2_kernels();

/// Kernels used by the library. Defaults to the widest supported variant;
/// setting ROBOSCAN_SIMD=scalar in the environment forces the reference path.
const Kernels& active_kernels();

/// Override the active variant ("scalar" or "avx2"). Returns false if unavailable.
bool select_kernels(const char* name);

}  // namespace roboscan::simd
