#include "kernels_impl.hpp"

#include <immintrin.h>

#include <limits>

namespace roboscan::simd::detail {

namespace {

inline double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

double min_sq_distance_avx2(const PointBlock& b, double qx, double qy, double qz) {
  const __m256d vx = _mm256_set1_pd(qx);
  const __m256d vy = _mm256_set1_pd(qy);
  const __m256d vz = _mm256_set1_pd(qz);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= b.n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(b.x + i), vx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(b.y + i), vy);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(b.z + i), vz);
    const __m256d d = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                    _mm256_mul_pd(dz, dz));
    best = _mm256_min_pd(d, best);
  }
  double out = hmin(best);
  if (i < b.n) {
    const PointBlock tail{b.x + i, b.y + i, b.z + i, b.n - i};
    const double t = min_sq_distance_scalar(tail, qx, qy, qz);
    out = t < out ? t : out;
  }
  return out;
}

double max_vertical_hit_avx2(const RayTriangleBlock& t, double x, double y) {
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d vy = _mm256_set1_pd(y);
  const __m256d lo = _mm256_set1_pd(-kEdgeSlack);
  const __m256d hi = _mm256_set1_pd(1.0 + kEdgeSlack);
  const __m256d none = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d best = none;
  std::size_t i = 0;
  for (; i + 4 <= t.n; i += 4) {
    const __m256d px = _mm256_sub_pd(vx, _mm256_loadu_pd(t.ax + i));
    const __m256d py = _mm256_sub_pd(vy, _mm256_loadu_pd(t.ay + i));
    const __m256d e1x = _mm256_loadu_pd(t.e1x + i);
    const __m256d e1y = _mm256_loadu_pd(t.e1y + i);
    const __m256d e2x = _mm256_loadu_pd(t.e2x + i);
    const __m256d e2y = _mm256_loadu_pd(t.e2y + i);
    const __m256d det = _mm256_loadu_pd(t.det + i);
    const __m256d u = _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(px, e2y), _mm256_mul_pd(py, e2x)), det);
    const __m256d v = _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(e1x, py), _mm256_mul_pd(e1y, px)), det);
    const __m256d inside = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(u, lo, _CMP_GE_OQ), _mm256_cmp_pd(v, lo, _CMP_GE_OQ)),
        _mm256_cmp_pd(_mm256_add_pd(u, v), hi, _CMP_LE_OQ));
    const __m256d z = _mm256_add_pd(
        _mm256_add_pd(_mm256_loadu_pd(t.az + i), _mm256_mul_pd(u, _mm256_loadu_pd(t.dz1 + i))),
        _mm256_mul_pd(v, _mm256_loadu_pd(t.dz2 + i)));
    best = _mm256_max_pd(best, _mm256_blendv_pd(none, z, inside));
  }
  double out = hmax(best);
  if (i < t.n) {
    RayTriangleBlock tail{t.ax + i,  t.ay + i,  t.az + i,  t.e1x + i, t.e1y + i, t.e2x + i,
                          t.e2y + i, t.dz1 + i, t.dz2 + i, t.det + i, t.n - i};
    const double z = max_vertical_hit_scalar(tail, x, y);
    out = z > out ? z : out;
  }
  return out;
}

}  // namespace roboscan::simd::detail
