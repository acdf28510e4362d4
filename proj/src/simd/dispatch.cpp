#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace roboscan::simd {

namespace {

const Kernels kScalar{"scalar", &detail::min_sq_distance_scalar, &detail::max_vertical_hit_scalar};

#if defined(ROBOSCAN_HAVE_AVX2_TU)
const Kernels kAvx2{"avx2", &detail::min_sq_distance_avx2, &detail::max_vertical_hit_avx2};
#endif

const Kernels* detect() {
  const char* env = std::getenv("ROBOSCAN_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
  if (const Kernels* k = avx2_kernels()) return k;
  return &kScalar;
}

std::atomic<const Kernels*>& active_slot() {
  static std::atomic<const Kernels*> slot{detect()};
  return slot;
}

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels* avx2_kernels() {
#if defined(ROBOSCAN_HAVE_AVX2_TU)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

bool select_kernels(const char* name) {
  const Kernels* k = nullptr;
  if (std::strcmp(name, "scalar") == 0) k = &kScalar;
  else if (std::strcmp(name, "avx2") == 0) k = avx2_kernels();
  if (!k) return false;
  active_slot().store(k, std::memory_order_release);
  return true;
}

}  // namespace roboscan::simd
