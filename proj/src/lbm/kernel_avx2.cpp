#include <immintrin.h>

#include <cstdint>
#include <cstring>

#include "fibersim/lbm/kernel.hpp"

namespace fibersim::lbm {
namespace {
#include "kernel_impl.inc"

struct LaneAvx2 {
  using V = __m256d;
  static constexpr int kWidth = 4;
  static V set1(double x) { return _mm256_set1_pd(x); }
  static V zero() { return _mm256_setzero_pd(); }
  static V load(const double* p) { return _mm256_loadu_pd(p); }
  static V load(const float* p) { return _mm256_cvtps_pd(_mm_loadu_ps(p)); }
  static void store(double* p, V v) { _mm256_storeu_pd(p, v); }
  static void store(float* p, V v) { _mm_storeu_ps(p, _mm256_cvtpd_ps(v)); }
  static V fluid_mask(const std::uint8_t* flags) {
    std::int32_t packed;
    std::memcpy(&packed, flags, sizeof(packed));
    const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
    return _mm256_castsi256_pd(_mm256_cmpeq_epi64(wide, _mm256_setzero_si256()));
  }
  static V select(V mask, V a, V b) { return _mm256_blendv_pd(b, a, mask); }
  static void accumulate(double* lanes, int, V v) {
    _mm256_storeu_pd(lanes, _mm256_add_pd(_mm256_loadu_pd(lanes), v));
  }
};

}  // namespace

void detail::stream_collide_avx2(const KernelArgs& args) { dispatch_precision<LaneAvx2>(args); }

}  // namespace fibersim::lbm
