#include "fibersim/lbm/kernel.hpp"

#include "fibersim/core/error.hpp"

namespace fibersim::lbm {

KernelIsa detect_isa() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return KernelIsa::Avx2;
#endif
  return KernelIsa::Scalar;
}

const char* to_string(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::Auto: return "auto";
    case KernelIsa::Scalar: return "scalar";
    case KernelIsa::Avx2: return "avx2";
  }
  return "?";
}

void stream_collide(const KernelArgs& args, KernelIsa isa) {
  if (isa == KernelIsa::Auto) isa = detect_isa();
  if (isa == KernelIsa::Avx2) {
    require(detect_isa() == KernelIsa::Avx2, ErrorCode::InvalidArgument, "AVX2 is not available");
    detail::stream_collide_avx2(args);
  } else {
    detail::stream_collide_scalar(args);
  }
}

}  // namespace fibersim::lbm
