#include <cstdint>

#include "fibersim/lbm/kernel.hpp"

namespace fibersim::lbm {
namespace {
#include "kernel_impl.inc"
}  // namespace

void detail::stream_collide_scalar(const KernelArgs& args) { dispatch_precision<LaneScalar>(args); }

}  // namespace fibersim::lbm
