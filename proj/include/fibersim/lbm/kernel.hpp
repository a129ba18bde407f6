#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "fibersim/lbm/d3q19.hpp"

namespace fibersim::lbm {

enum class KernelIsa { Auto, Scalar, Avx2 };

/// Best instruction set available on this machine.
KernelIsa detect_isa();
const char* to_string(KernelIsa isa);

enum class CellFlag : std::uint8_t { Fluid = 0, Obstacle = 1, Ghost = 2 };

/// Inputs of one fused pull-stream/collide sweep over the interior cells.
///
/// PDFs are stored zero-centred (f - w_q rho0, rho0 = 1) as [q][cell] over the padded grid.
/// Non-fluid cells receive zeros. slab_sums gets, per z layer, the post-collision mass
/// deviation and momentum of the fluid cells, each reduced in a fixed order.
struct KernelArgs {
  const void* src = nullptr;
  void* dst = nullptr;
  bool single_precision = false;
  std::size_t stride_q = 0;
  const std::uint8_t* flags = nullptr;
  std::array<std::ptrdiff_t, kQ> offset{};
  int nx = 0, ny = 0, nz = 0;
  std::ptrdiff_t sy = 0, sz = 0;
  double lambda_e = -1.0, lambda_o = -1.0;
  std::array<double, 3> u_corr{};
  std::array<double, 3> body_force{};
  double* slab_sums = nullptr;  ///< 4 * nz doubles
};

void stream_collide(const KernelArgs& args, KernelIsa isa);

namespace detail {
void stream_collide_scalar(const KernelArgs& args);
void stream_collide_avx2(const KernelArgs& args);
}  // namespace detail

}  // namespace fibersim::lbm
