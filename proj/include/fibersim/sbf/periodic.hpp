#pragma once

#include <vector>

#include "fibersim/core/types.hpp"

namespace fibersim::sbf {

/// Periodic Stokeslet of a rectangular box, Ewald split into a short-range real-space sum and a
/// smooth Fourier sum with the mean (k = 0) flow removed.
///
/// The smooth part (all images but the primary real-space term, plus the Fourier sum) is
/// tabulated on [0, Lx/2] x [0, Ly/2] x [0, Lz/2] and mapped to the full cell by reflection.
class PeriodicStokeslet {
 public:
  /// `xi <= 0` selects 3.5 / min(L).
  PeriodicStokeslet(const Vec3& box, double grid_spacing, double xi = 0.0);

  const Vec3& box() const noexcept { return box_; }
  double splitting() const noexcept { return xi_; }
  Vec3 minimum_image(const Vec3& r) const;

  /// Full periodic Stokeslet. Throws SingularEvaluation when r is a lattice vector.
  Mat3 operator()(const Vec3& r) const;
  /// G_per(r) - S(r) for r inside the primary cell; regular at r = 0.
  Mat3 self_regular(const Vec3& r) const;

  /// Smooth part from the tabulated grid.
  Mat3 smooth(const Vec3& r) const;
  /// Smooth part summed directly.
  Mat3 smooth_direct(const Vec3& r) const;

  /// Hasimoto real-space kernel.
  static Mat3 real_space(const Vec3& r, double xi);

 private:
  Vec3 box_;
  double xi_;
  int nreal_[3];
  std::vector<Vec3> kvecs_;
  std::vector<Mat3> kcoef_;
  int ng_[3];
  Vec3 h_;
  std::vector<Mat3> grid_;

  Mat3 grid_at(int i, int j, int k) const {
    return grid_[(static_cast<std::size_t>(k) * (ng_[1] + 1) + j) * (ng_[0] + 1) + i];
  }
};

}  // namespace fibersim::sbf
