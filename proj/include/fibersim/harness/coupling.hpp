#pragma once

#include <array>
#include <vector>

#include "fibersim/core/geometry.hpp"
#include "fibersim/core/rigid_state.hpp"
#include "fibersim/core/units.hpp"
#include "fibersim/harness/config.hpp"
#include "fibersim/lbm/solver.hpp"
#include "fibersim/rigid/body_set.hpp"

namespace fibersim::harness {

struct ParticleInit {
  Spherocylinder shape;
  RigidState state;
  Vec3 force = Vec3::Zero();   ///< external load, N
  Vec3 torque = Vec3::Zero();  ///< external load, N m
};

/// Two-way coupled lattice fluid and rigid spherocylinders. Positions are SI with the
/// lattice origin at the domain corner.
class LbmCoupling {
 public:
  LbmCoupling(const LatticeSettings& lattice, const std::array<int, 3>& cells, const FluidProperties& fluid,
              std::vector<ParticleInit> particles);

  /// Maps the bodies, advances the fluid one step and integrates the bodies under
  /// hydrodynamic plus external loads.
  void step();

  double time() const { return static_cast<double>(fluid_.steps()) * scales_.dt; }
  const UnitScales& scales() const { return scales_; }
  const lbm::LbmSolver& fluid() const { return fluid_; }
  const rigid::BodySet& bodies() const { return bodies_; }
  /// Hydrodynamic loads of the last step, SI.
  const std::vector<std::pair<Vec3, Vec3>>& last_loads() const { return loads_; }

  /// Fluid plus particle momentum in lattice units.
  Vec3 total_momentum() const;

 private:
  std::vector<lbm::LatticeBody> lattice_bodies() const;

  UnitScales scales_;
  Motion motion_;
  lbm::LbmSolver fluid_;
  rigid::BodySet bodies_;
  std::vector<ParticleInit> external_;
  std::vector<std::pair<Vec3, Vec3>> loads_;
};

}  // namespace fibersim::harness
