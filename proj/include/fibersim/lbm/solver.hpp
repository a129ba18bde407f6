#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fibersim/core/types.hpp"
#include "fibersim/lbm/boundary.hpp"
#include "fibersim/lbm/equilibrium.hpp"
#include "fibersim/lbm/kernel.hpp"
#include "fibersim/lbm/trt.hpp"

namespace fibersim::lbm {

enum class Precision { Double, Single };

Precision parse_precision(const std::string& name);

struct LbmConfig {
  std::array<int, 3> dims{16, 16, 16};
  DomainBoundaries boundaries;
  TrtParams trt = TrtParams::magic(1.0);
  /// Lattice acceleration acting on every fluid cell.
  Vec3 body_force = Vec3::Zero();
  /// Subtract the domain-mean fluid velocity inside the equilibrium (fully periodic only).
  bool stabilize = false;
  Precision precision = Precision::Double;
  KernelIsa isa = KernelIsa::Auto;
};

/// Spherocylinder in lattice units. Cell (i, j, k) has its centre at (i + 1/2, j + 1/2, k + 1/2).
struct LatticeBody {
  Vec3 center = Vec3::Zero();
  Vec3 axis = Vec3::UnitZ();
  double half_segment = 0.0;  ///< half of the cap-free length
  double radius = 1.0;
  Vec3 velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
};

/// Momentum-exchange load on one body, lattice units.
struct HydroLoad {
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
  std::size_t links = 0;
};

class LbmSolver {
 public:
  explicit LbmSolver(const LbmConfig& config);

  const LbmConfig& config() const { return config_; }
  KernelIsa isa() const { return isa_; }
  std::array<int, 3> dims() const { return config_.dims; }

  /// Sets every fluid cell to f^eq(rho0, u).
  void initialize(const Vec3& u = Vec3::Zero());

  /// Maps the bodies onto the flag field. Cells uncovered since the previous call are refilled
  /// with the equilibrium at the previous surface velocity; newly covered cells are dropped.
  /// Throws Overlap when two bodies claim the same cell.
  void map_bodies(const std::vector<LatticeBody>& bodies);
  const std::vector<LatticeBody>& bodies() const { return bodies_; }
  const std::vector<std::size_t>& body_cells(std::size_t body) const { return cells_.at(body); }

  /// Loads from the current post-collision state, then one fused stream/collide update.
  /// Throws DegenerateMapping for a body without fluid links.
  std::vector<HydroLoad> step();
  std::size_t steps() const { return steps_; }

  CellFlag flag(int x, int y, int z) const { return static_cast<CellFlag>(flags_[index(x, y, z)]); }
  /// Body owning the cell, or -1.
  int owner(int x, int y, int z) const { return owner_[index(x, y, z)]; }
  std::size_t fluid_cells() const { return fluid_cells_; }

  /// Full post-collision populations of one cell.
  Populations populations(int x, int y, int z) const;
  void set_populations(int x, int y, int z, const Populations& f);

  /// Macroscopic density and velocity; obstacle cells report their surface velocity.
  double density(int x, int y, int z) const;
  Vec3 velocity(int x, int y, int z) const;
  double max_speed() const;

  /// Sum over fluid cells of rho - rho0, recomputed in a fixed order.
  double mass_deviation() const;
  /// Fluid momentum of the post-collision state, recomputed in a fixed order.
  Vec3 momentum() const;
  /// Momentum of the post-collision state as tracked by the kernel and the mapping budget.
  Vec3 tracked_momentum() const { return post_momentum_; }
  /// Pre-collision fluid momentum of the last step from the budget.
  Vec3 last_pre_collision_momentum() const { return pre_momentum_; }
  /// Pre-collision momentum of the last step by a separate pull pass (only when enabled).
  Vec3 last_direct_pre_collision_momentum() const { return direct_pre_momentum_; }
  void set_verify_budget(bool on) { verify_budget_ = on; }
  Vec3 last_correction() const { return u_corr_; }

  const std::vector<std::string>& warnings() const { return warnings_; }

  std::ptrdiff_t index(int x, int y, int z) const {
    return static_cast<std::ptrdiff_t>(z + 1) * sz_ + static_cast<std::ptrdiff_t>(y + 1) * sy_ + (x + 1);
  }
  Vec3 cell_center(std::ptrdiff_t idx) const;
  /// Minimum-image displacement in the periodic directions.
  Vec3 wrap_displacement(Vec3 d) const;

 private:
  struct GhostLink {
    std::int64_t dst;
    std::int64_t src;
    std::int64_t fallback;  ///< bounce-back source if src is not fluid, -1 if unused
  };

  double get(int buffer, int q, std::ptrdiff_t idx) const;
  void set(int buffer, int q, std::ptrdiff_t idx, double v);
  Vec3 cell_momentum(int buffer, std::ptrdiff_t idx) const;
  void build_ghost_links();
  std::vector<std::size_t> voxelize(const LatticeBody& body) const;
  std::vector<HydroLoad> obstacle_pass();
  void ghost_pass();
  Vec3 direct_pre_collision_momentum() const;
  Vec3 surface_velocity(const LatticeBody& body, const Vec3& x) const;

  LbmConfig config_;
  KernelIsa isa_;
  std::ptrdiff_t sy_ = 0, sz_ = 0;
  std::size_t cells_padded_ = 0;
  std::array<std::ptrdiff_t, kQ> offset_{};
  std::vector<std::uint8_t> flags_;
  std::vector<std::int32_t> owner_;
  std::array<std::vector<double>, 2> fd_;
  std::array<std::vector<float>, 2> ff_;
  int cur_ = 0;
  std::vector<GhostLink> ghost_links_;
  std::vector<LatticeBody> bodies_;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<double> slab_sums_;
  std::size_t fluid_cells_ = 0;
  std::size_t steps_ = 0;
  Vec3 post_momentum_ = Vec3::Zero();
  Vec3 pre_momentum_ = Vec3::Zero();
  Vec3 direct_pre_momentum_ = Vec3::Zero();
  Vec3 u_corr_ = Vec3::Zero();
  bool verify_budget_ = false;
  bool mapped_ = false;
  std::vector<std::string> warnings_;
};

}  // namespace fibersim::lbm
