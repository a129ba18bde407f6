#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fibersim/core/types.hpp"
#include "fibersim/sbf/periodic.hpp"

namespace fibersim::sbf {

/// Straight rigid fiber with center-line x + s t, s in [-l, l].
struct Fiber {
  Vec3 center = Vec3::Zero();
  Vec3 tangent = Vec3::UnitZ();
  double half_length = 1.0;
  double slenderness = 0.1;  ///< eps = r / L
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();

  double length() const { return 2.0 * half_length; }
  double radius() const { return slenderness * length(); }
  /// d = -ln(eps^2 e).
  double geometry_parameter() const;
};

struct FiberSystem {
  std::vector<Fiber> fibers;
  double viscosity = 1e-3;          ///< dynamic viscosity, Pa s
  std::optional<Vec3> periodic_box;  ///< free space when empty
};

struct SbfParams {
  int legendre_order = 5;   ///< N
  int panels = 16;          ///< N_q panels of the three-point outer rule
  double gmres_tol = 1e-10;
  int gmres_max_iter = 200;
  double dt = 3e-3;
  double grid_spacing = 0.0;  ///< h_g; 0 selects min(box) / 64
  double inner_tol = 1e-10;
};

/// f_m(sigma) l = F_m / 2 + sum_n a_m^n P_n(sigma) on sigma in [-1, 1].
struct LegendreForce {
  std::vector<Vec3> half_force;
  std::vector<std::vector<Vec3>> coeffs;  ///< coeffs[m][n - 1]
  int iterations = 0;
  double residual = 0.0;
  double initial_residual = 0.0;
  std::vector<Vec3> v_integral;  ///< int V dsigma per fiber
  std::vector<Vec3> v_moment;    ///< int sigma V dsigma per fiber
  bool near_contact = false;
  double min_distance = 0.0;
};

struct FiberRates {
  Vec3 velocity;
  Vec3 tangent_rate;
  /// t x dt/dt, the angular velocity normal to the axis.
  Vec3 angular_velocity(const Vec3& tangent) const { return tangent.cross(tangent_rate); }
};

class SbfSolver {
 public:
  /// Tabulates the periodic Green's function when the system is periodic.
  SbfSolver(SbfParams params, const std::optional<Vec3>& periodic_box);

  const SbfParams& params() const noexcept { return params_; }

  LegendreForce solve(const FiberSystem& system) const;
  std::vector<FiberRates> velocities(const FiberSystem& system, const LegendreForce& force) const;

  /// V_m at arclength s in [-l, l] by adaptive quadrature over every source fiber.
  Vec3 interaction_velocity(const FiberSystem& system, const LegendreForce& force, int target,
                            double s) const;

  /// One explicit midpoint step of length params().dt. Returns the rates used for the update.
  std::vector<FiberRates> step(FiberSystem& system) const;

  /// Smallest center-line distance over all pairs, minimum image when periodic.
  static double min_distance(const FiberSystem& system, const PeriodicStokeslet* periodic);

  /// Surface gap of fibers a and b using the ellipsoidal radius profile; negative on overlap.
  static double surface_gap(const FiberSystem& system, const PeriodicStokeslet* periodic, int a,
                            int b);
  const PeriodicStokeslet* periodic() const { return periodic_.get(); }

  /// Green's function between a target point on fiber m and a source point on fiber l.
  Mat3 green(const Vec3& r, double source_radius, bool same_fiber) const;

 private:
  SbfParams params_;
  std::optional<Vec3> box_;
  std::unique_ptr<PeriodicStokeslet> periodic_;
};

}  // namespace fibersim::sbf
