#pragma once

namespace fibersim {

/// Newtonian fluid; all quantities SI.
class FluidProperties {
 public:
  /// Throws InvalidArgument unless density and kinematic viscosity are positive.
  FluidProperties(double density, double kinematic_viscosity);

  double density() const noexcept { return density_; }
  double kinematic_viscosity() const noexcept { return kinematic_viscosity_; }
  double dynamic_viscosity() const noexcept { return density_ * kinematic_viscosity_; }

  static FluidProperties water() { return {1.0e3, 1.0e-6}; }

 private:
  double density_;
  double kinematic_viscosity_;
};

/// Particle Reynolds number U*L/nu.
double reynolds_number(double speed, double length_scale, const FluidProperties& fluid);

}  // namespace fibersim
