#pragma once

#include "fibersim/core/fluid.hpp"
#include "fibersim/core/types.hpp"

namespace fibersim {

/// Cylinder of length L - 2r closed by two hemispherical caps. L = 2r is the sphere limit.
class Spherocylinder {
 public:
  Spherocylinder(double radius, double length, double density);

  static Spherocylinder sphere(double radius, double density) {
    return {radius, 2.0 * radius, density};
  }
  /// Builds from radius and inverse slenderness L/r.
  static Spherocylinder from_aspect(double radius, double inverse_slenderness, double density) {
    return {radius, inverse_slenderness * radius, density};
  }

  double radius() const noexcept { return radius_; }
  double length() const noexcept { return length_; }
  double cap_free_length() const noexcept { return length_ - 2.0 * radius_; }
  double density() const noexcept { return density_; }
  /// eps = r/L.
  double slenderness() const noexcept { return radius_ / length_; }
  /// 1/eps = L/r.
  double inverse_slenderness() const noexcept { return length_ / radius_; }
  /// a = L/(2r) = 1/(2 eps), the aspect ratio of the end-effect fits.
  double aspect_ratio() const noexcept { return 0.5 * length_ / radius_; }

  double volume() const;
  double mass() const { return density_ * volume(); }

 private:
  double radius_;
  double length_;
  double density_;
};

double spherocylinder_volume(const Spherocylinder& p);

/// Body-frame inertia about the center of mass; the symmetry axis is body z.
Mat3 spherocylinder_inertia(const Spherocylinder& p, double mass);

/// Slender fiber with ellipsoidal radius profile as used by the slender-body model.
class EllipsoidalFiber {
 public:
  EllipsoidalFiber(double half_length, double slenderness);

  static EllipsoidalFiber matching(const Spherocylinder& p) {
    return {0.5 * p.length(), p.slenderness()};
  }

  double half_length() const noexcept { return half_length_; }
  double length() const noexcept { return 2.0 * half_length_; }
  double slenderness() const noexcept { return slenderness_; }
  /// Radius r = eps * L.
  double radius() const noexcept { return slenderness_ * length(); }
  /// d = -ln(eps^2 e).
  double geometry_parameter() const;

 private:
  double half_length_;
  double slenderness_;
};

/// Shortest distance between the segments [p0, p1] and [q0, q1].
double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);

/// (rho_p - rho_f) g V.
Vec3 buoyant_force(double volume, double particle_density, const FluidProperties& fluid,
                   const Vec3& gravity);
Vec3 buoyant_force(const Spherocylinder& p, const FluidProperties& fluid, const Vec3& gravity);

}  // namespace fibersim
