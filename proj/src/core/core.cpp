#include <algorithm>
#include <cmath>
#include <string>

#include "fibersim/core/error.hpp"
#include "fibersim/core/fluid.hpp"
#include "fibersim/core/geometry.hpp"
#include "fibersim/core/rigid_state.hpp"
#include "fibersim/core/units.hpp"

namespace fibersim {

FluidProperties::FluidProperties(double density, double kinematic_viscosity)
    : density_(density), kinematic_viscosity_(kinematic_viscosity) {
  require(density > 0.0 && std::isfinite(density), ErrorCode::InvalidArgument,
          "fluid density must be positive");
  require(kinematic_viscosity > 0.0 && std::isfinite(kinematic_viscosity),
          ErrorCode::InvalidArgument, "kinematic viscosity must be positive");
}

double reynolds_number(double speed, double length_scale, const FluidProperties& fluid) {
  require(length_scale > 0.0, ErrorCode::InvalidArgument, "length scale must be positive");
  return speed * length_scale / fluid.kinematic_viscosity();
}

Spherocylinder::Spherocylinder(double radius, double length, double density)
    : radius_(radius), length_(length), density_(density) {
  require(radius > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  require(length >= 2.0 * radius, ErrorCode::InvalidArgument,
          "total length must be at least the diameter");
  require(density > 0.0, ErrorCode::InvalidArgument, "particle density must be positive");
}

double Spherocylinder::volume() const {
  const double r = radius_;
  return kPi * r * r * cap_free_length() + (4.0 / 3.0) * kPi * r * r * r;
}

double spherocylinder_volume(const Spherocylinder& p) { return p.volume(); }

Mat3 spherocylinder_inertia(const Spherocylinder& p, double mass) {
  require(mass > 0.0, ErrorCode::InvalidArgument, "mass must be positive");
  const double r = p.radius();
  const double h = p.cap_free_length();
  const double rho = mass / p.volume();
  const double m_cyl = rho * kPi * r * r * h;
  const double m_cap = rho * (2.0 / 3.0) * kPi * r * r * r;

  const double axial = 0.5 * m_cyl * r * r + 2.0 * 0.4 * m_cap * r * r;
  // Each cap: 2/5 m r^2 about its flat face, shifted by h/2 to the body center.
  const double cap_transverse = m_cap * (0.4 * r * r + 0.25 * h * h + 0.375 * h * r);
  const double transverse = m_cyl * (0.25 * r * r + h * h / 12.0) + 2.0 * cap_transverse;

  Mat3 inertia = Mat3::Zero();
  inertia(0, 0) = transverse;
  inertia(1, 1) = transverse;
  inertia(2, 2) = axial;
  return inertia;
}

EllipsoidalFiber::EllipsoidalFiber(double half_length, double slenderness)
    : half_length_(half_length), slenderness_(slenderness) {
  require(half_length > 0.0, ErrorCode::InvalidArgument, "half-length must be positive");
  require(slenderness > 0.0 && slenderness < 0.5, ErrorCode::InvalidArgument,
          "slenderness must lie in (0, 1/2)");
}

double EllipsoidalFiber::geometry_parameter() const {
  return -std::log(slenderness_ * slenderness_ * std::exp(1.0));
}

double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  const Vec3 d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a <= 1e-300 && e <= 1e-300) return r.norm();
  if (a <= 1e-300) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 1e-300) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 1e-14 * a * e ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p0 + s * d1) - (q0 + t * d2)).norm();
}

Vec3 buoyant_force(double volume, double particle_density, const FluidProperties& fluid,
                   const Vec3& gravity) {
  return (particle_density - fluid.density()) * volume * gravity;
}

Vec3 buoyant_force(const Spherocylinder& p, const FluidProperties& fluid, const Vec3& gravity) {
  return buoyant_force(p.volume(), p.density(), fluid, gravity);
}

Quat RigidState::orientation_from_tangent(const Vec3& tangent) {
  require(tangent.norm() > 0.0, ErrorCode::InvalidArgument, "tangent must be nonzero");
  Quat q = Quat::FromTwoVectors(Vec3::UnitZ(), tangent.normalized());
  q.normalize();
  return q;
}

QuantityKind parse_quantity_kind(std::string_view name) {
  if (name == "length") return QuantityKind::Length;
  if (name == "time") return QuantityKind::Time;
  if (name == "velocity") return QuantityKind::Velocity;
  if (name == "density") return QuantityKind::Density;
  if (name == "force") return QuantityKind::Force;
  if (name == "torque") return QuantityKind::Torque;
  if (name == "kinematic-viscosity") return QuantityKind::KinematicViscosity;
  if (name == "angular-velocity") return QuantityKind::AngularVelocity;
  fail(ErrorCode::UnknownQuantity, "unknown quantity kind '" + std::string(name) + "'");
}

double derive_dt(double kinematic_viscosity, double dx, double tau) {
  require(tau > 0.5, ErrorCode::InvalidRelaxation,
          "relaxation time must exceed 1/2 (got " + std::to_string(tau) + ")");
  require(kinematic_viscosity > 0.0 && dx > 0.0, ErrorCode::InvalidArgument,
          "viscosity and dx must be positive");
  return (tau - 0.5) * dx * dx / (3.0 * kinematic_viscosity);
}

double viscosity_from_dt(double dt, double dx, double tau) {
  require(tau > 0.5, ErrorCode::InvalidRelaxation, "relaxation time must exceed 1/2");
  return (tau - 0.5) * dx * dx / (3.0 * dt);
}

double magic_lambda_odd(double tau) {
  require(tau > 0.5, ErrorCode::InvalidRelaxation, "relaxation time must exceed 1/2");
  const double omega = 1.0 / tau;
  return -8.0 * (2.0 - omega) / (8.0 - omega);
}

UnitScales UnitScales::from_viscosity(double kinematic_viscosity, double dx, double tau,
                                      double rho0) {
  UnitScales s;
  s.dx = dx;
  s.dt = derive_dt(kinematic_viscosity, dx, tau);
  s.rho0 = rho0;
  s.tau = tau;
  s.lambda_odd = magic_lambda_odd(tau);
  return s;
}

double UnitScales::unit(QuantityKind kind) const {
  switch (kind) {
    case QuantityKind::Length: return dx;
    case QuantityKind::Time: return dt;
    case QuantityKind::Velocity: return dx / dt;
    case QuantityKind::Density: return rho0;
    case QuantityKind::Force: return rho0 * dx * dx * dx * dx / (dt * dt);
    case QuantityKind::Torque: return rho0 * dx * dx * dx * dx * dx / (dt * dt);
    case QuantityKind::KinematicViscosity: return dx * dx / dt;
    case QuantityKind::AngularVelocity: return 1.0 / dt;
  }
  fail(ErrorCode::UnknownQuantity, "unknown quantity kind");
}

double si_lattice_convert(double value, QuantityKind kind, const UnitScales& scales,
                          ConversionDirection direction) {
  const double u = scales.unit(kind);
  return direction == ConversionDirection::SiToLattice ? value / u : value * u;
}

}  // namespace fibersim
