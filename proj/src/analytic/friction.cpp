#include "fibersim/analytic/friction.hpp"

#include <cmath>

#include "fibersim/core/error.hpp"

namespace fibersim::analytic {

Mat3 FrictionSet::resistance(const Vec3& tangent) const {
  const Mat3 tt = outer(tangent, tangent);
  return parallel * tt + perpendicular * (Mat3::Identity() - tt);
}

FrictionSet cox_friction(double slenderness, double length, double viscosity, CoxShape shape) {
  require(slenderness > 0.0 && slenderness < 0.5, ErrorCode::InvalidArgument,
          "slenderness must lie in (0, 1/2)");
  const double ln2 = std::log(2.0);
  const double c1 = shape == CoxShape::Cylinder ? -1.5 + ln2 : -0.5;
  const double c2 = shape == CoxShape::Cylinder ? -0.5 + ln2 : 0.5;
  const double log_inv = std::log(1.0 / slenderness);
  require(log_inv + c1 > 0.0 && log_inv + c2 > 0.0, ErrorCode::AspectRatioTooSmall,
          "slenderness too large for the Cox expansion");

  FrictionSet f;
  f.parallel = 2.0 * kPi * viscosity * length / (log_inv + c1);
  f.perpendicular = 4.0 * kPi * viscosity * length / (log_inv + c2);
  f.source = shape == CoxShape::Cylinder ? FrictionSource::CoxCylinder : FrictionSource::CoxSpheroid;
  f.length = length;
  return f;
}

EndEffects tirado_corrections(double aspect_ratio) {
  require(aspect_ratio > 0.0, ErrorCode::InvalidArgument, "aspect ratio must be positive");
  const double ia = 1.0 / aspect_ratio;
  EndEffects e;
  e.parallel = -0.207 + 0.980 * ia - 0.133 * ia * ia;
  e.perpendicular = 0.839 + 0.185 * ia + 0.233 * ia * ia;
  e.rotational = -0.662 + 0.917 * ia - 0.050 * ia * ia;
  e.extrapolated = !(2.0 * aspect_ratio > 4.0 && 2.0 * aspect_ratio < 60.0);
  return e;
}

FrictionSet tirado_friction(double length, double radius, double viscosity) {
  require(length > 0.0 && radius > 0.0, ErrorCode::InvalidArgument,
          "length and radius must be positive");
  const double a = length / (2.0 * radius);
  const EndEffects e = tirado_corrections(a);
  const double ln_a = std::log(a);
  const double den_par = ln_a + e.parallel;
  const double den_perp = ln_a + e.perpendicular;
  const double den_rot = ln_a + e.rotational;
  require(den_par > 0.0 && den_perp > 0.0 && den_rot > 0.0, ErrorCode::AspectRatioTooSmall,
          "aspect ratio too small for the end-effect fits");

  FrictionSet f;
  f.parallel = 2.0 * kPi * viscosity * length / den_par;
  f.perpendicular = 4.0 * kPi * viscosity * length / den_perp;
  f.rotational = kPi * viscosity * length * length * length / (3.0 * den_rot);
  f.source = FrictionSource::Tirado;
  f.length = length;
  return f;
}

double terminal_velocity(double load, const FrictionSet& friction, MotionMode mode) {
  switch (mode) {
    case MotionMode::Parallel: return load / friction.parallel;
    case MotionMode::Perpendicular: return load / friction.perpendicular;
    case MotionMode::Rotation:
      require(friction.rotational.has_value(), ErrorCode::InvalidArgument,
              "friction set has no rotational coefficient");
      return load / *friction.rotational;
  }
  fail(ErrorCode::InvalidArgument, "unknown motion mode");
}

Vec3 terminal_velocity(const Vec3& force, const Vec3& tangent, const FrictionSet& friction) {
  const Vec3 t = tangent.normalized();
  const Vec3 f_par = t * t.dot(force);
  return f_par / friction.parallel + (force - f_par) / friction.perpendicular;
}

FiberResponse sbf_single_fiber(const Vec3& force, const Vec3& torque, const Vec3& tangent,
                               double slenderness, double length, double viscosity) {
  require(std::abs(tangent.norm() - 1.0) < 1e-12, ErrorCode::InvalidArgument,
          "tangent must be a unit vector");
  require(std::abs(torque.dot(tangent)) <= 1e-9 * torque.norm(), ErrorCode::NonPerpendicularTorque,
          "torque must be perpendicular to the fiber axis");
  require(slenderness > 0.0 && slenderness < 0.5, ErrorCode::InvalidArgument,
          "slenderness must lie in (0, 1/2)");
  const double d = -std::log(slenderness * slenderness * std::exp(1.0));
  const Mat3 tt = outer(tangent, tangent);
  const Mat3 I = Mat3::Identity();
  const Mat3 local = d * (I + tt) + 2.0 * (I - tt);

  FiberResponse out;
  out.velocity = local * force / (8.0 * kPi * viscosity * length);
  const double rot = 3.0 * d / (2.0 * kPi * viscosity * length * length * length);
  const Vec3 tangent_rate = rot * torque.cross(tangent);
  out.angular_velocity = tangent.cross(tangent_rate);
  return out;
}

}  // namespace fibersim::analytic
