#pragma once

#include <optional>

#include "fibersim/core/types.hpp"

namespace fibersim::analytic {

enum class FrictionSource { CoxCylinder, CoxSpheroid, Tirado };
enum class CoxShape { Cylinder, Spheroid };
enum class MotionMode { Parallel, Perpendicular, Rotation };

/// Stokes friction coefficients of an elongated body.
struct FrictionSet {
  double parallel = 0.0;                 ///< kg/s, lengthwise translation
  double perpendicular = 0.0;            ///< kg/s, sidewise translation
  std::optional<double> rotational;      ///< kg m^2/s, rotation about a transverse axis
  FrictionSource source = FrictionSource::Tirado;
  double length = 0.0;                   ///< length the coefficients were evaluated with (m)

  /// Xi = g_par t t^T + g_perp (I - t t^T).
  Mat3 resistance(const Vec3& tangent) const;
};

FrictionSet cox_friction(double slenderness, double length, double viscosity, CoxShape shape);

/// Quadratic end-effect corrections in 1/a.
struct EndEffects {
  double parallel = 0.0;
  double perpendicular = 0.0;
  double rotational = 0.0;
  /// True outside 4 < 2a < 60, where the fits are extrapolated.
  bool extrapolated = false;
};

EndEffects tirado_corrections(double aspect_ratio);

/// Cylinder of the given length and radius; a = length / (2 radius).
FrictionSet tirado_friction(double length, double radius, double viscosity);

/// Scalar response load / coefficient. Throws InvalidArgument when rotation is requested
/// from a set without a rotational coefficient.
double terminal_velocity(double load, const FrictionSet& friction, MotionMode mode);

/// U = Xi^{-1} F for an arbitrary load direction.
Vec3 terminal_velocity(const Vec3& force, const Vec3& tangent, const FrictionSet& friction);

struct FiberResponse {
  Vec3 velocity;
  Vec3 angular_velocity;
};

/// Closed-form slender-body response of one isolated ellipsoidal fiber.
FiberResponse sbf_single_fiber(const Vec3& force, const Vec3& torque, const Vec3& tangent,
                               double slenderness, double length, double viscosity);

}  // namespace fibersim::analytic
