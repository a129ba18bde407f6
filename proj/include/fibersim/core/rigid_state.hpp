#pragma once

#include "fibersim/core/types.hpp"

namespace fibersim {

/// Kinematic state of one rigid particle. Velocities are world-frame.
struct RigidState {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();
  Vec3 velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();

  /// Rotated body z-axis.
  Vec3 tangent() const { return orientation * Vec3::UnitZ(); }

  /// Orientation whose body z-axis maps onto `tangent` by the shortest rotation.
  static Quat orientation_from_tangent(const Vec3& tangent);
};

}  // namespace fibersim
