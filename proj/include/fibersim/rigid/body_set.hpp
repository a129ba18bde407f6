#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fibersim/core/geometry.hpp"
#include "fibersim/core/rigid_state.hpp"
#include "fibersim/core/types.hpp"

namespace fibersim::rigid {

struct Body {
  Spherocylinder shape;
  RigidState state;
  double mass;
  Mat3 inertia;  ///< body frame, symmetry axis along body z
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();

  /// End points of the cap-free axis segment.
  std::pair<Vec3, Vec3> segment() const;
  Mat3 world_inertia() const;
  Vec3 angular_momentum() const { return world_inertia() * state.angular_velocity; }
  double kinetic_energy() const;
};

/// Spherocylinders advanced by semi-implicit Euler under accumulated loads.
class BodySet {
 public:
  BodySet() = default;
  /// Minimum-image distances in a periodic box of the given edge lengths.
  explicit BodySet(std::optional<Vec3> periodic_box) : box_(periodic_box) {}

  std::size_t add(const Spherocylinder& shape, const RigidState& state);
  std::size_t size() const { return bodies_.size(); }
  const Body& operator[](std::size_t i) const { return bodies_.at(i); }
  Body& operator[](std::size_t i) { return bodies_.at(i); }

  /// Adds to the accumulators. Throws InvalidArgument for non-finite input.
  void accumulate(std::size_t i, const Vec3& force, const Vec3& torque);
  /// Force applied at a world point; the torque about the centre of mass is added.
  void accumulate_at(std::size_t i, const Vec3& force, const Vec3& point);

  /// U += F/m dt, x += U dt; L += M dt with omega from the body-frame inertia, then
  /// q += dt/2 Omega(omega) q and renormalisation. Clears the accumulators.
  /// Throws Overlap if two bodies intersect after the update.
  void integrate(double dt);

  /// Surface-to-surface distance (axis segment distance minus both radii).
  double surface_distance(std::size_t i, std::size_t j) const;
  /// Smallest surface distance over all pairs; +inf for fewer than two bodies.
  double min_surface_distance() const;

  Vec3 linear_momentum() const;
  Vec3 angular_momentum() const;

 private:
  std::vector<Body> bodies_;
  std::optional<Vec3> box_;
};

}  // namespace fibersim::rigid
