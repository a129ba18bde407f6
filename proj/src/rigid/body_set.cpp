#include "fibersim/rigid/body_set.hpp"

#include <cmath>
#include <limits>

#include "fibersim/core/error.hpp"

namespace fibersim::rigid {

std::pair<Vec3, Vec3> Body::segment() const {
  const Vec3 half = 0.5 * shape.cap_free_length() * state.tangent();
  return {state.position - half, state.position + half};
}

Mat3 Body::world_inertia() const {
  const Mat3 R = state.orientation.toRotationMatrix();
  return R * inertia * R.transpose();
}

double Body::kinetic_energy() const {
  return 0.5 * mass * state.velocity.squaredNorm() +
         0.5 * state.angular_velocity.dot(world_inertia() * state.angular_velocity);
}

std::size_t BodySet::add(const Spherocylinder& shape, const RigidState& state) {
  const double mass = shape.mass();
  require(mass > 0.0, ErrorCode::InvalidArgument, "body mass must be positive");
  Body b{shape, state, mass, spherocylinder_inertia(shape, mass)};
  b.state.orientation.normalize();
  bodies_.push_back(b);
  return bodies_.size() - 1;
}

void BodySet::accumulate(std::size_t i, const Vec3& force, const Vec3& torque) {
  require(force.allFinite() && torque.allFinite(), ErrorCode::InvalidArgument, "non-finite load");
  Body& b = bodies_.at(i);
  b.force += force;
  b.torque += torque;
}

void BodySet::accumulate_at(std::size_t i, const Vec3& force, const Vec3& point) {
  require(point.allFinite(), ErrorCode::InvalidArgument, "non-finite load point");
  accumulate(i, force, (point - bodies_.at(i).state.position).cross(force));
}

void BodySet::integrate(double dt) {
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::InvalidArgument, "time step must be positive");
  for (Body& b : bodies_) {
    RigidState& s = b.state;
    s.velocity += (b.force / b.mass) * dt;
    s.position += s.velocity * dt;

    const Mat3 R = s.orientation.toRotationMatrix();
    const Vec3 L = R * (b.inertia * (R.transpose() * s.angular_velocity)) + b.torque * dt;
    const Vec3 w = R * b.inertia.inverse() * (R.transpose() * L);
    const Quat omega(0.0, w.x(), w.y(), w.z());
    Quat q = s.orientation;
    q.coeffs() += 0.5 * dt * (omega * s.orientation).coeffs();
    q.normalize();
    s.orientation = q;
    const Mat3 Rn = q.toRotationMatrix();
    s.angular_velocity = Rn * b.inertia.inverse() * (Rn.transpose() * L);

    b.force.setZero();
    b.torque.setZero();
  }
  for (std::size_t i = 0; i < bodies_.size(); ++i)
    for (std::size_t j = i + 1; j < bodies_.size(); ++j)
      require(surface_distance(i, j) > 0.0, ErrorCode::Overlap, "bodies overlap after the update");
}

double BodySet::surface_distance(std::size_t i, std::size_t j) const {
  const Body& a = bodies_.at(i);
  const Body& b = bodies_.at(j);
  auto [a0, a1] = a.segment();
  auto [b0, b1] = b.segment();
  if (box_) {
    Vec3 d = b.state.position - a.state.position;
    Vec3 shift = Vec3::Zero();
    for (int k = 0; k < 3; ++k) shift[k] = -(*box_)[k] * std::round(d[k] / (*box_)[k]);
    b0 += shift;
    b1 += shift;
  }
  return segment_distance(a0, a1, b0, b1) - a.shape.radius() - b.shape.radius();
}

double BodySet::min_surface_distance() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < bodies_.size(); ++i)
    for (std::size_t j = i + 1; j < bodies_.size(); ++j) m = std::min(m, surface_distance(i, j));
  return m;
}

Vec3 BodySet::linear_momentum() const {
  Vec3 p = Vec3::Zero();
  for (const Body& b : bodies_) p += b.mass * b.state.velocity;
  return p;
}

Vec3 BodySet::angular_momentum() const {
  Vec3 l = Vec3::Zero();
  for (const Body& b : bodies_) l += b.state.position.cross(b.mass * b.state.velocity) + b.angular_momentum();
  return l;
}

}  // namespace fibersim::rigid
