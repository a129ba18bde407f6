#include "fibersim/harness/coupling.hpp"

#include "fibersim/core/error.hpp"

namespace fibersim::harness {

namespace {

lbm::LbmConfig lattice_config(const LatticeSettings& s, const std::array<int, 3>& cells) {
  lbm::LbmConfig c;
  c.dims = cells;
  c.boundaries = s.boundaries;
  c.trt = lbm::TrtParams::magic(s.tau);
  c.stabilize = s.stabilize;
  c.precision = s.precision;
  c.isa = s.isa;
  return c;
}

std::optional<Vec3> periodic_box(const LatticeSettings& s, const std::array<int, 3>& cells) {
  if (!s.boundaries.fully_periodic()) return std::nullopt;
  return Vec3(cells[0], cells[1], cells[2]) * s.dx;
}

}  // namespace

LbmCoupling::LbmCoupling(const LatticeSettings& lattice, const std::array<int, 3>& cells,
                         const FluidProperties& fluid, std::vector<ParticleInit> particles)
    : scales_(UnitScales::from_viscosity(fluid.kinematic_viscosity(), lattice.dx, lattice.tau, fluid.density())),
      motion_(lattice.motion),
      fluid_(lattice_config(lattice, cells)),
      bodies_(periodic_box(lattice, cells)),
      external_(std::move(particles)) {
  fluid_.initialize();
  for (const ParticleInit& p : external_) bodies_.add(p.shape, p.state);
  fluid_.map_bodies(lattice_bodies());
}

std::vector<lbm::LatticeBody> LbmCoupling::lattice_bodies() const {
  std::vector<lbm::LatticeBody> out;
  const double dx = scales_.dx, dt = scales_.dt;
  for (std::size_t i = 0; i < bodies_.size(); ++i) {
    const rigid::Body& b = bodies_[i];
    lbm::LatticeBody lb;
    lb.center = b.state.position / dx;
    lb.axis = b.state.tangent();
    lb.half_segment = 0.5 * b.shape.cap_free_length() / dx;
    lb.radius = b.shape.radius() / dx;
    lb.velocity = b.state.velocity * dt / dx;
    lb.angular_velocity = b.state.angular_velocity * dt;
    out.push_back(lb);
  }
  return out;
}

void LbmCoupling::step() {
  if (fluid_.steps() > 0) fluid_.map_bodies(lattice_bodies());
  const auto hydro = fluid_.step();
  loads_.clear();
  for (std::size_t i = 0; i < bodies_.size(); ++i) {
    Vec3 f = to_si(1.0, QuantityKind::Force, scales_) * hydro[i].force;
    Vec3 m = to_si(1.0, QuantityKind::Torque, scales_) * hydro[i].torque;
    loads_.emplace_back(f, m);
    f += external_[i].force;
    m += external_[i].torque;
    if (motion_ == Motion::TranslationOnly) m.setZero();
    if (motion_ == Motion::RotationOnly) f.setZero();
    bodies_.accumulate(i, f, m);
  }
  bodies_.integrate(scales_.dt);
}

Vec3 LbmCoupling::total_momentum() const {
  Vec3 p = fluid_.momentum();
  const double mass_unit = scales_.rho0 * scales_.dx * scales_.dx * scales_.dx;
  const double vel_unit = scales_.dx / scales_.dt;
  for (std::size_t i = 0; i < bodies_.size(); ++i)
    p += bodies_[i].mass / mass_unit * bodies_[i].state.velocity / vel_unit;
  return p;
}

}  // namespace fibersim::harness
