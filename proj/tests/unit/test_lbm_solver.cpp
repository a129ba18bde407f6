#include <doctest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fibersim/core/error.hpp"
#include "fibersim/lbm/solver.hpp"
#include "fibersim/lbm/vtk.hpp"

using namespace fibersim;
using namespace fibersim::lbm;

namespace {

// Fully developed flow in a square duct |y|, |z| < a driven by acceleration g.
double duct_velocity(double y, double z, double a, double g, double nu) {
  double s = 0.0;
  for (int n = 1; n < 400; n += 2) {
    const double k = n * kPi / (2 * a);
    const double sign = (n / 2) % 2 ? -1.0 : 1.0;
    s += sign * (1 - std::cosh(k * z) / std::cosh(k * a)) * std::cos(k * y) / (n * n * n);
  }
  return 16 * a * a * g / (nu * kPi * kPi * kPi) * s;
}

double duct_error(int H) {
  LbmConfig cfg;
  cfg.dims = {2, H, H};
  cfg.boundaries = DomainBoundaries::all(BoundaryType::NoSlip);
  cfg.boundaries.faces[0] = cfg.boundaries.faces[1] = BoundaryType::Periodic;
  cfg.trt = TrtParams::magic(1.0);
  const double nu = cfg.trt.viscosity();
  const double a = 0.5 * H;
  const double g = 0.01 / duct_velocity(0, 0, a, 1.0, nu);
  cfg.body_force = Vec3(g, 0, 0);
  LbmSolver s(cfg);
  s.initialize();
  for (int k = 0; k < H; ++k)
    for (int j = 0; j < H; ++j)
      for (int i = 0; i < 2; ++i)
        s.set_populations(i, j, k, equilibrium(1.0, Vec3(duct_velocity(j + 0.5 - a, k + 0.5 - a, a, g, nu), 0, 0)));
  const int steps = static_cast<int>(0.3 * H * H / nu);
  for (int i = 0; i < steps; ++i) s.step();
  double e2 = 0, n2 = 0;
  for (int k = 0; k < H; ++k)
    for (int j = 0; j < H; ++j) {
      const double ua = duct_velocity(j + 0.5 - a, k + 0.5 - a, a, g, nu);
      const double u = s.velocity(1, j, k).x();
      e2 += (u - ua) * (u - ua);
      n2 += ua * ua;
    }
  return std::sqrt(e2 / n2);
}

LatticeBody sphere(const Vec3& c, double r) {
  LatticeBody b;
  b.center = c;
  b.radius = r;
  return b;
}

std::vector<double> snapshot(const LbmSolver& s) {
  std::vector<double> out;
  const auto d = s.dims();
  for (int z = 0; z < d[2]; ++z)
    for (int y = 0; y < d[1]; ++y)
      for (int x = 0; x < d[0]; ++x)
        for (double v : s.populations(x, y, z)) out.push_back(v);
  return out;
}

void randomize(LbmSolver& s, std::uint64_t seed, double amplitude = 0.02) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  const auto d = s.dims();
  for (int z = 0; z < d[2]; ++z)
    for (int y = 0; y < d[1]; ++y)
      for (int x = 0; x < d[0]; ++x) {
        if (s.flag(x, y, z) != CellFlag::Fluid) continue;
        Populations f = equilibrium(1.0, Vec3(u(rng), u(rng), u(rng)));
        for (int q = 0; q < kQ; ++q) f[q] *= 1.0 + u(rng);
        s.set_populations(x, y, z, f);
      }
}

// Drives a moving body, body force and stabilisation through a few steps; used for
// the determinism checks.
std::vector<double> busy_run(KernelIsa isa, Precision prec, int threads) {
  omp_set_num_threads(threads);
  LbmConfig cfg;
  cfg.dims = {13, 11, 10};
  cfg.trt = TrtParams::magic(1.3);
  cfg.precision = prec;
  cfg.isa = isa;
  cfg.stabilize = true;
  cfg.body_force = Vec3(1e-5, -2e-5, 3e-5);
  LbmSolver s(cfg);
  LatticeBody b;
  b.center = Vec3(6.2, 5.1, 4.9);
  b.axis = Vec3(1, 1, 0.5).normalized();
  b.half_segment = 2.5;
  b.radius = 2.2;
  b.velocity = Vec3(0.02, 0.01, -0.015);
  b.angular_velocity = Vec3(0.0, 0.003, 0.002);
  s.map_bodies({b});
  s.initialize();
  randomize(s, 99);
  std::vector<double> forces;
  for (int i = 0; i < 30; ++i) {
    const auto loads = s.step();
    forces.push_back(loads[0].force.x());
    forces.push_back(loads[0].torque.z());
    b.center += b.velocity;
    s.map_bodies({b});
  }
  std::vector<double> out = snapshot(s);
  out.insert(out.end(), forces.begin(), forces.end());
  const Vec3 p = s.tracked_momentum();
  out.insert(out.end(), {p.x(), p.y(), p.z()});
  omp_set_num_threads(1);
  return out;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("plane Poiseuille flow is reproduced to round-off with the magic odd rate") {
  const int H = 16;
  LbmConfig cfg;
  cfg.dims = {2, 2, H};
  cfg.boundaries.faces[4] = cfg.boundaries.faces[5] = BoundaryType::NoSlip;
  cfg.trt = TrtParams::magic(1.5);
  const double nu = cfg.trt.viscosity();
  const double g = 8 * nu * 0.01 / (H * H);
  cfg.body_force = Vec3(g, 0, 0);
  LbmSolver s(cfg);
  s.initialize();
  for (int i = 0; i < static_cast<int>(8 * H * H / nu); ++i) s.step();
  for (int k = 0; k < H; ++k) {
    const double z = k + 0.5;
    CHECK(std::abs(s.velocity(0, 1, k).x() - g / (2 * nu) * z * (H - z)) < 1e-12);
  }
}

TEST_CASE("square-duct Poiseuille flow converges at second order") {
  const double e16 = duct_error(16), e32 = duct_error(32), e64 = duct_error(64);
  const double rate1 = std::log2(e16 / e32), rate2 = std::log2(e32 / e64);
  MESSAGE("duct errors " << e16 << " " << e32 << " " << e64);
  CHECK(rate1 >= 1.9);
  CHECK(rate2 >= 1.9);
  CHECK(e16 < 2e-3);
}

TEST_CASE("free-slip walls keep parallel uniform flow steady") {
  LbmConfig cfg;
  cfg.dims = {6, 7, 8};
  cfg.boundaries = DomainBoundaries::all(BoundaryType::FreeSlip);
  cfg.boundaries.faces[0] = cfg.boundaries.faces[1] = BoundaryType::Periodic;
  cfg.trt = TrtParams::magic(0.9);
  LbmSolver s(cfg);
  const Vec3 u0(0.04, 0, 0);
  s.initialize(u0);
  const Vec3 p0 = s.momentum();
  const Populations eq = equilibrium(1.0, u0);
  for (int i = 0; i < 1000; ++i) s.step();
  CHECK((s.momentum() - p0).norm() < 1e-12 * p0.norm());
  double drift = 0;
  for (int z = 0; z < 8; ++z)
    for (int y = 0; y < 7; ++y)
      for (int x = 0; x < 6; ++x) {
        const Populations f = s.populations(x, y, z);
        for (int q = 0; q < kQ; ++q) drift = std::max(drift, std::abs(f[q] - eq[q]));
      }
  CHECK(drift < 1e-12);
}

TEST_CASE("free-slip walls reflect the normal momentum and keep the tangential one") {
  LbmConfig cfg;
  cfg.dims = {5, 5, 6};
  cfg.boundaries.faces[4] = cfg.boundaries.faces[5] = BoundaryType::FreeSlip;
  cfg.trt = TrtParams::magic(0.8);
  LbmSolver s(cfg);
  s.initialize(Vec3(0.02, -0.01, 0.03));
  for (int i = 0; i < 400; ++i) s.step();
  const Vec3 p = s.momentum() / s.fluid_cells();
  CHECK(p.x() == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(p.y() == doctest::Approx(-0.01).epsilon(1e-12));
  CHECK(std::abs(p.z()) < 1e-3);
}

TEST_CASE("closed no-slip box conserves mass") {
  LbmConfig cfg;
  cfg.dims = {9, 8, 7};
  cfg.boundaries = DomainBoundaries::all(BoundaryType::NoSlip);
  cfg.trt = TrtParams::magic(0.75);
  LbmSolver s(cfg);
  s.initialize();
  randomize(s, 4);
  const double m0 = s.mass_deviation() + s.fluid_cells();
  for (int i = 0; i < 1000; ++i) s.step();
  const double m1 = s.mass_deviation() + s.fluid_cells();
  CHECK(std::abs(m1 - m0) / m0 < 1e-12);
}

TEST_CASE("one step matches a reference pull with bounce-back and moving walls") {
  LbmConfig cfg;
  cfg.dims = {12, 10, 9};
  cfg.boundaries.faces[2] = cfg.boundaries.faces[3] = BoundaryType::NoSlip;
  cfg.trt = TrtParams::magic(0.9);
  for (double speed : {0.0, 0.03}) {
    LbmSolver s(cfg);
    LatticeBody b = sphere(Vec3(6.3, 5.2, 4.1), 2.6);
    b.velocity = Vec3(speed, -0.5 * speed, 0.2 * speed);
    b.angular_velocity = Vec3(0.1, -0.2, 0.3) * speed;
    s.map_bodies({b});
    s.initialize();
    randomize(s, 12);
    std::vector<Populations> before;
    for (int z = 0; z < 9; ++z)
      for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 12; ++x) before.push_back(s.populations(x, y, z));
    auto at = [&](int x, int y, int z) -> const Populations& { return before[(z * 10 + y) * 12 + x]; };
    s.step();
    double worst = 0;
    for (int z = 0; z < 9; ++z)
      for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 12; ++x) {
          if (s.flag(x, y, z) != CellFlag::Fluid) continue;
          Populations pulled{};
          for (int q = 0; q < kQ; ++q) {
            const int sx = (x - kC[q][0] + 12) % 12, sz = (z - kC[q][2] + 9) % 9;
            const int sy = y - kC[q][1];
            if (sy < 0 || sy >= 10) {
              pulled[q] = at(x, y, z)[opposite(q)];
            } else if (s.flag(sx, sy, sz) == CellFlag::Obstacle) {
              const Vec3 xs(sx + 0.5, sy + 0.5, sz + 0.5);
              const Vec3 us = b.velocity + b.angular_velocity.cross(s.wrap_displacement(xs - b.center));
              pulled[q] = at(x, y, z)[opposite(q)] + 6 * kW[q] * (kC[q][0] * us.x() + kC[q][1] * us.y() + kC[q][2] * us.z());
            } else {
              pulled[q] = at(sx, sy, sz)[q];
            }
          }
          const Populations expect = trt_collide(pulled, cfg.trt);
          const Populations got = s.populations(x, y, z);
          for (int q = 0; q < kQ; ++q) worst = std::max(worst, std::abs(got[q] - expect[q]));
        }
    CHECK(worst < 1e-14);
  }
}

TEST_CASE("voxelisation of the sphere limit") {
  LbmConfig cfg;
  cfg.dims = {16, 16, 16};
  LbmSolver s(cfg);
  s.map_bodies({sphere(Vec3(8.0, 8.0, 8.0), 4.0)});
  const double expected = 4.0 / 3.0 * kPi * 64.0;
  CHECK(std::abs(static_cast<double>(s.body_cells(0).size()) / expected - 1.0) < 0.1);
  CHECK(s.fluid_cells() == 16 * 16 * 16 - s.body_cells(0).size());
  CHECK(s.warnings().empty());
}

TEST_CASE("mapping is idempotent and translation equivariant") {
  LbmConfig cfg;
  cfg.dims = {20, 14, 14};
  LbmSolver s(cfg);
  LatticeBody b;
  b.center = Vec3(7.3, 7.1, 6.8);
  b.axis = Vec3(1, 0.3, 0.2).normalized();
  b.half_segment = 3.0;
  b.radius = 2.5;
  s.map_bodies({b});
  s.initialize(Vec3(0.01, 0, 0));
  randomize(s, 3);
  const auto cells = s.body_cells(0);
  const auto pops = snapshot(s);
  s.map_bodies({b});
  CHECK(s.body_cells(0) == cells);
  CHECK(bitwise_equal(snapshot(s), pops));

  std::vector<int> before(20 * 14 * 14), after(20 * 14 * 14);
  for (int z = 0; z < 14; ++z)
    for (int y = 0; y < 14; ++y)
      for (int x = 0; x < 20; ++x) before[(z * 14 + y) * 20 + x] = static_cast<int>(s.flag(x, y, z));
  b.center.x() += 1.0;
  s.map_bodies({b});
  for (int z = 0; z < 14; ++z)
    for (int y = 0; y < 14; ++y)
      for (int x = 0; x < 20; ++x) after[(z * 14 + y) * 20 + x] = static_cast<int>(s.flag(x, y, z));
  for (int z = 0; z < 14; ++z)
    for (int y = 0; y < 14; ++y)
      for (int x = 0; x < 20; ++x) CHECK(after[(z * 14 + y) * 20 + (x + 1) % 20] == before[(z * 14 + y) * 20 + x]);
}

TEST_CASE("bodies wrap across periodic faces") {
  LbmConfig cfg;
  cfg.dims = {12, 12, 12};
  LbmSolver s(cfg);
  s.map_bodies({sphere(Vec3(0.2, 6.0, 11.9), 3.0)});
  CHECK(s.owner(0, 6, 11) == 0);
  CHECK(s.owner(11, 6, 0) == 0);
  CHECK(s.owner(6, 6, 6) == -1);
  s.initialize();
  const auto loads = s.step();
  CHECK(loads[0].links > 0);
  CHECK(loads[0].force.norm() == 0.0);
}

TEST_CASE("mapping errors and warnings") {
  LbmConfig cfg;
  cfg.dims = {16, 16, 16};
  {
    LbmSolver s(cfg);
    try {
      s.map_bodies({sphere(Vec3(5, 8, 8), 3.0), sphere(Vec3(9, 8, 8), 3.0)});
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Overlap);
    }
  }
  {
    LbmSolver s(cfg);
    s.map_bodies({sphere(Vec3(8, 8, 8), 1.5)});
    CHECK(s.warnings().size() == 1);
  }
  {
    LbmSolver s(cfg);
    s.map_bodies({sphere(Vec3(8, 8, 8), 0.3)});
    s.initialize();
    try {
      s.step();
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateMapping);
    }
  }
  {
    LbmConfig bad = cfg;
    bad.boundaries.faces[4] = bad.boundaries.faces[5] = BoundaryType::NoSlip;
    bad.stabilize = true;
    CHECK_THROWS_AS(LbmSolver{bad}, Error);
  }
}

TEST_CASE("quiescent fluid exerts no load on a stationary body") {
  LbmConfig cfg;
  cfg.dims = {16, 16, 16};
  LbmSolver s(cfg);
  LatticeBody b;
  b.center = Vec3(8.1, 7.7, 8.4);
  b.axis = Vec3(0.2, 0.5, 1).normalized();
  b.half_segment = 3;
  b.radius = 2.5;
  s.map_bodies({b});
  s.initialize();
  for (int i = 0; i < 5; ++i) {
    const auto loads = s.step();
    CHECK(loads[0].force.norm() < 1e-12);
    CHECK(loads[0].torque.norm() < 1e-12);
  }
}

TEST_CASE("co-moving fluid stays uniform around a translating body") {
  LbmConfig cfg;
  cfg.dims = {20, 16, 16};
  cfg.trt = TrtParams::magic(1.0);
  LbmSolver s(cfg);
  LatticeBody b = sphere(Vec3(8, 8, 8), 3.5);
  b.velocity = Vec3(0.02, 0.01, 0);
  s.map_bodies({b});
  const Populations eq = equilibrium(1.0, b.velocity);
  s.initialize(b.velocity);
  double worst_force = 0;
  for (int i = 0; i < 100; ++i) {
    worst_force = std::max(worst_force, s.step()[0].force.norm());
    b.center += b.velocity;
    s.map_bodies({b});
  }
  double drift = 0;
  for (int z = 0; z < 16; ++z)
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 20; ++x) {
        if (s.flag(x, y, z) != CellFlag::Fluid) continue;
        const Populations f = s.populations(x, y, z);
        for (int q = 0; q < kQ; ++q) drift = std::max(drift, std::abs(f[q] - eq[q]));
      }
  CHECK(drift < 1e-10);
  CHECK(worst_force < 1e-10);
}

TEST_CASE("a body pushed through quiescent fluid compresses the fluid ahead") {
  LbmConfig cfg;
  cfg.dims = {32, 16, 16};
  cfg.trt = TrtParams::magic(1.0);
  LbmSolver s(cfg);
  LatticeBody b = sphere(Vec3(12, 8, 8), 3.5);
  b.velocity = Vec3(0.02, 0, 0);
  s.map_bodies({b});
  s.initialize();
  for (int i = 0; i < 20; ++i) {
    const auto loads = s.step();
    CHECK(loads[0].force.x() < 0.0);
    b.center += b.velocity;
    s.map_bodies({b});
  }
  CHECK(s.density(17, 8, 8) > 1.0);
  CHECK(s.density(7, 8, 8) < 1.0);
}

TEST_CASE("Stokes drag on a periodic array of spheres") {
  LbmConfig cfg;
  cfg.dims = {32, 32, 32};
  cfg.trt = TrtParams::magic(1.5);
  cfg.body_force = Vec3(2e-6, 0, 0);
  cfg.precision = Precision::Single;
  LbmSolver s(cfg);
  const double r = 6.0;
  s.map_bodies({sphere(Vec3(16, 16, 16), r)});
  s.initialize();
  HydroLoad load;
  for (int i = 0; i < 4000; ++i) load = s.step()[0];
  double usum = 0;
  for (int z = 0; z < 32; ++z)
    for (int y = 0; y < 32; ++y)
      for (int x = 0; x < 32; ++x)
        if (s.flag(x, y, z) == CellFlag::Fluid) usum += s.velocity(x, y, z).x();
  const double U = usum / (32.0 * 32 * 32);
  const double phi = 4.0 / 3.0 * kPi * r * r * r / (32.0 * 32 * 32);
  const double K = 1 - 1.7601 * std::cbrt(phi) + phi - 1.5593 * phi * phi;
  const double expected = 6 * kPi * cfg.trt.viscosity() * r * U / K;
  MESSAGE("drag ratio " << load.force.x() / expected);
  CHECK(load.force.x() / (cfg.body_force.x() * s.fluid_cells()) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(load.force.x() / expected - 1.0) < 0.15);
}

TEST_CASE("drag is Galilean invariant at low Mach number") {
  const double U = 0.01;
  auto run = [&](bool moving) {
    LbmConfig cfg;
    cfg.dims = {40, 24, 24};
    cfg.trt = TrtParams::magic(1.0);
    LbmSolver s(cfg);
    LatticeBody b = sphere(Vec3(20, 12, 12), 4.0);
    if (moving) b.velocity = Vec3(-U, 0, 0);
    s.map_bodies({b});
    s.initialize(moving ? Vec3::Zero() : Vec3(U, 0, 0));
    Vec3 sum = Vec3::Zero();
    for (int i = 0; i < 400; ++i) {
      const Vec3 f = s.step()[0].force;
      if (i >= 100) sum += f;
      if (moving) {
        b.center += b.velocity;
        s.map_bodies({b});
      }
    }
    return Vec3(sum / 300.0);
  };
  const Vec3 fixed = run(false), moving = run(true);
  MESSAGE("fixed " << fixed.transpose() << " moving " << moving.transpose());
  CHECK(fixed.x() > 0.0);
  CHECK(std::abs(moving.x() / fixed.x() - 1.0) < 0.02);
}

TEST_CASE("momentum budget matches a direct pass in a stabilised periodic box") {
  LbmConfig cfg;
  cfg.dims = {20, 18, 16};
  cfg.trt = TrtParams::magic(2.0);
  cfg.stabilize = true;
  LbmSolver s(cfg);
  s.set_verify_budget(true);
  LatticeBody b;
  b.center = Vec3(9.5, 8.2, 7.7);
  b.axis = Vec3(0.3, 0.2, 1).normalized();
  b.half_segment = 3.0;
  b.radius = 2.4;
  b.velocity = Vec3(0.01, -0.004, 0.02);
  b.angular_velocity = Vec3(0.001, 0.002, -0.001);
  s.map_bodies({b});
  s.initialize();
  for (int i = 0; i < 200; ++i) {
    const Vec3 before = s.tracked_momentum();
    CHECK((before - s.momentum()).norm() < 1e-12);
    const Vec3 F = s.step()[0].force;
    const Vec3 delta_fluid = s.last_direct_pre_collision_momentum() - before;
    CHECK((delta_fluid + F).norm() <= 1e-8 * F.norm());
    b.center += b.velocity;
    s.map_bodies({b});
  }
}

TEST_CASE("stabilisation removes a uniform drift") {
  LbmConfig cfg;
  cfg.dims = {8, 8, 8};
  cfg.trt = TrtParams::with_odd(1.0, -1.0);
  cfg.stabilize = true;
  {
    LbmSolver s(cfg);
    s.initialize(Vec3(0.02, -0.01, 0.005));
    s.step();
    CHECK(s.last_correction().x() == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(s.momentum().norm() < 1e-12);
  }
  {
    cfg.trt = TrtParams::magic(6.0);
    LbmSolver s(cfg);
    const Vec3 u0(0.02, -0.01, 0.005);
    s.initialize(u0);
    const Vec3 p0 = s.momentum();
    s.step();
    CHECK((s.momentum() - (1 + cfg.trt.lambda_o) * p0).norm() < 1e-12 * p0.norm());
  }
  {
    LbmConfig plain = cfg;
    plain.stabilize = false;
    LbmSolver s(plain);
    s.initialize();
    s.step();
    CHECK(s.last_correction().norm() == 0.0);
  }
}

TEST_CASE("stabilisation keeps the fluid momentum bounded around a driven body") {
  auto run = [](bool stabilize) {
    LbmConfig cfg;
    cfg.dims = {16, 16, 24};
    cfg.trt = TrtParams::magic(1.0);
    cfg.stabilize = stabilize;
    LbmSolver s(cfg);
    LatticeBody b = sphere(Vec3(8, 8, 12), 3.0);
    b.velocity = Vec3(0, 0, 0.01);
    s.map_bodies({b});
    s.initialize();
    double peak = 0;
    for (int i = 0; i < 1500; ++i) {
      s.step();
      peak = std::max(peak, s.momentum().norm());
      b.center += b.velocity;
      if (b.center.z() > 24) b.center.z() -= 24;
      s.map_bodies({b});
    }
    return std::pair(peak, s.momentum().norm());
  };
  const auto [peak_on, final_on] = run(true);
  const auto [peak_off, final_off] = run(false);
  MESSAGE("peak with " << peak_on << " without " << peak_off);
  CHECK(final_off > 10 * final_on);
  CHECK(peak_on < 1.0);
}

TEST_CASE("scalar and AVX2 kernels agree bit for bit") {
  if (detect_isa() != KernelIsa::Avx2) return;
  for (Precision p : {Precision::Double, Precision::Single}) {
    CHECK(bitwise_equal(busy_run(KernelIsa::Scalar, p, 1), busy_run(KernelIsa::Avx2, p, 1)));
  }
}

TEST_CASE("results do not depend on the thread count") {
  const auto one = busy_run(KernelIsa::Auto, Precision::Double, 1);
  for (int t : {2, 8}) CHECK(bitwise_equal(one, busy_run(KernelIsa::Auto, Precision::Double, t)));
}

TEST_CASE("vtk snapshot") {
  LbmConfig cfg;
  cfg.dims = {4, 3, 2};
  LbmSolver s(cfg);
  s.initialize(Vec3(0.01, 0, 0));
  const auto path = std::filesystem::temp_directory_path() / "fibersim_snapshot.vtk";
  write_vtk(path.string(), s, {2.0, 10.0, 1000.0});
  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.rfind("# vtk DataFile Version 3.0\n", 0) == 0);
  CHECK(text.find("DIMENSIONS 4 3 2") != std::string::npos);
  CHECK(text.find("SPACING 2 2 2") != std::string::npos);
  const auto at = text.find("LOOKUP_TABLE default\n") + std::strlen("LOOKUP_TABLE default\n");
  unsigned char b[4];
  std::memcpy(b, text.data() + at, 4);
  const std::uint32_t u = (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) | b[3];
  float rho;
  std::memcpy(&rho, &u, 4);
  CHECK(rho == doctest::Approx(1000.0).epsilon(1e-6));
  const auto vec = text.find("VECTORS velocity float\n") + std::strlen("VECTORS velocity float\n");
  std::memcpy(b, text.data() + vec, 4);
  const std::uint32_t v = (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) | b[3];
  float ux;
  std::memcpy(&ux, &v, 4);
  CHECK(ux == doctest::Approx(0.1).epsilon(1e-5));
  CHECK(text.size() > 24 * 16);
  CHECK_THROWS_AS(write_vtk("/nonexistent/dir/x.vtk", s), Error);
  std::filesystem::remove(path);
}
