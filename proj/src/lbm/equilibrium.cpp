#include "fibersim/lbm/equilibrium.hpp"

#include <cmath>

#include "fibersim/core/error.hpp"
#include "fibersim/core/units.hpp"

namespace fibersim::lbm {

TrtParams TrtParams::magic(double tau) { return with_odd(tau, magic_lambda_odd(tau)); }

TrtParams TrtParams::with_odd(double tau, double lambda_o) {
  require(tau > 0.5, ErrorCode::InvalidRelaxation, "relaxation time must exceed 1/2");
  require(lambda_o < 0.0 && lambda_o >= -2.0, ErrorCode::InvalidRelaxation,
          "odd relaxation rate must lie in [-2, 0)");
  TrtParams p;
  p.tau = tau;
  p.lambda_e = -1.0 / tau;
  p.lambda_o = lambda_o;
  return p;
}

void check_mach(const Vec3& u) {
  const double limit = 0.3 * std::sqrt(kCs2);
  require(u.allFinite() && u.norm() < limit, ErrorCode::Compressibility,
          "lattice velocity exceeds the Mach guard 0.3 c_s");
}

Populations equilibrium(double rho, const Vec3& u, double rho0) {
  check_mach(u);
  Populations f;
  const double usq = u.squaredNorm();
  for (int q = 0; q < kQ; ++q) {
    const double cu = kC[q][0] * u.x() + kC[q][1] * u.y() + kC[q][2] * u.z();
    f[q] = kW[q] * (rho + rho0 * (3.0 * cu + 4.5 * cu * cu - 1.5 * usq));
  }
  return f;
}

SplitPopulations split(const Populations& f) {
  SplitPopulations s;
  for (int q = 0; q < kQ; ++q) {
    const double fb = f[opposite(q)];
    s.even[q] = 0.5 * (f[q] + fb);
    s.odd[q] = 0.5 * (f[q] - fb);
  }
  return s;
}

SplitPopulations equilibrium_split(double rho, const Vec3& u, double rho0) {
  return split(equilibrium(rho, u, rho0));
}

double density(const Populations& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s;
}

Vec3 momentum(const Populations& f) {
  Vec3 j = Vec3::Zero();
  for (int q = 0; q < kQ; ++q) j += f[q] * Vec3(kC[q][0], kC[q][1], kC[q][2]);
  return j;
}

Populations trt_collide(const Populations& f, const TrtParams& trt, const Vec3& u_corr,
                        const Vec3& body_force, double rho0) {
  const double rho = density(f);
  const Vec3 u = momentum(f) / rho0 - u_corr;
  const SplitPopulations eq = equilibrium_split(rho, u, rho0);
  const SplitPopulations s = split(f);
  Populations out;
  for (int q = 0; q < kQ; ++q) {
    const Vec3 c(kC[q][0], kC[q][1], kC[q][2]);
    out[q] = f[q] + trt.lambda_e * (s.even[q] - eq.even[q]) + trt.lambda_o * (s.odd[q] - eq.odd[q]) +
             3.0 * kW[q] * rho0 * c.dot(body_force);
  }
  return out;
}

}  // namespace fibersim::lbm
