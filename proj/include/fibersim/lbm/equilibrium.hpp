#pragma once

#include <array>

#include "fibersim/core/types.hpp"
#include "fibersim/lbm/d3q19.hpp"
#include "fibersim/lbm/trt.hpp"

namespace fibersim::lbm {

using Populations = std::array<double, kQ>;

/// Incompressible equilibrium w_q [rho + rho0 (c.u/cs^2 + (c.u)^2/(2 cs^4) - u.u/(2 cs^2))].
/// Throws Compressibility when |u| >= 0.3 c_s.
Populations equilibrium(double rho, const Vec3& u, double rho0 = 1.0);

struct SplitPopulations {
  Populations even;
  Populations odd;
};

/// Symmetric and antisymmetric parts with respect to q <-> opposite(q).
SplitPopulations split(const Populations& f);
SplitPopulations equilibrium_split(double rho, const Vec3& u, double rho0 = 1.0);

/// Throws Compressibility for |u| >= 0.3 c_s.
void check_mach(const Vec3& u);

/// Reference single-cell TRT collision with the equilibrium at u - u_corr and the body-force
/// term 3 w_q rho0 (c_q . g) added afterwards.
Populations trt_collide(const Populations& f, const TrtParams& trt, const Vec3& u_corr = Vec3::Zero(),
                        const Vec3& body_force = Vec3::Zero(), double rho0 = 1.0);

double density(const Populations& f);
Vec3 momentum(const Populations& f);

}  // namespace fibersim::lbm
