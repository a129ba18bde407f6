#pragma once

#include "fibersim/core/types.hpp"

namespace fibersim::sbf {

/// S(R) = (I + R^ R^T) / |R|. Throws SingularEvaluation at R = 0.
Mat3 stokeslet(const Vec3& r);

/// D(R) = (I - 3 R^ R^T) / |R|^3.
Mat3 doublet(const Vec3& r);

/// S(R) + (a^2/2) D(R) between distinct fibers, zero for a fiber acting on itself.
Mat3 greens_free(const Vec3& r, double fiber_radius, bool same_fiber = false);

}  // namespace fibersim::sbf
