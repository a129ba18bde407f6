#include "fibersim/sbf/greens.hpp"

#include "fibersim/core/error.hpp"

namespace fibersim::sbf {

Mat3 stokeslet(const Vec3& r) {
  const double n = r.norm();
  require(n > 0.0, ErrorCode::SingularEvaluation, "Stokeslet evaluated at zero separation");
  const Vec3 u = r / n;
  return (Mat3::Identity() + outer(u, u)) / n;
}

Mat3 doublet(const Vec3& r) {
  const double n = r.norm();
  require(n > 0.0, ErrorCode::SingularEvaluation, "doublet evaluated at zero separation");
  const Vec3 u = r / n;
  return (Mat3::Identity() - 3.0 * outer(u, u)) / (n * n * n);
}

Mat3 greens_free(const Vec3& r, double fiber_radius, bool same_fiber) {
  if (same_fiber) return Mat3::Zero();
  return stokeslet(r) + 0.5 * fiber_radius * fiber_radius * doublet(r);
}

}  // namespace fibersim::sbf
