#include "fibersim/sbf/periodic.hpp"

#include <cmath>

#include "fibersim/core/error.hpp"
#include "fibersim/sbf/greens.hpp"

namespace fibersim::sbf {

namespace {

constexpr double kRealCut = 5.3;     // erfc(5.3) < 1e-13
constexpr double kFourierCut = 31.0;  // exp(-31) < 1e-13
const double kTwoOverSqrtPi = 2.0 / std::sqrt(kPi);

}  // namespace

Mat3 PeriodicStokeslet::real_space(const Vec3& r, double xi) {
  const double n = r.norm();
  require(n > 0.0, ErrorCode::SingularEvaluation, "real-space kernel at zero separation");
  const Vec3 u = r / n;
  const double e = std::erfc(xi * n) / n;
  const double g = kTwoOverSqrtPi * xi * std::exp(-xi * xi * n * n);
  return (e - g) * Mat3::Identity() + (e + g) * outer(u, u);
}

PeriodicStokeslet::PeriodicStokeslet(const Vec3& box, double grid_spacing, double xi)
    : box_(box), xi_(xi) {
  require(box.minCoeff() > 0.0, ErrorCode::InvalidArgument, "box lengths must be positive");
  require(grid_spacing > 0.0, ErrorCode::InvalidArgument, "grid spacing must be positive");
  if (xi_ <= 0.0) xi_ = 3.5 / box.minCoeff();

  const double rcut = kRealCut / xi_;
  for (int d = 0; d < 3; ++d) nreal_[d] = static_cast<int>(std::ceil(rcut / box[d] + 0.5));

  const double kcut = 2.0 * xi_ * std::sqrt(kFourierCut);
  int mmax[3];
  for (int d = 0; d < 3; ++d) mmax[d] = static_cast<int>(std::ceil(kcut * box[d] / (2.0 * kPi)));
  const double volume = box.prod();
  // The summand is even in k, so keep one of each +-k pair with doubled weight.
  for (int a = 0; a <= mmax[0]; ++a) {
    for (int b = -mmax[1]; b <= mmax[1]; ++b) {
      for (int c = -mmax[2]; c <= mmax[2]; ++c) {
        if (a == 0 && (b < 0 || (b == 0 && c <= 0))) continue;
        const Vec3 k(2 * kPi * a / box[0], 2 * kPi * b / box[1], 2 * kPi * c / box[2]);
        const double k2 = k.squaredNorm();
        const double s = k2 / (4.0 * xi_ * xi_);
        if (s > kFourierCut) continue;
        const Vec3 kh = k / std::sqrt(k2);
        const double amp = 2.0 * 8.0 * kPi * (1.0 + s) * std::exp(-s) / (k2 * volume);
        kvecs_.push_back(k);
        kcoef_.push_back(amp * (Mat3::Identity() - outer(kh, kh)));
      }
    }
  }

  for (int d = 0; d < 3; ++d) {
    ng_[d] = std::max(1, static_cast<int>(std::ceil(0.5 * box[d] / grid_spacing)));
    h_[d] = 0.5 * box[d] / ng_[d];
  }
  grid_.resize(static_cast<std::size_t>(ng_[0] + 1) * (ng_[1] + 1) * (ng_[2] + 1));
#pragma omp parallel for schedule(static)
  for (int k = 0; k <= ng_[2]; ++k)
    for (int j = 0; j <= ng_[1]; ++j)
      for (int i = 0; i <= ng_[0]; ++i)
        grid_[(static_cast<std::size_t>(k) * (ng_[1] + 1) + j) * (ng_[0] + 1) + i] =
            smooth_direct(Vec3(i * h_[0], j * h_[1], k * h_[2]));
}

Vec3 PeriodicStokeslet::minimum_image(const Vec3& r) const {
  Vec3 out;
  for (int d = 0; d < 3; ++d) out[d] = r[d] - box_[d] * std::nearbyint(r[d] / box_[d]);
  return out;
}

Mat3 PeriodicStokeslet::smooth_direct(const Vec3& r) const {
  Mat3 acc = Mat3::Zero();
  for (int a = -nreal_[0]; a <= nreal_[0]; ++a)
    for (int b = -nreal_[1]; b <= nreal_[1]; ++b)
      for (int c = -nreal_[2]; c <= nreal_[2]; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const Vec3 y = r + Vec3(a * box_[0], b * box_[1], c * box_[2]);
        if (xi_ * y.norm() > kRealCut) continue;
        acc += real_space(y, xi_);
      }
  for (std::size_t i = 0; i < kvecs_.size(); ++i) acc += kcoef_[i] * std::cos(kvecs_[i].dot(r));
  return acc;
}

Mat3 PeriodicStokeslet::smooth(const Vec3& r) const {
  const Vec3 m = minimum_image(r);
  Vec3 a = m.cwiseAbs();
  const Vec3 sign(m[0] < 0 ? -1.0 : 1.0, m[1] < 0 ? -1.0 : 1.0, m[2] < 0 ? -1.0 : 1.0);
  int idx[3];
  double w[3];
  for (int d = 0; d < 3; ++d) {
    const double x = std::min(a[d] / h_[d], static_cast<double>(ng_[d]));
    idx[d] = std::min(static_cast<int>(x), ng_[d] - 1);
    w[d] = x - idx[d];
  }
  Mat3 v = Mat3::Zero();
  for (int dk = 0; dk < 2; ++dk)
    for (int dj = 0; dj < 2; ++dj)
      for (int di = 0; di < 2; ++di) {
        const double wt = (di ? w[0] : 1 - w[0]) * (dj ? w[1] : 1 - w[1]) * (dk ? w[2] : 1 - w[2]);
        v += wt * grid_at(idx[0] + di, idx[1] + dj, idx[2] + dk);
      }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(i, j) *= sign[i] * sign[j];
  return v;
}

Mat3 PeriodicStokeslet::operator()(const Vec3& r) const {
  const Vec3 m = minimum_image(r);
  require(m.norm() > 1e-14 * box_.minCoeff(), ErrorCode::SingularEvaluation,
          "periodic Stokeslet evaluated at a lattice vector");
  return real_space(m, xi_) + smooth(m);
}

Mat3 PeriodicStokeslet::self_regular(const Vec3& r) const {
  const double n = r.norm();
  Mat3 local;
  if (n < 1e-9 / xi_) {
    local = -2.0 * kTwoOverSqrtPi * xi_ * Mat3::Identity();
  } else {
    const Vec3 u = r / n;
    const double e = -std::erf(xi_ * n) / n;
    const double g = kTwoOverSqrtPi * xi_ * std::exp(-xi_ * xi_ * n * n);
    local = (e - g) * Mat3::Identity() + (e + g) * outer(u, u);
  }
  return local + smooth(r);
}

}  // namespace fibersim::sbf
