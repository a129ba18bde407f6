#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fibersim::sbf {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite three-point Gauss rule on [-1, 1] split into `panels` equal panels.
QuadratureRule panel_gauss3(int panels);

/// n-point Gauss-Legendre rule on [a, b] for n in {3, 7, 10, 15, 20, 25, 30}.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Adaptive Gauss-Kronrod (G7/K15) for vector-valued integrands.
///
/// `f(x, out)` writes the integrand at x into `out`, which has size `dim`. Panels are
/// bisected until the embedded error estimate falls below tol * (|I|_inf + floor).
template <class F>
std::vector<double> adaptive_gk15(F&& f, double a, double b, std::size_t dim, double tol,
                                  int max_depth = 40) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G7 = boost::math::quadrature::gauss<double, 7>;
  static const auto xk = GK::abscissa();
  static const auto wk = GK::weights();
  static const auto wg = G7::weights();

  std::vector<double> out(dim, 0.0), fx(dim), kron(dim), gauss(dim);
  auto panel = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    std::fill(kron.begin(), kron.end(), 0.0);
    std::fill(gauss.begin(), gauss.end(), 0.0);
    for (std::size_t i = 0; i < xk.size(); ++i) {
      for (int side = (i == 0 ? 1 : 0); side < 2; ++side) {
        const double x = side == 0 ? c - h * xk[i] : c + h * xk[i];
        f(x, fx);
        for (std::size_t d = 0; d < dim; ++d) {
          kron[d] += wk[i] * fx[d];
          if (i % 2 == 0) gauss[d] += wg[i / 2] * fx[d];
        }
      }
    }
    double err = 0.0, mag = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      kron[d] *= h;
      gauss[d] *= h;
      err = std::max(err, std::abs(kron[d] - gauss[d]));
      mag = std::max(mag, std::abs(kron[d]));
    }
    return std::pair{err, mag};
  };

  // First pass fixes the magnitude scale used by the tolerance.
  auto [err0, mag0] = panel(a, b);
  const double scale = std::max(mag0, 1e-300);
  struct Item {
    double lo, hi;
    int depth;
  };
  std::vector<Item> stack{{a, b, 0}};
  bool first = true;
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    double err;
    if (first) {
      err = err0;
      first = false;
    } else {
      err = panel(it.lo, it.hi).first;
    }
    const double share = (it.hi - it.lo) / (b - a);
    if (err <= tol * scale * std::max(share, 1e-6) || it.depth >= max_depth) {
      for (std::size_t d = 0; d < dim; ++d) out[d] += kron[d];
      continue;
    }
    const double mid = 0.5 * (it.lo + it.hi);
    stack.push_back({mid, it.hi, it.depth + 1});
    stack.push_back({it.lo, mid, it.depth + 1});
  }
  return out;
}

}  // namespace fibersim::sbf
