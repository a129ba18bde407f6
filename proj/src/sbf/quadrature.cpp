#include "fibersim/sbf/quadrature.hpp"

#include "fibersim/core/error.hpp"

namespace fibersim::sbf {

namespace {

template <int N>
QuadratureRule boost_gauss(double a, double b) {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto x = G::abscissa();
  const auto w = G::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  QuadratureRule q;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      q.nodes.push_back(c);
      q.weights.push_back(h * w[i]);
      continue;
    }
    q.nodes.push_back(c - h * x[i]);
    q.weights.push_back(h * w[i]);
    q.nodes.push_back(c + h * x[i]);
    q.weights.push_back(h * w[i]);
  }
  return q;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  switch (n) {
    case 3: return boost_gauss<3>(a, b);
    case 7: return boost_gauss<7>(a, b);
    case 10: return boost_gauss<10>(a, b);
    case 15: return boost_gauss<15>(a, b);
    case 20: return boost_gauss<20>(a, b);
    case 25: return boost_gauss<25>(a, b);
    case 30: return boost_gauss<30>(a, b);
    default: fail(ErrorCode::InvalidArgument, "unsupported Gauss rule size " + std::to_string(n));
  }
}

QuadratureRule panel_gauss3(int panels) {
  require(panels >= 1, ErrorCode::InvalidArgument, "need at least one quadrature panel");
  QuadratureRule out;
  const double h = 2.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const auto q = gauss_legendre(3, -1.0 + p * h, -1.0 + (p + 1) * h);
    out.nodes.insert(out.nodes.end(), q.nodes.begin(), q.nodes.end());
    out.weights.insert(out.weights.end(), q.weights.begin(), q.weights.end());
  }
  return out;
}

}  // namespace fibersim::sbf
