#include "fibersim/sbf/kbar.hpp"

#include <mutex>

#include "fibersim/core/error.hpp"
#include "fibersim/sbf/legendre.hpp"
#include "fibersim/sbf/quadrature.hpp"

namespace fibersim::sbf {

namespace {

double legendre_at(int n, double x) {
  std::vector<double> p(n + 1);
  legendre_all(n, x, p.data());
  return p[n];
}

// (P_n(s') - P_n(s)) / (s' - s) is a polynomial of degree n - 1 in s'.
double signed_quotient_integral(int n, double s, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const auto q = gauss_legendre(30, lo, hi);
  const double ps = legendre_at(n, s);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    acc += q.weights[i] * (legendre_at(n, q.nodes[i]) - ps) / (q.nodes[i] - s);
  return acc;
}

}  // namespace

double kbar_apply_legendre(int n, double s) {
  require(n >= 0 && n <= kMaxKbarDegree, ErrorCode::InvalidArgument, "Legendre degree out of range");
  if (n == 0) return 0.0;
  // |s' - s| = (s' - s) sign(s' - s).
  return signed_quotient_integral(n, s, s, 1.0) - signed_quotient_integral(n, s, -1.0, s);
}

std::vector<double> kbar_eigenvalues(int n) {
  require(n >= 0 && n <= kMaxKbarDegree, ErrorCode::InvalidArgument, "Legendre degree out of range");
  static std::mutex mu;
  static std::vector<double> cache;
  std::lock_guard lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    const int k = static_cast<int>(cache.size());
    // Kbar P_k is a polynomial of degree k; project it back onto P_k.
    const auto q = gauss_legendre(30);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double pk = legendre_at(k, q.nodes[i]);
      num += q.weights[i] * kbar_apply_legendre(k, q.nodes[i]) * pk;
      den += q.weights[i] * pk * pk;
    }
    cache.push_back(num / den);
  }
  return {cache.begin(), cache.begin() + n + 1};
}

}  // namespace fibersim::sbf
