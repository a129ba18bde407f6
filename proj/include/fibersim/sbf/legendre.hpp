#pragma once

#include <vector>

namespace fibersim::sbf {

/// P_0(x) .. P_n(x) by the three-term recurrence, written to out[0..n].
inline void legendre_all(int n, double x, double* out) {
  out[0] = 1.0;
  if (n >= 1) out[1] = x;
  for (int k = 2; k <= n; ++k) out[k] = ((2 * k - 1) * x * out[k - 1] - (k - 1) * out[k - 2]) / k;
}

inline std::vector<double> legendre_all(int n, double x) {
  std::vector<double> p(n + 1);
  legendre_all(n, x, p.data());
  return p;
}

}  // namespace fibersim::sbf
