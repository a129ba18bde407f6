#pragma once

#include <vector>

namespace fibersim::sbf {

/// The 30-point rules used below are exact up to this degree.
inline constexpr int kMaxKbarDegree = 29;

/// Eigenvalues lambda_0..lambda_n of Kbar[f](s) = int_{-1}^{1} (f(s') - f(s)) / |s' - s| ds'
/// on the Legendre polynomials, computed numerically and cached.
std::vector<double> kbar_eigenvalues(int n);

/// Kbar applied to P_n at s, by exact Gauss quadrature of the difference quotient.
double kbar_apply_legendre(int n, double s);

}  // namespace fibersim::sbf
