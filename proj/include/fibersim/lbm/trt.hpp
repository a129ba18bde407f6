#pragma once

namespace fibersim::lbm {

/// Two-relaxation-time rates. lambda_e sets the viscosity; lambda_o the wall placement.
struct TrtParams {
  double tau = 1.0;
  double lambda_e = -1.0;
  double lambda_o = -1.0;

  /// lambda_e = -1/tau with the magic lambda_o = -8(2 - w)/(8 - w).
  static TrtParams magic(double tau);
  /// Explicit odd rate; used to reproduce plain single-rate relaxation.
  static TrtParams with_odd(double tau, double lambda_o);

  double omega() const { return 1.0 / tau; }
  double viscosity() const { return (tau - 0.5) / 3.0; }
};

}  // namespace fibersim::lbm
