#pragma once

#include <functional>

#include <Eigen/Dense>

namespace fibersim::sbf {

using LinearMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct GmresResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double initial_residual = 0.0;
  double residual = 0.0;
  bool converged = false;
};

/// Restarted GMRES with right preconditioning. Stops once the true residual norm drops to
/// tol times the initial residual norm.
GmresResult gmres(const LinearMap& apply, const LinearMap& precondition, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& x0, double tol, int max_iter, int restart = 50);

}  // namespace fibersim::sbf
