#include "fibersim/sbf/gmres.hpp"

#include <cmath>
#include <vector>

namespace fibersim::sbf {

GmresResult gmres(const LinearMap& apply, const LinearMap& precondition, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& x0, double tol, int max_iter, int restart) {
  GmresResult out;
  out.x = x0;
  Eigen::VectorXd r = b - apply(out.x);
  out.initial_residual = r.norm();
  out.residual = out.initial_residual;
  if (out.initial_residual == 0.0) {
    out.converged = true;
    return out;
  }
  const double target = tol * out.initial_residual;
  const int n = static_cast<int>(b.size());
  restart = std::max(1, std::min(restart, n));

  while (out.iterations < max_iter) {
    const double beta = r.norm();
    std::vector<Eigen::VectorXd> v{r / beta};
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(restart + 1, restart);
    Eigen::VectorXd cs = Eigen::VectorXd::Zero(restart), sn = Eigen::VectorXd::Zero(restart);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(restart + 1);
    g(0) = beta;
    int j = 0;
    for (; j < restart && out.iterations < max_iter; ++j) {
      ++out.iterations;
      Eigen::VectorXd w = apply(precondition(v[j]));
      for (int i = 0; i <= j; ++i) {
        h(i, j) = w.dot(v[i]);
        w -= h(i, j) * v[i];
      }
      h(j + 1, j) = w.norm();
      for (int i = 0; i < j; ++i) {
        const double t = cs(i) * h(i, j) + sn(i) * h(i + 1, j);
        h(i + 1, j) = -sn(i) * h(i, j) + cs(i) * h(i + 1, j);
        h(i, j) = t;
      }
      const double denom = std::hypot(h(j, j), h(j + 1, j));
      cs(j) = h(j, j) / denom;
      sn(j) = h(j + 1, j) / denom;
      h(j, j) = denom;
      h(j + 1, j) = 0.0;
      g(j + 1) = -sn(j) * g(j);
      g(j) = cs(j) * g(j);
      const bool breakdown = w.norm() <= 1e-300;
      if (!breakdown) v.push_back(w / w.norm());
      if (std::abs(g(j + 1)) <= target || breakdown) {
        ++j;
        break;
      }
    }
    const Eigen::VectorXd y =
        h.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    Eigen::VectorXd update = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < j; ++i) update += y(i) * v[i];
    out.x += precondition(update);
    r = b - apply(out.x);
    out.residual = r.norm();
    if (out.residual <= target) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace fibersim::sbf
