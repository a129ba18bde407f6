#include "fibersim/sbf/solver.hpp"

#include <cmath>
#include <string>

#include "fibersim/core/error.hpp"
#include "fibersim/core/geometry.hpp"
#include "fibersim/sbf/gmres.hpp"
#include "fibersim/sbf/greens.hpp"
#include "fibersim/sbf/kbar.hpp"
#include "fibersim/sbf/legendre.hpp"
#include "fibersim/sbf/quadrature.hpp"

namespace fibersim::sbf {

double Fiber::geometry_parameter() const {
  return -std::log(slenderness * slenderness * std::exp(1.0));
}

namespace {

struct PairDistance {
  double distance = 1e300;
  int first = -1;
  int second = -1;
};

PairDistance closest_pair(const FiberSystem& sys, const PeriodicStokeslet* periodic) {
  PairDistance best;
  const int m = static_cast<int>(sys.fibers.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const Fiber& fa = sys.fibers[a];
      const Fiber& fb = sys.fibers[b];
      Vec3 shift = Vec3::Zero();
      if (periodic) {
        const Vec3 d = fb.center - fa.center;
        shift = periodic->minimum_image(d) - d;
      }
      const Vec3 qa = fb.center + shift;
      const double dist = segment_distance(fa.center - fa.half_length * fa.tangent,
                                           fa.center + fa.half_length * fa.tangent,
                                           qa - fb.half_length * fb.tangent,
                                           qa + fb.half_length * fb.tangent);
      if (dist < best.distance) best = {dist, a, b};
    }
  }
  return best;
}

// min over (s_a, s_b) of |x_a(s_a) - x_b(s_b)| - r_a(s_a) - r_b(s_b) with the ellipsoidal
// profile r(s) = r sqrt(1 - s^2/l^2): a coarse grid followed by two zoomed grids.
double pair_surface_gap(const Fiber& fa, const Fiber& fb, const Vec3& shift) {
  constexpr int kGrid = 32;
  const auto gap = [&](double sa, double sb) {
    const Vec3 pa = fa.center + sa * fa.tangent;
    const Vec3 pb = fb.center + shift + sb * fb.tangent;
    const double ra = fa.radius() * std::sqrt(std::max(0.0, 1.0 - sa * sa / (fa.half_length * fa.half_length)));
    const double rb = fb.radius() * std::sqrt(std::max(0.0, 1.0 - sb * sb / (fb.half_length * fb.half_length)));
    return (pa - pb).norm() - ra - rb;
  };
  double lo_a = -fa.half_length, hi_a = fa.half_length;
  double lo_b = -fb.half_length, hi_b = fb.half_length;
  double best = 1e300, best_a = 0.0, best_b = 0.0;
  for (int level = 0; level < 3; ++level) {
    const double ha = (hi_a - lo_a) / kGrid, hb = (hi_b - lo_b) / kGrid;
    for (int i = 0; i <= kGrid; ++i) {
      for (int j = 0; j <= kGrid; ++j) {
        const double sa = lo_a + i * ha, sb = lo_b + j * hb;
        const double g = gap(sa, sb);
        if (g < best) best = g, best_a = sa, best_b = sb;
      }
    }
    lo_a = std::max(-fa.half_length, best_a - 2 * ha), hi_a = std::min(fa.half_length, best_a + 2 * ha);
    lo_b = std::max(-fb.half_length, best_b - 2 * hb), hi_b = std::min(fb.half_length, best_b + 2 * hb);
  }
  return best;
}

// Inner integrals int G(R(sigma_i, sigma')) P_k(sigma') dsigma' for every ordered fiber pair and
// every outer node sigma_i.
struct InteractionTables {
  int fibers = 0;
  int order = 0;
  QuadratureRule rule;
  std::vector<std::vector<double>> legendre;  // [node][k]
  std::vector<Mat3> theta;                    // [((m * M + l) * nodes + i) * (N + 1) + k]
  std::vector<char> active;                   // [m * M + l]

  int nodes() const { return static_cast<int>(rule.nodes.size()); }
  const Mat3& at(int m, int l, int i, int k) const {
    return theta[((static_cast<std::size_t>(m) * fibers + l) * nodes() + i) * (order + 1) + k];
  }
};

}  // namespace

SbfSolver::SbfSolver(SbfParams params, const std::optional<Vec3>& periodic_box)
    : params_(params), box_(periodic_box) {
  require(params_.legendre_order >= 1 && params_.legendre_order <= kMaxKbarDegree,
          ErrorCode::InvalidArgument, "Legendre order must lie in [1, 29]");
  require(params_.panels >= 1, ErrorCode::InvalidArgument, "need at least one quadrature panel");
  require(params_.gmres_tol > 0.0 && params_.gmres_tol <= 1e-2, ErrorCode::InvalidArgument,
          "GMRES tolerance must lie in (0, 1e-2]");
  require(params_.gmres_max_iter >= 1, ErrorCode::InvalidArgument, "GMRES needs iterations");
  require(params_.dt > 0.0, ErrorCode::InvalidArgument, "time step must be positive");
  if (box_) {
    const double h = params_.grid_spacing > 0.0 ? params_.grid_spacing : box_->minCoeff() / 64.0;
    periodic_ = std::make_unique<PeriodicStokeslet>(*box_, h);
  }
}

Mat3 SbfSolver::green(const Vec3& r, double source_radius, bool same_fiber) const {
  if (!periodic_) return greens_free(r, source_radius, same_fiber);
  if (same_fiber) return periodic_->self_regular(r);
  return (*periodic_)(r) + 0.5 * source_radius * source_radius * doublet(periodic_->minimum_image(r));
}

namespace {

InteractionTables build_tables(const SbfSolver& solver, const FiberSystem& sys, bool periodic) {
  const auto& params = solver.params();
  InteractionTables tab;
  tab.fibers = static_cast<int>(sys.fibers.size());
  tab.order = params.legendre_order;
  tab.rule = panel_gauss3(params.panels);
  const int nodes = tab.nodes();
  const int kk = tab.order + 1;
  for (double x : tab.rule.nodes) tab.legendre.push_back(legendre_all(tab.order, x));
  const int mm = tab.fibers;
  tab.theta.assign(static_cast<std::size_t>(mm) * mm * nodes * kk, Mat3::Zero());
  tab.active.assign(static_cast<std::size_t>(mm) * mm, 0);
  for (int m = 0; m < mm; ++m)
    for (int l = 0; l < mm; ++l) tab.active[m * mm + l] = (l != m || periodic) ? 1 : 0;

  const int tasks = mm * mm * nodes;
#pragma omp parallel for schedule(dynamic)
  for (int task = 0; task < tasks; ++task) {
    const int i = task % nodes;
    const int l = (task / nodes) % mm;
    const int m = task / (nodes * mm);
    if (!tab.active[m * mm + l]) continue;
    const Fiber& tgt = sys.fibers[m];
    const Fiber& src = sys.fibers[l];
    const Vec3 x = tgt.center + tgt.half_length * tab.rule.nodes[i] * tgt.tangent;
    std::vector<double> p(kk);
    auto integrand = [&](double sp, std::vector<double>& out) {
      const Vec3 r = x - (src.center + src.half_length * sp * src.tangent);
      const Mat3 g = solver.green(r, src.radius(), l == m);
      legendre_all(tab.order, sp, p.data());
      for (int k = 0; k < kk; ++k)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) out[k * 9 + a * 3 + b] = g(a, b) * p[k];
    };
    const auto v = adaptive_gk15(integrand, -1.0, 1.0, 9 * kk, params.inner_tol);
    for (int k = 0; k < kk; ++k) {
      Mat3& dst = tab.theta[((static_cast<std::size_t>(m) * mm + l) * nodes + i) * kk + k];
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) dst(a, b) = v[k * 9 + a * 3 + b];
    }
  }
  return tab;
}

// Projections p[m][n] = int P_n(sigma) V_m(sigma) dsigma for n = 0..N with V built from the
// constant parts (when include_constant) and the coefficients in z.
std::vector<std::vector<Vec3>> project(const InteractionTables& tab, const FiberSystem& sys,
                                       const Eigen::VectorXd* z, bool include_constant) {
  const int mm = tab.fibers, nn = tab.order, nodes = tab.nodes();
  std::vector<std::vector<Vec3>> proj(mm, std::vector<Vec3>(nn + 1, Vec3::Zero()));
  for (int m = 0; m < mm; ++m) {
    for (int i = 0; i < nodes; ++i) {
      Vec3 v = Vec3::Zero();
      for (int l = 0; l < mm; ++l) {
        if (!tab.active[m * mm + l]) continue;
        if (include_constant) v += tab.at(m, l, i, 0) * (0.5 * sys.fibers[l].force);
        if (z) {
          for (int k = 1; k <= nn; ++k) {
            const std::size_t off = (static_cast<std::size_t>(l) * nn + (k - 1)) * 3;
            v += tab.at(m, l, i, k) * Vec3((*z)(off), (*z)(off + 1), (*z)(off + 2));
          }
        }
      }
      const double w = tab.rule.weights[i];
      for (int n = 0; n <= nn; ++n) proj[m][n] += (w * tab.legendre[i][n]) * v;
    }
  }
  return proj;
}

Mat3 local_block(const Fiber& f, int n, const std::vector<double>& lambda) {
  const Mat3 tt = outer(f.tangent, f.tangent);
  const Mat3 id = Mat3::Identity();
  const double d = f.geometry_parameter();
  if (n == 1) return (id - tt) + 2.0 * (d - 2.0) * tt;
  return d * (id + tt) + 2.0 * (id - tt) + lambda[n] * (id + tt);
}

Vec3 coupling(const Fiber& f, int n, const Vec3& pn) {
  if (n == 1) return 1.5 * f.half_length * f.tangent * f.tangent.dot(pn);
  return 0.5 * f.half_length * (2 * n + 1) * pn;
}

}  // namespace

LegendreForce SbfSolver::solve(const FiberSystem& sys) const {
  require(sys.periodic_box.has_value() == box_.has_value() &&
              (!box_ || (*sys.periodic_box - *box_).norm() == 0.0),
          ErrorCode::GeometryMismatch, "system domain does not match the solver's domain");
  require(sys.viscosity > 0.0, ErrorCode::InvalidArgument, "viscosity must be positive");
  for (const Fiber& f : sys.fibers) {
    require(std::abs(f.tangent.norm() - 1.0) < 1e-12, ErrorCode::InvalidArgument,
            "fiber tangents must be unit vectors");
    require(f.slenderness > 0.0 && f.slenderness < 0.5 && f.half_length > 0.0,
            ErrorCode::InvalidArgument, "fiber geometry out of range");
    require(std::abs(f.torque.dot(f.tangent)) <= 1e-9 * f.torque.norm(),
            ErrorCode::NonPerpendicularTorque, "torque must be perpendicular to the fiber axis");
    if (box_)
      require(f.length() < 0.5 * box_->minCoeff(), ErrorCode::InvalidArgument,
              "fibers must be shorter than half the periodic box");
  }

  const int mm = static_cast<int>(sys.fibers.size());
  const int nn = params_.legendre_order;
  const auto lambda = kbar_eigenvalues(nn);
  LegendreForce out;
  out.half_force.resize(mm);
  for (int m = 0; m < mm; ++m) out.half_force[m] = 0.5 * sys.fibers[m].force;
  const PairDistance close = closest_pair(sys, periodic_.get());
  out.min_distance = close.distance;
  if (mm > 1) {
    double two_r = 0.0;
    for (const Fiber& f : sys.fibers) two_r = std::max(two_r, 2.0 * f.radius());
    out.near_contact = close.distance < two_r;
  }

  const InteractionTables tab = build_tables(*this, sys, periodic_ != nullptr);
  const auto pf = project(tab, sys, nullptr, true);

  const int size = 3 * mm * nn;
  std::vector<Mat3> blocks(static_cast<std::size_t>(mm) * nn), inverses(blocks.size());
  Eigen::VectorXd rhs(size);
  for (int m = 0; m < mm; ++m) {
    const Fiber& f = sys.fibers[m];
    for (int n = 1; n <= nn; ++n) {
      const std::size_t bi = static_cast<std::size_t>(m) * nn + (n - 1);
      blocks[bi] = local_block(f, n, lambda);
      inverses[bi] = blocks[bi].inverse();
      Vec3 r = -coupling(f, n, pf[m][n]);
      if (n == 1) r += (1.5 / f.half_length) * f.torque.cross(f.tangent);
      rhs.segment<3>(3 * bi) = r;
    }
  }

  const LinearMap apply = [&](const Eigen::VectorXd& z) {
    const auto pz = project(tab, sys, &z, false);
    Eigen::VectorXd y(size);
    for (int m = 0; m < mm; ++m)
      for (int n = 1; n <= nn; ++n) {
        const std::size_t bi = static_cast<std::size_t>(m) * nn + (n - 1);
        const Vec3 a = z.segment<3>(3 * bi);
        y.segment<3>(3 * bi) = blocks[bi] * a + coupling(sys.fibers[m], n, pz[m][n]);
      }
    return y;
  };
  const LinearMap precondition = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd y(size);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi)
      y.segment<3>(3 * bi) = inverses[bi] * Vec3(z.segment<3>(3 * bi));
    return y;
  };

  Eigen::VectorXd z0 = precondition(rhs);
  GmresResult res;
  if (mm > 1 || periodic_) {
    res = gmres(apply, precondition, rhs, z0, params_.gmres_tol, params_.gmres_max_iter);
    if (!res.converged) {
      throw Error(ErrorCode::SolverFailure,
                  "GMRES did not converge: residual " + std::to_string(res.residual) +
                      " after " + std::to_string(res.iterations) + " iterations");
    }
  } else {
    // Without interaction the operator is block diagonal.
    res.x = z0;
    res.converged = true;
  }
  out.iterations = res.iterations;
  out.residual = res.residual;
  out.initial_residual = res.initial_residual;

  out.coeffs.assign(mm, std::vector<Vec3>(nn));
  for (int m = 0; m < mm; ++m)
    for (int n = 1; n <= nn; ++n)
      out.coeffs[m][n - 1] = res.x.segment<3>(3 * (static_cast<std::size_t>(m) * nn + (n - 1)));

  const auto pz = project(tab, sys, &res.x, true);
  out.v_integral.resize(mm);
  out.v_moment.resize(mm);
  for (int m = 0; m < mm; ++m) {
    out.v_integral[m] = pz[m][0];
    out.v_moment[m] = pz[m][1];
  }
  return out;
}

std::vector<FiberRates> SbfSolver::velocities(const FiberSystem& sys,
                                              const LegendreForce& force) const {
  const int mm = static_cast<int>(sys.fibers.size());
  require(static_cast<int>(force.v_integral.size()) == mm, ErrorCode::InvalidArgument,
          "force expansion does not match the system");
  std::vector<FiberRates> out(mm);
  const double mu = sys.viscosity;
  for (int m = 0; m < mm; ++m) {
    const Fiber& f = sys.fibers[m];
    const Mat3 tt = outer(f.tangent, f.tangent);
    const Mat3 id = Mat3::Identity();
    const double d = f.geometry_parameter();
    const double l = f.half_length;
    const Mat3 lam = d * (id + tt) + 2.0 * (id - tt);
    out[m].velocity = lam * f.force / (16.0 * kPi * mu * l) + force.v_integral[m] / (16.0 * kPi * mu);
    out[m].tangent_rate = 3.0 * d * f.torque.cross(f.tangent) / (16.0 * kPi * mu * l * l * l) +
                          3.0 / (16.0 * kPi * mu * l) * (id - tt) * force.v_moment[m];
  }
  return out;
}

Vec3 SbfSolver::interaction_velocity(const FiberSystem& sys, const LegendreForce& force,
                                     int target, double s) const {
  const int mm = static_cast<int>(sys.fibers.size());
  require(target >= 0 && target < mm, ErrorCode::InvalidArgument, "target fiber out of range");
  const Fiber& tgt = sys.fibers[target];
  require(std::abs(s) <= tgt.half_length, ErrorCode::InvalidArgument, "arclength out of range");
  const Vec3 x = tgt.center + s * tgt.tangent;
  const int nn = params_.legendre_order;
  Vec3 v = Vec3::Zero();
  std::vector<double> p(nn + 1);
  for (int l = 0; l < mm; ++l) {
    if (l == target && !periodic_) continue;
    const Fiber& src = sys.fibers[l];
    auto integrand = [&](double sp, std::vector<double>& out) {
      const Vec3 r = x - (src.center + src.half_length * sp * src.tangent);
      legendre_all(nn, sp, p.data());
      Vec3 f = force.half_force[l];
      for (int k = 1; k <= nn; ++k) f += force.coeffs[l][k - 1] * p[k];
      const Vec3 g = green(r, src.radius(), l == target) * f;
      out[0] = g.x();
      out[1] = g.y();
      out[2] = g.z();
    };
    const auto r = adaptive_gk15(integrand, -1.0, 1.0, 3, params_.inner_tol);
    v += Vec3(r[0], r[1], r[2]);
  }
  return v;
}

double SbfSolver::min_distance(const FiberSystem& system, const PeriodicStokeslet* periodic) {
  return closest_pair(system, periodic).distance;
}

std::vector<FiberRates> SbfSolver::step(FiberSystem& sys) const {
  const double dt = params_.dt;
  const auto v0 = velocities(sys, solve(sys));
  FiberSystem mid = sys;
  for (std::size_t m = 0; m < sys.fibers.size(); ++m) {
    mid.fibers[m].center += 0.5 * dt * v0[m].velocity;
    mid.fibers[m].tangent = (sys.fibers[m].tangent + 0.5 * dt * v0[m].tangent_rate).normalized();
  }
  const auto v1 = velocities(mid, solve(mid));
  for (std::size_t m = 0; m < sys.fibers.size(); ++m) {
    sys.fibers[m].center += dt * v1[m].velocity;
    sys.fibers[m].tangent = (sys.fibers[m].tangent + dt * v1[m].tangent_rate).normalized();
  }
  const int m = static_cast<int>(sys.fibers.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const double gap = surface_gap(sys, periodic_.get(), a, b);
      if (gap <= 0.0) {
        throw Error(ErrorCode::Overlap, "fibers " + std::to_string(a) + " and " + std::to_string(b) +
                                            " overlap (surface gap " + std::to_string(gap) + " m)");
      }
    }
  }
  return v1;
}

double SbfSolver::surface_gap(const FiberSystem& system, const PeriodicStokeslet* periodic, int a,
                              int b) {
  const Fiber& fa = system.fibers.at(a);
  const Fiber& fb = system.fibers.at(b);
  Vec3 shift = Vec3::Zero();
  if (periodic) {
    const Vec3 d = fb.center - fa.center;
    shift = periodic->minimum_image(d) - d;
  }
  return pair_surface_gap(fa, fb, shift);
}

}  // namespace fibersim::sbf
