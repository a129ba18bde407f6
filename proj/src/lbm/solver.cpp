#include "fibersim/lbm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fibersim/core/error.hpp"
#include "fibersim/core/geometry.hpp"

namespace fibersim::lbm {

namespace {

Vec3 direction(int q) { return Vec3(kC[q][0], kC[q][1], kC[q][2]); }

int wrap_index(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

Precision parse_precision(const std::string& name) {
  if (name == "double") return Precision::Double;
  if (name == "single" || name == "float") return Precision::Single;
  fail(ErrorCode::Config, "unknown precision '" + name + "'");
}

LbmSolver::LbmSolver(const LbmConfig& config) : config_(config) {
  for (int d : config_.dims) require(d >= 2, ErrorCode::Config, "lattice dimensions must be at least 2");
  config_.boundaries.validate();
  require(!config_.stabilize || config_.boundaries.fully_periodic(), ErrorCode::Config,
          "momentum stabilisation requires a fully periodic domain");
  require(config_.trt.lambda_e > -2.0 && config_.trt.lambda_e < 0.0 && config_.trt.lambda_o >= -2.0 &&
              config_.trt.lambda_o < 0.0,
          ErrorCode::InvalidRelaxation, "relaxation rates must lie in (-2, 0)");
  isa_ = config_.isa == KernelIsa::Auto ? detect_isa() : config_.isa;
  require(isa_ != KernelIsa::Avx2 || detect_isa() == KernelIsa::Avx2, ErrorCode::Config,
          "AVX2 kernel requested but not supported by this CPU");

  const auto [nx, ny, nz] = config_.dims;
  sy_ = nx + 2;
  sz_ = static_cast<std::ptrdiff_t>(nx + 2) * (ny + 2);
  cells_padded_ = static_cast<std::size_t>(sz_) * (nz + 2);
  for (int q = 0; q < kQ; ++q) offset_[q] = kC[q][0] + kC[q][1] * sy_ + kC[q][2] * sz_;

  flags_.assign(cells_padded_, static_cast<std::uint8_t>(CellFlag::Ghost));
  owner_.assign(cells_padded_, -1);
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) flags_[index(x, y, z)] = static_cast<std::uint8_t>(CellFlag::Fluid);
  fluid_cells_ = static_cast<std::size_t>(nx) * ny * nz;

  for (int b = 0; b < 2; ++b) {
    if (config_.precision == Precision::Single) {
      ff_[b].assign(cells_padded_ * kQ, 0.0f);
    } else {
      fd_[b].assign(cells_padded_ * kQ, 0.0);
    }
  }
  slab_sums_.assign(4 * static_cast<std::size_t>(nz), 0.0);
  build_ghost_links();
}

double LbmSolver::get(int buffer, int q, std::ptrdiff_t idx) const {
  const std::size_t k = q * cells_padded_ + idx;
  return config_.precision == Precision::Single ? static_cast<double>(ff_[buffer][k]) : fd_[buffer][k];
}

void LbmSolver::set(int buffer, int q, std::ptrdiff_t idx, double v) {
  const std::size_t k = q * cells_padded_ + idx;
  if (config_.precision == Precision::Single) {
    ff_[buffer][k] = static_cast<float>(v);
  } else {
    fd_[buffer][k] = v;
  }
}

Vec3 LbmSolver::cell_momentum(int buffer, std::ptrdiff_t idx) const {
  Vec3 j = Vec3::Zero();
  for (int q = 1; q < kQ; ++q) j += get(buffer, q, idx) * direction(q);
  return j;
}

Vec3 LbmSolver::cell_center(std::ptrdiff_t idx) const {
  const std::ptrdiff_t z = idx / sz_ - 1;
  const std::ptrdiff_t rem = idx % sz_;
  const std::ptrdiff_t y = rem / sy_ - 1;
  const std::ptrdiff_t x = rem % sy_ - 1;
  return Vec3(x + 0.5, y + 0.5, z + 0.5);
}

Vec3 LbmSolver::wrap_displacement(Vec3 d) const {
  for (int a = 0; a < 3; ++a) {
    if (config_.boundaries.periodic(a)) {
      const double n = config_.dims[a];
      d[a] -= n * std::round(d[a] / n);
    }
  }
  return d;
}

Vec3 LbmSolver::surface_velocity(const LatticeBody& body, const Vec3& x) const {
  return body.velocity + body.angular_velocity.cross(wrap_displacement(x - body.center));
}

void LbmSolver::build_ghost_links() {
  const auto& bc = config_.boundaries;
  const auto dims = config_.dims;
  ghost_links_.clear();
  for (int z = 0; z < dims[2]; ++z) {
    for (int y = 0; y < dims[1]; ++y) {
      for (int x = 0; x < dims[0]; ++x) {
        const std::array<int, 3> yc{x, y, z};
        const bool on_boundary = x == 0 || y == 0 || z == 0 || x == dims[0] - 1 || y == dims[1] - 1 ||
                                 z == dims[2] - 1;
        if (!on_boundary) continue;
        const std::ptrdiff_t yi = index(x, y, z);
        for (int q = 1; q < kQ; ++q) {
          std::array<int, 3> s{}, src{};
          std::array<int, 3> p{kC[q][0], kC[q][1], kC[q][2]};
          bool outside = false, noslip = false, freeslip = false;
          for (int a = 0; a < 3; ++a) {
            s[a] = yc[a] - kC[q][a];
            src[a] = s[a];
            if (s[a] >= 0 && s[a] < dims[a]) continue;
            outside = true;
            const BoundaryType t = bc.face(a, s[a] < 0 ? 0 : 1);
            if (t == BoundaryType::NoSlip) {
              noslip = true;
            } else if (t == BoundaryType::FreeSlip) {
              freeslip = true;
              src[a] = yc[a];
              p[a] = -p[a];
            } else {
              src[a] = wrap_index(s[a], dims[a]);
            }
          }
          if (!outside) continue;
          GhostLink link{};
          link.dst = static_cast<std::int64_t>(q * cells_padded_ + index(s[0], s[1], s[2]));
          const std::int64_t bounce = static_cast<std::int64_t>(opposite(q) * cells_padded_ + yi);
          if (noslip) {
            link.src = bounce;
            link.fallback = -1;
          } else {
            int pq = 0;
            for (int k = 0; k < kQ; ++k)
              if (kC[k][0] == p[0] && kC[k][1] == p[1] && kC[k][2] == p[2]) pq = k;
            link.src = static_cast<std::int64_t>(pq * cells_padded_ + index(src[0], src[1], src[2]));
            link.fallback = freeslip ? bounce : -1;
          }
          ghost_links_.push_back(link);
        }
      }
    }
  }
}

void LbmSolver::ghost_pass() {
  auto run = [&](auto* f) {
    const std::uint8_t* flags = flags_.data();
    const std::size_t n = cells_padded_;
    for (const GhostLink& l : ghost_links_) {
      std::int64_t src = l.src;
      if (l.fallback >= 0 && flags[src % n] != 0) src = l.fallback;
      f[l.dst] = f[src];
    }
  };
  if (config_.precision == Precision::Single) {
    run(ff_[cur_].data());
  } else {
    run(fd_[cur_].data());
  }
}

void LbmSolver::initialize(const Vec3& u) {
  const Populations eq = equilibrium(1.0, u);
  const auto [nx, ny, nz] = config_.dims;
  for (int b = 0; b < 2; ++b) {
    for (int z = 0; z < nz; ++z)
      for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
          const std::ptrdiff_t i = index(x, y, z);
          const bool fluid = flags_[i] == 0;
          for (int q = 0; q < kQ; ++q) set(b, q, i, fluid ? eq[q] - kW[q] : 0.0);
        }
  }
  post_momentum_ = momentum();
}

Populations LbmSolver::populations(int x, int y, int z) const {
  Populations f;
  const std::ptrdiff_t i = index(x, y, z);
  for (int q = 0; q < kQ; ++q) f[q] = get(cur_, q, i) + kW[q];
  return f;
}

void LbmSolver::set_populations(int x, int y, int z, const Populations& f) {
  const std::ptrdiff_t i = index(x, y, z);
  const Vec3 before = cell_momentum(cur_, i);
  for (int q = 0; q < kQ; ++q) set(cur_, q, i, f[q] - kW[q]);
  if (flags_[i] == 0) post_momentum_ += cell_momentum(cur_, i) - before;
}

double LbmSolver::density(int x, int y, int z) const {
  const std::ptrdiff_t i = index(x, y, z);
  if (flags_[i] != 0) return 1.0;
  double s = 1.0;
  for (int q = 0; q < kQ; ++q) s += get(cur_, q, i);
  return s;
}

Vec3 LbmSolver::velocity(int x, int y, int z) const {
  const std::ptrdiff_t i = index(x, y, z);
  if (flags_[i] != 0) {
    const int b = owner_[i];
    return b >= 0 ? surface_velocity(bodies_[b], cell_center(i)) : Vec3::Zero();
  }
  // Post-collision momentum carries the last correction and the full forcing step.
  return cell_momentum(cur_, i) - config_.trt.lambda_o * u_corr_ - 0.5 * config_.body_force;
}

double LbmSolver::max_speed() const {
  const auto [nx, ny, nz] = config_.dims;
  double m = 0.0;
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x)
        if (flags_[index(x, y, z)] == 0) m = std::max(m, velocity(x, y, z).norm());
  return m;
}

double LbmSolver::mass_deviation() const {
  const auto [nx, ny, nz] = config_.dims;
  double s = 0.0;
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        const std::ptrdiff_t i = index(x, y, z);
        if (flags_[i] != 0) continue;
        for (int q = 0; q < kQ; ++q) s += get(cur_, q, i);
      }
  return s;
}

Vec3 LbmSolver::momentum() const {
  const auto [nx, ny, nz] = config_.dims;
  Vec3 j = Vec3::Zero();
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        const std::ptrdiff_t i = index(x, y, z);
        if (flags_[i] == 0) j += cell_momentum(cur_, i);
      }
  return j;
}

std::vector<std::size_t> LbmSolver::voxelize(const LatticeBody& body) const {
  const Vec3 tip = body.axis.normalized() * body.half_segment;
  const Vec3 extent = tip.cwiseAbs() + Vec3::Constant(body.radius);
  std::array<int, 3> lo{}, hi{};
  for (int a = 0; a < 3; ++a) {
    lo[a] = static_cast<int>(std::floor(body.center[a] - extent[a] - 0.5));
    hi[a] = static_cast<int>(std::ceil(body.center[a] + extent[a] - 0.5));
    if (!config_.boundaries.periodic(a)) {
      lo[a] = std::max(lo[a], 0);
      hi[a] = std::min(hi[a], config_.dims[a] - 1);
    } else if (hi[a] - lo[a] + 1 > config_.dims[a]) {
      fail(ErrorCode::InvalidArgument, "body does not fit into the periodic domain");
    }
  }
  const double r2 = body.radius * body.radius;
  std::vector<std::size_t> cells;
  for (int z = lo[2]; z <= hi[2]; ++z)
    for (int y = lo[1]; y <= hi[1]; ++y)
      for (int x = lo[0]; x <= hi[0]; ++x) {
        const Vec3 d = Vec3(x + 0.5, y + 0.5, z + 0.5) - body.center;
        const double t = std::clamp(d.dot(tip) / std::max(tip.squaredNorm(), 1e-300), -1.0, 1.0);
        if ((d - t * tip).squaredNorm() > r2) continue;
        const int wx = config_.boundaries.periodic(0) ? wrap_index(x, config_.dims[0]) : x;
        const int wy = config_.boundaries.periodic(1) ? wrap_index(y, config_.dims[1]) : y;
        const int wz = config_.boundaries.periodic(2) ? wrap_index(z, config_.dims[2]) : z;
        cells.push_back(static_cast<std::size_t>(index(wx, wy, wz)));
      }
  std::sort(cells.begin(), cells.end());
  return cells;
}

void LbmSolver::map_bodies(const std::vector<LatticeBody>& bodies) {
  const std::vector<LatticeBody> previous = mapped_ ? bodies_ : bodies;
  require(!mapped_ || previous.size() == bodies.size(), ErrorCode::InvalidArgument,
          "the number of bodies may not change between mappings");
  for (const auto& b : bodies) {
    require(b.radius > 0.0 && b.half_segment >= 0.0 && b.axis.norm() > 0.0, ErrorCode::InvalidArgument,
            "invalid lattice body");
    if (b.radius < 2.0) {
      std::ostringstream msg;
      msg << "body radius " << b.radius << " dx is below 2 dx; the staircase surface is too coarse";
      if (std::find(warnings_.begin(), warnings_.end(), msg.str()) == warnings_.end())
        warnings_.push_back(msg.str());
    }
  }

  std::vector<std::vector<std::size_t>> next(bodies.size());
  std::vector<std::int32_t> claim(0);
  for (std::size_t b = 0; b < bodies.size(); ++b) next[b] = voxelize(bodies[b]);

  // Release old cells, then claim the new ones.
  std::vector<std::size_t> released;
  for (const auto& cells : cells_)
    for (std::size_t c : cells) {
      owner_[c] = -1;
      released.push_back(c);
    }
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    for (std::size_t c : next[b]) {
      require(owner_[c] < 0, ErrorCode::Overlap, "two bodies claim the same lattice cell");
      owner_[c] = static_cast<std::int32_t>(b);
    }
  }

  for (std::size_t b = 0; b < bodies.size(); ++b) {
    for (std::size_t c : next[b]) {
      if (flags_[c] != 0) continue;
      post_momentum_ -= cell_momentum(cur_, c);
      flags_[c] = static_cast<std::uint8_t>(CellFlag::Obstacle);
      --fluid_cells_;
    }
  }
  std::sort(released.begin(), released.end());
  for (std::size_t c : released) {
    if (owner_[c] >= 0 || flags_[c] == 0) continue;
    std::size_t prev_owner = 0;
    for (std::size_t b = 0; b < cells_.size(); ++b)
      if (std::binary_search(cells_[b].begin(), cells_[b].end(), c)) prev_owner = b;
    const Vec3 u = surface_velocity(previous[prev_owner], cell_center(static_cast<std::ptrdiff_t>(c)));
    const Populations eq = equilibrium(1.0, u);
    for (int q = 0; q < kQ; ++q) set(cur_, q, static_cast<std::ptrdiff_t>(c), eq[q] - kW[q]);
    flags_[c] = static_cast<std::uint8_t>(CellFlag::Fluid);
    ++fluid_cells_;
    post_momentum_ += cell_momentum(cur_, static_cast<std::ptrdiff_t>(c));
  }
  require(fluid_cells_ > 0, ErrorCode::DegenerateMapping, "no fluid cells left");

  cells_ = std::move(next);
  bodies_ = bodies;
  mapped_ = true;
}

std::vector<HydroLoad> LbmSolver::obstacle_pass() {
  std::vector<HydroLoad> loads(bodies_.size());
  const auto& dims = config_.dims;
  for (std::size_t b = 0; b < bodies_.size(); ++b) {
    const LatticeBody& body = bodies_[b];
    HydroLoad& load = loads[b];
    for (std::size_t c : cells_[b]) {
      const auto s = static_cast<std::ptrdiff_t>(c);
      const Vec3 xs = cell_center(s);
      const Vec3 lever = wrap_displacement(xs - body.center);
      const Vec3 us = body.velocity + body.angular_velocity.cross(lever);
      const std::array<int, 3> sc{static_cast<int>(xs.x()), static_cast<int>(xs.y()), static_cast<int>(xs.z())};
      for (int q = 1; q < kQ; ++q) {
        std::array<int, 3> yc{};
        bool inside = true;
        for (int a = 0; a < 3; ++a) {
          yc[a] = sc[a] + kC[q][a];
          if (yc[a] < 0 || yc[a] >= dims[a]) {
            if (!config_.boundaries.periodic(a)) inside = false;
            yc[a] = wrap_index(yc[a], dims[a]);
          }
        }
        if (!inside) continue;
        const std::ptrdiff_t yi = index(yc[0], yc[1], yc[2]);
        if (flags_[yi] != 0) continue;
        const int qb = opposite(q);
        const double out = get(cur_, qb, yi);
        const double cu = kC[q][0] * us.x() + kC[q][1] * us.y() + kC[q][2] * us.z();
        const double back = out + 6.0 * kW[q] * cu;
        set(cur_, q, s, back);
        const Vec3 df = -(out + back) * direction(q);
        load.force += df;
        load.torque += lever.cross(df);
        ++load.links;
      }
    }
    require(load.links > 0, ErrorCode::DegenerateMapping, "body has no fluid links");
  }
  return loads;
}

Vec3 LbmSolver::direct_pre_collision_momentum() const {
  const auto [nx, ny, nz] = config_.dims;
  Vec3 j = Vec3::Zero();
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        const std::ptrdiff_t i = index(x, y, z);
        if (flags_[i] != 0) continue;
        for (int q = 1; q < kQ; ++q) j += get(cur_, q, i - offset_[q]) * direction(q);
      }
  return j;
}

std::vector<HydroLoad> LbmSolver::step() {
  std::vector<HydroLoad> loads = obstacle_pass();
  ghost_pass();

  Vec3 pre = post_momentum_;
  for (const auto& l : loads) pre -= l.force;
  pre_momentum_ = pre;
  if (verify_budget_) direct_pre_momentum_ = direct_pre_collision_momentum();
  u_corr_ = config_.stabilize ? Vec3(pre / static_cast<double>(fluid_cells_)) : Vec3::Zero();

  KernelArgs args;
  const int next = 1 - cur_;
  if (config_.precision == Precision::Single) {
    args.src = ff_[cur_].data();
    args.dst = ff_[next].data();
    args.single_precision = true;
  } else {
    args.src = fd_[cur_].data();
    args.dst = fd_[next].data();
  }
  args.stride_q = cells_padded_;
  args.flags = flags_.data();
  args.offset = offset_;
  args.nx = config_.dims[0];
  args.ny = config_.dims[1];
  args.nz = config_.dims[2];
  args.sy = sy_;
  args.sz = sz_;
  args.lambda_e = config_.trt.lambda_e;
  args.lambda_o = config_.trt.lambda_o;
  args.u_corr = {u_corr_.x(), u_corr_.y(), u_corr_.z()};
  args.body_force = {config_.body_force.x(), config_.body_force.y(), config_.body_force.z()};
  args.slab_sums = slab_sums_.data();
  stream_collide(args, isa_);

  Vec3 p = Vec3::Zero();
  for (int z = 0; z < config_.dims[2]; ++z) p += Vec3(slab_sums_[4 * z + 1], slab_sums_[4 * z + 2], slab_sums_[4 * z + 3]);
  post_momentum_ = p;
  cur_ = next;
  ++steps_;
  return loads;
}

}  // namespace fibersim::lbm
