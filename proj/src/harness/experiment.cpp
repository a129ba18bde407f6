#include "fibersim/harness/experiment.hpp"

#include <cmath>
#include <fstream>

#include "fibersim/analytic/friction.hpp"
#include "fibersim/core/error.hpp"
#include "fibersim/harness/coupling.hpp"
#include "fibersim/lbm/vtk.hpp"

namespace fibersim::harness {

using nlohmann::json;

namespace {

// Files written so far; a failed write leaves an incomplete manifest behind.
class Outputs {
 public:
  Outputs(std::filesystem::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {
    if (!enabled_) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    require(!ec, ErrorCode::Io, "cannot create output directory " + dir_.string());
  }

  bool enabled() const { return enabled_; }

  template <class Fn>
  void write(const std::string& name, Fn&& fn) {
    if (!enabled_) return;
    try {
      fn(dir_ / name);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Io) manifest(false);
      throw;
    }
    files_.push_back(name);
  }

  void text(const std::string& name, const std::string& content) {
    write(name, [&](const std::filesystem::path& p) {
      std::ofstream out(p);
      out << content;
      require(static_cast<bool>(out), ErrorCode::Io, "write failed for " + p.string());
    });
  }

  void manifest(bool complete) const {
    if (!enabled_) return;
    std::ofstream out(dir_ / "manifest.json");
    out << json{{"complete", complete}, {"files", files_}}.dump(2) << "\n";
  }

 private:
  std::filesystem::path dir_;
  bool enabled_;
  std::vector<std::string> files_;
};

template <class Fn>
void with_step(long step, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    std::string msg = e.what();
    const std::string prefix = std::string(to_string(e.code())) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
    throw Error(e.code(), "step " + std::to_string(step) + ": " + msg);
  }
}

std::string cells_label(const std::array<int, 3>& c) {
  return std::to_string(c[0]) + "x" + std::to_string(c[1]) + "x" + std::to_string(c[2]);
}

std::string ie_label(double ie) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "ie%g", ie);
  return buf;
}

Vec3 initial_tangent(const ExperimentConfig& c) {
  return c.orientation == Orientation::Lengthwise ? Vec3::UnitZ() : Vec3::UnitX();
}

// Per-body initial placement and loads shared by both solvers.
struct Placement {
  std::vector<Vec3> centers;
  Vec3 tangent = Vec3::UnitZ();
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
};

Placement placement(const ExperimentConfig& c, std::size_t i, const Vec3& extent, bool tumbling) {
  Placement p;
  const Vec3 mid = 0.5 * extent;
  if (tumbling) {
    const double half = 0.5 * c.distance_dx * c.lattice.dx;
    p.centers = {mid - Vec3(half, 0, 0), mid + Vec3(half, 0, 0)};
    p.tangent = Vec3::UnitZ();
  } else {
    Vec3 x = mid;
    if (c.lattice.start_z >= 0) x.z() = c.lattice.start_z * c.lattice.dx;
    p.centers = {x};
    p.tangent = initial_tangent(c);
  }
  if (c.kind == ExperimentKind::RotateValidate)
    p.torque = Vec3(c.torque_x.at(i), 0, 0);
  else
    p.force = Vec3(0, 0, c.force(i));
  return p;
}

CaseReport run_sbf(const ExperimentConfig& c, std::size_t i, bool tumbling, long steps, Outputs&) {
  CaseReport r;
  r.solver = SolverKind::Sbf;
  r.inverse_slenderness = c.inverse_slenderness.at(i);
  sbf::FiberSystem sys;
  sys.viscosity = c.fluid.dynamic_viscosity();
  const Vec3 extent = c.domain_extent();
  if (c.sbf.periodic) {
    sys.periodic_box = extent;
    r.cells = c.lattice.cells;
  }
  const Placement pl = placement(c, i, c.sbf.periodic ? extent : Vec3::Zero(), tumbling);
  for (const Vec3& x : pl.centers) {
    sbf::Fiber f;
    f.center = x;
    f.tangent = pl.tangent;
    f.half_length = 0.5 * c.length(i);
    f.slenderness = 1.0 / r.inverse_slenderness;
    f.force = pl.force;
    f.torque = pl.torque;
    sys.fibers.push_back(f);
  }
  const sbf::SbfSolver solver(c.sbf.params, sys.periodic_box);
  const auto record = [&](double t, const std::vector<sbf::FiberRates>& rates) {
    for (std::size_t m = 0; m < sys.fibers.size(); ++m) {
      const auto& f = sys.fibers[m];
      r.series.push_back({t, static_cast<int>(m), f.center, rates[m].velocity,
                          rates[m].angular_velocity(f.tangent)});
    }
  };
  std::vector<sbf::FiberRates> rates;
  with_step(0, [&] { rates = solver.velocities(sys, solver.solve(sys)); });
  record(0.0, rates);
  for (long n = 1; n <= steps; ++n) {
    with_step(n, [&] { rates = solver.step(sys); });
    if (n % c.sample_every == 0) record(static_cast<double>(n) * c.sbf.params.dt, rates);
  }
  return r;
}

CaseReport run_lbm(const ExperimentConfig& c, std::size_t i, const std::array<int, 3>& cells, bool tumbling,
                   long steps, Outputs& out, const std::string& label) {
  CaseReport r;
  r.label = label;
  r.solver = SolverKind::Lbm;
  r.inverse_slenderness = c.inverse_slenderness.at(i);
  r.cells = cells;
  const Vec3 extent = Vec3(cells[0], cells[1], cells[2]) * c.lattice.dx;
  const Placement pl = placement(c, i, extent, tumbling);
  std::vector<ParticleInit> particles;
  for (const Vec3& x : pl.centers) {
    ParticleInit p{Spherocylinder::from_aspect(c.radius, r.inverse_slenderness, c.particle_density), {}, pl.force,
                   pl.torque};
    p.state.position = x;
    p.state.orientation = RigidState::orientation_from_tangent(pl.tangent);
    particles.push_back(p);
  }
  std::optional<LbmCoupling> sim;
  with_step(0, [&] { sim.emplace(c.lattice, cells, c.fluid, particles); });
  const UnitScales& s = sim->scales();
  const lbm::VtkScales vtk{s.dx, s.dx / s.dt, s.rho0};
  const long vtk_every = c.vtk_every;

  const auto record = [&] {
    const auto& b = sim->bodies();
    for (std::size_t m = 0; m < b.size(); ++m)
      r.series.push_back({sim->time(), static_cast<int>(m), b[m].state.position, b[m].state.velocity,
                          b[m].state.angular_velocity});
    r.max_momentum = std::max(r.max_momentum, sim->total_momentum().norm());
    r.max_mass_deviation = std::max(r.max_mass_deviation, std::abs(sim->fluid().mass_deviation()));
  };
  const auto snapshot = [&](long n) {
    if (vtk_every <= 0 || n % vtk_every != 0) return;
    char name[96];
    std::snprintf(name, sizeof name, "%s_%08ld.vtk", label.c_str(), n);
    out.write(name, [&](const std::filesystem::path& p) { lbm::write_vtk(p.string(), sim->fluid(), vtk); });
  };
  record();
  snapshot(0);
  for (long n = 1; n <= steps; ++n) {
    with_step(n, [&] { sim->step(); });
    if (n % c.sample_every == 0) record();
    snapshot(n);
  }
  r.warnings = sim->fluid().warnings();
  return r;
}

void attach_single_stats(const ExperimentConfig& c, std::size_t i, CaseReport& r) {
  const double L = c.length(i);
  const double mu = c.fluid.dynamic_viscosity();
  const auto wc = analytic::tirado_friction(L, c.radius, mu);
  const auto nc = analytic::tirado_friction(L - 2 * c.radius, c.radius, mu);
  std::vector<double> values;
  ReynoldsScale scale{2 * c.radius, 1.0, c.fluid};
  if (c.kind == ExperimentKind::RotateValidate) {
    r.quantity = "wx";
    for (const Sample& s : r.series) values.push_back(s.w.x());
    scale.speed_factor = 0.5 * L;
    r.reference = analytic::terminal_velocity(c.torque_x.at(i), wc, analytic::MotionMode::Rotation);
    r.reference_nc = analytic::terminal_velocity(c.torque_x.at(i), nc, analytic::MotionMode::Rotation);
  } else {
    r.quantity = "uz";
    for (const Sample& s : r.series) values.push_back(s.u.z());
    const auto mode = c.orientation == Orientation::Lengthwise ? analytic::MotionMode::Parallel
                                                               : analytic::MotionMode::Perpendicular;
    r.reference = analytic::terminal_velocity(c.force(i), wc, mode);
    r.reference_nc = analytic::terminal_velocity(c.force(i), nc, mode);
  }
  try {
    r.stats = terminal_stats(values, c.window_fraction, scale);
    r.relative_error = (r.stats->mean - *r.reference) / *r.reference;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooFewSamples) throw;
    r.warnings.push_back(e.what());
  }
}

void attach_tumbling(CaseReport& r) {
  r.quantity = "tumbling";
  try {
    r.tumbling = tumbling_metrics(tumbling_trace(r.series));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoCompletePeriod) throw;
    r.warnings.push_back(e.what());
  }
}

json stats_json(const TerminalStats& s) {
  return {{"mean", s.mean}, {"fluctuation", s.fluctuation}, {"reynolds", s.reynolds}, {"samples", s.samples}};
}

json period_json(const TumblingPeriod& p) {
  return {{"t_start", p.t_start}, {"t_end", p.t_end},   {"D", p.distance},    {"T", p.period},
          {"U", p.speed},         {"uz_min", p.uz_min}, {"uz_max", p.uz_max}, {"ux_min", p.ux_min},
          {"ux_max", p.ux_max},   {"x_min", p.x_min},   {"x_max", p.x_max}};
}

TumblingPeriod period_from_json(const json& j) {
  TumblingPeriod p;
  p.t_start = j.at("t_start");
  p.t_end = j.at("t_end");
  p.distance = j.at("D");
  p.period = j.at("T");
  p.speed = j.at("U");
  p.uz_min = j.at("uz_min");
  p.uz_max = j.at("uz_max");
  p.ux_min = j.at("ux_min");
  p.ux_max = j.at("ux_max");
  p.x_min = j.at("x_min");
  p.x_max = j.at("x_max");
  return p;
}

void finish_case(CaseReport& r, const std::string& label, Outputs& out) {
  r.label = label;
  r.series_file = "series_" + label + ".csv";
  out.write(r.series_file, [&](const std::filesystem::path& p) { write_csv(p, r.series); });
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& c, const RunOptions& opt) {
  ExperimentConfig cfg = c;
  if (!opt.output.empty()) cfg.output = opt.output.string();
  if (opt.vtk_every) cfg.vtk_every = *opt.vtk_every;
  Outputs out(cfg.output, opt.write);

  ExperimentReport rep;
  rep.config = cfg;
  const auto lbm_case = [&](std::size_t i, const std::array<int, 3>& cells, bool tumbling, long steps,
                            const std::string& label) { return run_lbm(cfg, i, cells, tumbling, steps, out, label); };

  switch (cfg.kind) {
    case ExperimentKind::TranslateValidate:
    case ExperimentKind::RotateValidate:
      for (std::size_t i = 0; i < cfg.inverse_slenderness.size(); ++i) {
        const std::string label = ie_label(cfg.inverse_slenderness[i]);
        CaseReport r = cfg.solver == SolverKind::Sbf ? run_sbf(cfg, i, false, cfg.steps, out)
                                                     : lbm_case(i, cfg.lattice.cells, false, cfg.steps, label);
        attach_single_stats(cfg, i, r);
        finish_case(r, label, out);
        rep.cases.push_back(std::move(r));
      }
      break;
    case ExperimentKind::WallSweep:
      for (const auto& cells : cfg.lattice.sweep) {
        const std::string label = ie_label(cfg.inverse_slenderness[0]) + "_" + cells_label(cells);
        CaseReport r = lbm_case(0, cells, false, cfg.steps, label);
        attach_single_stats(cfg, 0, r);
        finish_case(r, label, out);
        rep.cases.push_back(std::move(r));
      }
      break;
    case ExperimentKind::TumbleSbf:
    case ExperimentKind::TumbleLbm: {
      CaseReport r = cfg.kind == ExperimentKind::TumbleSbf
                         ? run_sbf(cfg, 0, true, cfg.steps, out)
                         : lbm_case(0, cfg.lattice.cells, true, cfg.steps, "tumble");
      attach_tumbling(r);
      finish_case(r, "tumble", out);
      rep.cases.push_back(std::move(r));
      break;
    }
    case ExperimentKind::CrossCompare: {
      CaseReport l = lbm_case(0, cfg.lattice.cells, true, cfg.steps, "lbm");
      attach_tumbling(l);
      finish_case(l, "lbm", out);
      const double horizon = l.series.empty() ? 0.0 : l.series.back().t;
      const long sbf_steps = static_cast<long>(std::ceil(horizon / cfg.sbf.params.dt - 1e-9));
      ExperimentConfig sc = cfg;
      sc.sbf.periodic = cfg.lattice.boundaries.fully_periodic();
      sc.sample_every = 1;
      CaseReport s = run_sbf(sc, 0, true, sbf_steps, out);
      attach_tumbling(s);
      finish_case(s, "sbf", out);
      if (l.tumbling && s.tumbling) rep.comparison = compare_periods(l.tumbling->last(), s.tumbling->last());
      rep.cases.push_back(std::move(l));
      rep.cases.push_back(std::move(s));
      break;
    }
  }

  out.text("summary.json", summary_json(rep).dump(2) + "\n");
  out.manifest(true);
  return rep;
}

json summary_json(const ExperimentReport& rep) {
  json cases = json::array();
  for (const CaseReport& r : rep.cases) {
    json j{{"label", r.label},
           {"solver", to_string(r.solver)},
           {"inverse_slenderness", r.inverse_slenderness},
           {"cells", r.cells},
           {"quantity", r.quantity},
           {"max_momentum", r.max_momentum},
           {"max_mass_deviation", r.max_mass_deviation},
           {"warnings", r.warnings},
           {"series_file", r.series_file}};
    if (r.stats) j["terminal"] = stats_json(*r.stats);
    if (r.reference) j["reference_wc"] = *r.reference;
    if (r.reference_nc) j["reference_nc"] = *r.reference_nc;
    if (r.relative_error) j["relative_error"] = *r.relative_error;
    if (r.tumbling) {
      json periods = json::array();
      for (const auto& p : r.tumbling->periods) periods.push_back(period_json(p));
      j["tumbling"] = {{"periods", periods}};
    }
    cases.push_back(j);
  }
  json deltas = json::array();
  for (const Delta& d : rep.comparison)
    deltas.push_back({{"metric", d.metric}, {"lbm", d.lbm}, {"sbf", d.sbf}, {"relative", d.relative}});
  return {{"config", to_json(rep.config)}, {"cases", cases}, {"comparison", deltas}};
}

ExperimentReport read_report(const std::filesystem::path& dir) {
  std::ifstream in(dir / "summary.json");
  require(static_cast<bool>(in), ErrorCode::Io, "cannot read " + (dir / "summary.json").string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Io, (dir / "summary.json").string() + ": " + e.what());
  }
  ExperimentReport rep;
  try {
    rep.config = parse_config(j.at("config"));
    for (const json& cj : j.at("cases")) {
      CaseReport r;
      r.label = cj.at("label");
      r.solver = parse_solver_kind(cj.at("solver"));
      r.inverse_slenderness = cj.at("inverse_slenderness");
      r.cells = cj.at("cells");
      r.quantity = cj.at("quantity");
      r.max_momentum = cj.at("max_momentum");
      r.max_mass_deviation = cj.at("max_mass_deviation");
      r.warnings = cj.at("warnings").get<std::vector<std::string>>();
      r.series_file = cj.at("series_file");
      if (cj.contains("terminal")) {
        const json& t = cj["terminal"];
        r.stats = TerminalStats{t.at("mean"), t.at("fluctuation"), t.at("reynolds"), t.at("samples")};
      }
      if (cj.contains("reference_wc")) r.reference = cj["reference_wc"].get<double>();
      if (cj.contains("reference_nc")) r.reference_nc = cj["reference_nc"].get<double>();
      if (cj.contains("relative_error")) r.relative_error = cj["relative_error"].get<double>();
      if (cj.contains("tumbling")) {
        TumblingMetrics m;
        for (const json& p : cj["tumbling"].at("periods")) m.periods.push_back(period_from_json(p));
        r.tumbling = m;
      }
      if (!r.series_file.empty()) r.series = read_csv(dir / r.series_file);
      if (r.tumbling)
        for (const auto& pt : tumbling_metrics(tumbling_trace(r.series)).orbit) r.tumbling->orbit.push_back(pt);
      rep.cases.push_back(std::move(r));
    }
    for (const json& d : j.at("comparison"))
      rep.comparison.push_back({d.at("metric"), d.at("lbm"), d.at("sbf"), d.at("relative")});
  } catch (const json::exception& e) {
    fail(ErrorCode::Io, (dir / "summary.json").string() + ": malformed summary (" + e.what() + ")");
  }
  return rep;
}

namespace {

const CaseReport& tumbling_case(const ExperimentReport& rep, SolverKind solver) {
  for (const CaseReport& r : rep.cases)
    if (r.solver == solver && r.tumbling) return r;
  fail(ErrorCode::GeometryMismatch,
       std::string("report holds no ") + to_string(solver) + " case with tumbling metrics");
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::vector<Delta> cross_compare(const ExperimentReport& lbm, const ExperimentReport& sbf) {
  const CaseReport& l = tumbling_case(lbm, SolverKind::Lbm);
  const CaseReport& s = tumbling_case(sbf, SolverKind::Sbf);
  const ExperimentConfig& a = lbm.config;
  const ExperimentConfig& b = sbf.config;
  const Vec3 ea = a.domain_extent(), eb = b.domain_extent();
  const bool match = same(a.radius, b.radius) && same(l.inverse_slenderness, s.inverse_slenderness) &&
                     same(ea.x(), eb.x()) && same(ea.y(), eb.y()) && same(ea.z(), eb.z());
  require(match, ErrorCode::GeometryMismatch,
          "reports differ in particle radius, aspect ratio or domain extent");
  return compare_periods(l.tumbling->last(), s.tumbling->last());
}

}  // namespace fibersim::harness
