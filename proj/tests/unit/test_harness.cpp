#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "fibersim/analytic/friction.hpp"
#include "fibersim/core/error.hpp"
#include "fibersim/core/geometry.hpp"
#include "fibersim/harness/config.hpp"
#include "fibersim/harness/experiment.hpp"
#include "fibersim/harness/stats.hpp"

using namespace fibersim;
using namespace fibersim::harness;
using nlohmann::json;

namespace {

json base_config() {
  return json::parse(R"({
    "version": 1,
    "experiment": "translate-validate",
    "solver": "sbf",
    "particle": {"radius": 4e-5, "inverse_slenderness": [8]},
    "loads": {"force_z": [5.128e-10]},
    "domain": {"dx": 1e-5, "cells": [16, 16, 16]},
    "schedule": {"steps": 12, "sample_every": 1, "window": 1.0}
  })");
}

ErrorCode code_of(const json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;  // sentinel: no error
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("fibersim_harness_" + name);
  std::filesystem::remove_all(p);
  return p;
}

TumblingTrace synthetic(double amplitude, double period, double dt, int n, double phase = 0.0) {
  TumblingTrace tr;
  const double w = 2 * kPi / period;
  for (int i = 0; i < n; ++i) {
    const double t = i * dt;
    tr.t.push_back(t);
    tr.x.push_back(amplitude * std::sin(w * t + phase));
    tr.ux.push_back(amplitude * w * std::cos(w * t + phase));
    tr.z.push_back(1e-3 * t);
    tr.uz.push_back(1e-3);
  }
  return tr;
}

}  // namespace

TEST_CASE("config: defaults, presets and round trip") {
  const ExperimentConfig c = parse_config(base_config());
  CHECK(c.kind == ExperimentKind::TranslateValidate);
  CHECK(c.solver == SolverKind::Sbf);
  CHECK(c.window_fraction == 1.0);
  CHECK(c.lattice.motion == Motion::TranslationOnly);
  CHECK(c.force(0) == 5.128e-10);

  const ExperimentConfig back = parse_config(to_json(c));
  CHECK(to_json(back) == to_json(c));

  CHECK(window_preset("translation") == 0.15);
  CHECK(window_preset("rotation") == 0.50);
  CHECK(window_preset("wall-sweep") == 0.34);

  json j = base_config();
  j["schedule"].erase("window");
  j["experiment"] = "rotate-validate";
  j["loads"]["torque_x"] = {24.62e-15};
  CHECK(parse_config(j).window_fraction == 0.50);

  // Buoyancy from the densities when no force table is given.
  json b = base_config();
  b["loads"].erase("force_z");
  b["particle"]["density"] = 1195.0;
  const ExperimentConfig cb = parse_config(b);
  const Spherocylinder p = Spherocylinder::from_aspect(4e-5, 8, 1195.0);
  CHECK(cb.force(0) == doctest::Approx(195.0 * 9.81 * p.volume()).epsilon(1e-12));
}

TEST_CASE("config: unknown keys and violated invariants are config errors") {
  json j = base_config();
  j["schedule"]["sampel_every"] = 2;
  CHECK(code_of(j) == ErrorCode::Config);

  j = base_config();
  j["extra"] = 1;
  CHECK(code_of(j) == ErrorCode::Config);

  j = base_config();
  j["version"] = 2;
  CHECK(code_of(j) == ErrorCode::Config);

  j = base_config();
  j["schedule"]["sample_every"] = 0;
  CHECK(code_of(j) == ErrorCode::Config);

  for (double w : {0.0, 1.5, -0.1}) {
    j = base_config();
    j["schedule"]["window"] = w;
    CHECK(code_of(j) == ErrorCode::Config);
  }

  j = base_config();
  j["domain"]["cells"] = {16, 0, 16};
  CHECK(code_of(j) == ErrorCode::Config);

  j = base_config();
  j["domain"]["boundaries"] = {"periodic", "no-slip", "periodic", "periodic", "periodic", "periodic"};
  CHECK(code_of(j) == ErrorCode::Config);

  j = base_config();
  j["experiment"] = "tumble-lbm";
  j["solver"] = "sbf";
  CHECK(code_of(j) == ErrorCode::Config);

  j = base_config();
  j["particle"]["radius"] = "wide";
  CHECK(code_of(j) == ErrorCode::Config);

  j = base_config();
  j["experiment"] = "rotate-validate";
  CHECK(code_of(j) == ErrorCode::Config);  // torque table missing

  j = base_config();
  j["lattice"] = {{"stabilize", true}};
  j["domain"]["boundaries"] = "free-slip";
  CHECK(code_of(j) == ErrorCode::Config);
}

TEST_CASE("terminal stats") {
  const ReynoldsScale scale{8e-5, 1.0, FluidProperties::water()};
  const std::vector<double> flat(40, 3e-4);
  const TerminalStats s = terminal_stats(flat, 0.5, scale);
  CHECK(s.mean == doctest::Approx(3e-4).epsilon(1e-15));
  CHECK(s.fluctuation == 0.0);
  CHECK(s.reynolds == doctest::Approx(3e-4 * 8e-5 / 1e-6).epsilon(1e-15));
  CHECK(s.samples == 20);

  std::vector<double> v(20, 1.0);
  v[18] = 0.99;
  v[19] = 1.01;
  const TerminalStats d = terminal_stats(v, 1.0, scale);
  CHECK(d.mean == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.fluctuation == doctest::Approx(0.02).epsilon(1e-12));

  try {
    terminal_stats(std::vector<double>(60, 1.0), 0.15, scale);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewSamples);
  }
}

TEST_CASE("terminal stats ignore any prepended transient") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  const ReynoldsScale scale{1e-4, 1.0, FluidProperties::water()};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> tail(20 + trial);
    for (double& x : tail) x = 1.0 + 0.01 * u(rng);
    const TerminalStats ref = terminal_stats(tail, 1.0, scale);
    std::vector<double> longer(static_cast<std::size_t>(3 * trial + 1));
    for (double& x : longer) x = u(rng);
    longer.insert(longer.end(), tail.begin(), tail.end());
    const double f = static_cast<double>(tail.size()) / static_cast<double>(longer.size());
    const TerminalStats got = terminal_stats(longer, f, scale);
    CHECK(got.samples == ref.samples);
    CHECK(got.mean == ref.mean);
    CHECK(got.fluctuation == ref.fluctuation);
  }
}

TEST_CASE("tumbling metrics of a synthetic oscillation") {
  const double T = 4.5, dt = 0.003;
  // x = -A cos(wt): the trace starts at minimal separation.
  const TumblingTrace tr = synthetic(1e-4, T, dt, 4000, -kPi / 2);
  const TumblingMetrics m = tumbling_metrics(tr);
  REQUIRE(m.periods.size() == 2);
  for (const auto& p : m.periods) {
    CHECK(std::abs(p.period - T) <= dt);
    CHECK(p.distance == doctest::Approx(1e-3 * p.period).epsilon(1e-9));
    CHECK(p.speed == doctest::Approx(1e-3).epsilon(1e-9));
    CHECK(p.ux_max == doctest::Approx(-p.ux_min).epsilon(1e-3));
  }
  CHECK(m.orbit.size() == tr.t.size());

  // Arbitrary phase: only periods after the first event are full.
  for (double phase : {0.3, 1.7, 2.9, 4.4}) {
    const TumblingMetrics q = tumbling_metrics(synthetic(1e-4, T, dt, 6000, phase), false);
    REQUIRE(!q.periods.empty());
    for (const auto& p : q.periods) CHECK(std::abs(p.period - T) <= dt);
  }
}

TEST_CASE("tumbling periods partition the series") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> per(0.5, 3.0), ph(0, 2 * kPi);
  for (int trial = 0; trial < 40; ++trial) {
    const TumblingTrace tr = synthetic(1e-4, per(rng), 0.01, 2000, ph(rng));
    const TumblingMetrics m = tumbling_metrics(tr, true);
    CHECK(m.periods.front().t_start == tr.t.front());
    for (std::size_t k = 1; k < m.periods.size(); ++k) CHECK(m.periods[k].t_start == m.periods[k - 1].t_end);
    CHECK(m.periods.back().t_end <= tr.t.back());
  }
}

TEST_CASE("tumbling metrics without a complete period") {
  const TumblingTrace tr = synthetic(1e-4, 4.5, 0.003, 500, -kPi / 2);
  try {
    tumbling_metrics(tr);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCompletePeriod);
    CHECK(std::string(e.what()).find("monotone") != std::string::npos);
  }
}

TEST_CASE("period comparison") {
  TumblingPeriod sbf;
  sbf.distance = 6.40e-3;
  sbf.period = 4.50;
  sbf.speed = 1.42e-3;
  sbf.uz_min = 1.23e-3;
  sbf.uz_max = 2.00e-3;
  sbf.ux_min = -180e-6;
  sbf.ux_max = 180e-6;
  for (const Delta& d : compare_periods(sbf, sbf)) CHECK(d.relative == 0.0);

  TumblingPeriod lbm;
  lbm.distance = 5.72e-3;
  lbm.period = 4.35;
  lbm.speed = 1.31e-3;
  lbm.uz_min = 1.11e-3;
  lbm.uz_max = 1.86e-3;
  lbm.ux_min = -152e-6;
  lbm.ux_max = 164e-6;
  const auto d = compare_periods(lbm, sbf);
  CHECK(d[2].metric == "U*");
  CHECK(d[2].relative == doctest::Approx(-0.0775).epsilon(1e-2));
  for (const Delta& x : d) CHECK(x.relative < 0.0);
}

TEST_CASE("translate-validate with the slender-body solver matches the closed form") {
  json j = base_config();
  j["output"] = {{"directory", scratch("translate").string()}};
  const ExperimentReport rep = run_experiment(parse_config(j));
  REQUIRE(rep.cases.size() == 1);
  const CaseReport& c = rep.cases[0];
  const auto closed =
      analytic::sbf_single_fiber(Vec3(0, 0, 5.128e-10), Vec3::Zero(), Vec3::UnitZ(), 1.0 / 8, 3.2e-4, 1e-3);
  REQUIRE(c.stats);
  CHECK(c.stats->mean == doctest::Approx(closed.velocity.z()).epsilon(1e-12));
  CHECK(c.stats->mean == doctest::Approx(4.029e-4).epsilon(1e-3));
  CHECK(*c.reference == doctest::Approx(361e-6).epsilon(5e-3));
  CHECK(*c.relative_error == doctest::Approx(closed.velocity.z() / *c.reference - 1).epsilon(1e-12));
  CHECK(c.series.size() == 13);
}

TEST_CASE("rotate-validate attaches the tabulated reference") {
  json j = base_config();
  j["experiment"] = "rotate-validate";
  j["particle"]["inverse_slenderness"] = {4};
  j["loads"] = {{"torque_x", {12.26e-15}}};
  j["output"] = {{"directory", scratch("rotate").string()}};
  const ExperimentReport rep = run_experiment(parse_config(j));
  const CaseReport& c = rep.cases[0];
  CHECK(*c.reference == doctest::Approx(1.36).epsilon(5e-3));
  CHECK(*c.reference_nc == doctest::Approx(4.69).epsilon(5e-3));
  CHECK(c.stats->mean == doctest::Approx(2.533).epsilon(1e-3));
}

TEST_CASE("zero load gives an all-zero series") {
  for (const char* solver : {"sbf", "lbm"}) {
    json j = base_config();
    j["solver"] = solver;
    j["loads"]["force_z"] = {0.0};
    j["particle"]["radius"] = 2e-5;
    j["particle"]["inverse_slenderness"] = {4};
    j["domain"]["boundaries"] = "periodic";
    j["output"] = {{"directory", scratch(std::string("zero_") + solver).string()}};
    const ExperimentReport rep = run_experiment(parse_config(j));
    for (const Sample& s : rep.cases[0].series) {
      CHECK(s.u.norm() == 0.0);
      CHECK(s.w.norm() == 0.0);
    }
  }
}

TEST_CASE("run directory round trip and bitwise reproducibility") {
  json j = base_config();
  j["solver"] = "lbm";
  j["domain"]["boundaries"] = "periodic";
  j["domain"]["cells"] = {24, 24, 32};
  j["particle"]["inverse_slenderness"] = {4};
  j["particle"]["radius"] = 2e-5;
  j["schedule"] = {{"steps", 20}, {"sample_every", 2}, {"window", 1.0}};
  const auto a = scratch("repro_a"), b = scratch("repro_b");
  j["output"] = {{"directory", a.string()}};
  const ExperimentReport ra = run_experiment(parse_config(j), {.output = {}, .vtk_every = 10, .write = true});
  const ExperimentReport rb = run_experiment(parse_config(j), {.output = b, .vtk_every = {}, .write = true});

  const auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(a / "series_ie4.csv") == slurp(b / "series_ie4.csv"));
  CHECK(std::filesystem::exists(a / "ie4_00000010.vtk"));
  CHECK(std::filesystem::exists(a / "manifest.json"));

  const ExperimentReport back = read_report(a);
  REQUIRE(back.cases.size() == 1);
  CHECK(back.cases[0].series.size() == ra.cases[0].series.size());
  for (std::size_t i = 0; i < back.cases[0].series.size(); ++i) {
    CHECK(back.cases[0].series[i].u == ra.cases[0].series[i].u);
    CHECK(back.cases[0].series[i].x == ra.cases[0].series[i].x);
  }
  CHECK(back.cases[0].stats->mean == ra.cases[0].stats->mean);
  CHECK(to_json(back.config) == to_json(ra.config));
  CHECK(rb.cases[0].series.back().u.z() > 0.0);
}

TEST_CASE("solver errors carry the step index") {
  json j = base_config();
  j["solver"] = "lbm";
  j["domain"]["boundaries"] = "periodic";
  j["domain"]["cells"] = {12, 12, 12};
  j["particle"]["radius"] = 2e-5;
  j["particle"]["inverse_slenderness"] = {4};
  j["loads"]["force_z"] = {1e-3};  // drives the lattice Mach number out of range
  j["schedule"] = {{"steps", 400}, {"sample_every", 1}, {"window", 1.0}};
  j["output"] = {{"directory", scratch("err").string()}};
  try {
    run_experiment(parse_config(j));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("step ") != std::string::npos);
    CHECK(error_class(e.code()) == ErrorClass::Solver);
  }
}

TEST_CASE("unwritable output leaves a partial manifest") {
  json j = base_config();
  const auto dir = scratch("blocked");
  std::filesystem::create_directories(dir);
  std::filesystem::create_directory(dir / "series_ie8.csv");  // a directory where the CSV should go
  j["output"] = {{"directory", dir.string()}};
  try {
    run_experiment(parse_config(j));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
  std::ifstream in(dir / "manifest.json");
  const json m = json::parse(in);
  CHECK(m.at("complete") == false);
}

TEST_CASE("cross compare checks the geometry") {
  ExperimentReport lbm, sbf;
  lbm.config = parse_config(base_config());
  lbm.config.solver = SolverKind::Lbm;
  sbf.config = lbm.config;
  CaseReport cl, cs;
  cl.solver = SolverKind::Lbm;
  cs.solver = SolverKind::Sbf;
  cl.inverse_slenderness = cs.inverse_slenderness = 8;
  TumblingMetrics m;
  m.periods.push_back({0, 4.5, 6.4e-3, 4.5, 1.42e-3, 1.23e-3, 2e-3, -1.8e-4, 1.8e-4, 0, 1e-4});
  cl.tumbling = cs.tumbling = m;
  lbm.cases = {cl};
  sbf.cases = {cs};
  for (const Delta& d : cross_compare(lbm, sbf)) CHECK(d.relative == 0.0);

  sbf.config.radius *= 1.01;
  try {
    cross_compare(lbm, sbf);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GeometryMismatch);
  }
}
