#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "fibersim/core/error.hpp"
#include "fibersim/harness/experiment.hpp"

using namespace fibersim;
using namespace fibersim::harness;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

void print_report(const ExperimentReport& rep) {
  std::printf("experiment %s (%s)\n", to_string(rep.config.kind), rep.config.name.c_str());
  for (const CaseReport& c : rep.cases) {
    std::printf("case %s  solver=%s  1/eps=%g\n", c.label.c_str(), to_string(c.solver), c.inverse_slenderness);
    if (c.stats) {
      std::printf("  %s*  mean %.6g  fluctuation %.4g  Re %.4g  (%zu samples)\n", c.quantity.c_str(), c.stats->mean,
                  c.stats->fluctuation, c.stats->reynolds, c.stats->samples);
    }
    if (c.reference) std::printf("  reference (with caps) %.6g\n", *c.reference);
    if (c.reference_nc) std::printf("  reference (no caps)   %.6g\n", *c.reference_nc);
    if (c.relative_error) std::printf("  relative error %+.4f\n", *c.relative_error);
    if (c.tumbling) {
      std::printf("  %-3s %10s %10s %10s %10s %10s %11s %11s\n", "#", "D*[m]", "T*[s]", "U*[m/s]", "uz_min", "uz_max",
                  "ux_min", "ux_max");
      int k = 0;
      for (const auto& p : c.tumbling->periods) {
        std::printf("  %-3d %10.4g %10.4g %10.4g %10.4g %10.4g %11.4g %11.4g\n", ++k, p.distance, p.period, p.speed,
                    p.uz_min, p.uz_max, p.ux_min, p.ux_max);
      }
    }
    if (c.solver == SolverKind::Lbm)
      std::printf("  max |momentum| %.4g  max |mass deviation| %.4g (lattice units)\n", c.max_momentum,
                  c.max_mass_deviation);
    for (const auto& w : c.warnings) std::printf("  warning: %s\n", w.c_str());
  }
  for (const Delta& d : rep.comparison)
    std::printf("delta %-7s lbm %.5g  sbf %.5g  (lbm-sbf)/sbf %+.4f\n", d.metric.c_str(), d.lbm, d.sbf, d.relative);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sedimenting fiber experiments with slender-body and lattice Boltzmann solvers"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);

  std::string config_path, output;
  long vtk_every = -1;
  bool dry_run = false;
  CLI::App* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--output", output, "Output directory (overrides the config)");
  run->add_option("--vtk-every", vtk_every, "Write a VTK snapshot every K lattice steps")->check(CLI::NonNegativeNumber);
  run->add_flag("--dry-run", dry_run, "Validate the config and exit");

  std::string report_dir;
  CLI::App* report = app.add_subcommand("report", "Print the summary of a finished run");
  report->add_option("dir", report_dir, "Run directory")->required();

  std::string dir_a, dir_b, compare_out;
  CLI::App* compare = app.add_subcommand("compare", "Relative differences (LBM - SBF)/SBF of two tumbling runs");
  compare->add_option("dir_a", dir_a, "First run directory")->required();
  compare->add_option("dir_b", dir_b, "Second run directory")->required();
  compare->add_option("--output", compare_out, "Write the delta table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*run) {
      const ExperimentConfig cfg = load_config(config_path);
      if (dry_run) {
        std::printf("config ok: %s\n", to_string(cfg.kind));
        return 0;
      }
      RunOptions opt;
      if (!output.empty()) opt.output = output;
      if (vtk_every >= 0) opt.vtk_every = vtk_every;
      print_report(run_experiment(cfg, opt));
    } else if (*report) {
      print_report(read_report(report_dir));
    } else if (*compare) {
      const ExperimentReport a = read_report(dir_a);
      const ExperimentReport b = read_report(dir_b);
      const bool a_is_lbm = a.config.solver == SolverKind::Lbm;
      const auto deltas = a_is_lbm ? cross_compare(a, b) : cross_compare(b, a);
      nlohmann::json j = nlohmann::json::array();
      for (const Delta& d : deltas) {
        std::printf("%-7s lbm %.5g  sbf %.5g  (lbm-sbf)/sbf %+.4f\n", d.metric.c_str(), d.lbm, d.sbf, d.relative);
        j.push_back({{"metric", d.metric}, {"lbm", d.lbm}, {"sbf", d.sbf}, {"relative", d.relative}});
      }
      if (!compare_out.empty()) {
        std::ofstream out(compare_out);
        out << j.dump(2) << "\n";
        require(static_cast<bool>(out), ErrorCode::Io, "cannot write " + compare_out);
      }
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return error_class(e.code()) == ErrorClass::Config ? kExitConfig : kExitSolver;
  }
  return 0;
}
