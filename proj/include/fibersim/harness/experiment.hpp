#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fibersim/harness/config.hpp"
#include "fibersim/harness/series.hpp"
#include "fibersim/harness/stats.hpp"

namespace fibersim::harness {

/// Result of one solver run inside an experiment (one aspect ratio or one domain size).
struct CaseReport {
  std::string label;
  SolverKind solver = SolverKind::Sbf;
  double inverse_slenderness = 0.0;
  std::array<int, 3> cells{0, 0, 0};
  std::string quantity;  ///< "uz", "wx" or "tumbling"
  std::optional<TerminalStats> stats;
  std::optional<double> reference;     ///< Tirado value with end caps
  std::optional<double> reference_nc;  ///< Tirado value without end caps
  std::optional<double> relative_error;
  std::optional<TumblingMetrics> tumbling;
  double max_momentum = 0.0;        ///< lattice units, fluid plus particles
  double max_mass_deviation = 0.0;  ///< lattice units
  std::vector<std::string> warnings;
  std::string series_file;
  TimeSeries series;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CaseReport> cases;
  std::vector<Delta> comparison;
};

struct RunOptions {
  std::filesystem::path output;  ///< empty keeps the config's directory
  std::optional<long> vtk_every;
  bool write = true;
};

/// Runs the configured protocol and, unless disabled, writes the CSV series, VTK snapshots,
/// summary.json and manifest.json. Solver errors are rethrown with the step index; a failed
/// write leaves a manifest listing the files completed so far.
ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

nlohmann::json summary_json(const ExperimentReport& report);
/// Reads summary.json and the CSV series of a finished run.
ExperimentReport read_report(const std::filesystem::path& dir);

/// Per-metric (LBM - SBF) / SBF for the last complete tumbling period of each report.
/// Throws GeometryMismatch unless radius, aspect ratio and domain extent agree.
std::vector<Delta> cross_compare(const ExperimentReport& lbm, const ExperimentReport& sbf);

}  // namespace fibersim::harness
