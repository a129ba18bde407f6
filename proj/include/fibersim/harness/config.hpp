#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fibersim/core/fluid.hpp"
#include "fibersim/lbm/boundary.hpp"
#include "fibersim/lbm/kernel.hpp"
#include "fibersim/lbm/solver.hpp"
#include "fibersim/sbf/solver.hpp"

namespace fibersim::harness {

inline constexpr int kSchemaVersion = 1;

enum class ExperimentKind { TranslateValidate, RotateValidate, WallSweep, TumbleLbm, TumbleSbf, CrossCompare };
enum class SolverKind { Sbf, Lbm };
enum class Orientation { Lengthwise, Sidewise };
/// Degrees of freedom integrated for lattice particles.
enum class Motion { Free, TranslationOnly, RotationOnly };

ExperimentKind parse_experiment_kind(const std::string& name);
const char* to_string(ExperimentKind kind);
SolverKind parse_solver_kind(const std::string& name);
const char* to_string(SolverKind kind);

struct LatticeSettings {
  double dx = 4.98e-6;
  double tau = 6.0;
  std::array<int, 3> cells{64, 64, 64};
  std::vector<std::array<int, 3>> sweep;  ///< wall-sweep domain sizes
  lbm::DomainBoundaries boundaries;
  lbm::Precision precision = lbm::Precision::Double;
  lbm::KernelIsa isa = lbm::KernelIsa::Auto;
  bool stabilize = false;
  Motion motion = Motion::Free;
  /// Initial particle height in cells; negative places it at the domain centre.
  double start_z = -1.0;
};

struct SbfSettings {
  sbf::SbfParams params;
  bool periodic = false;  ///< box = cells * dx when true
};

struct ExperimentConfig {
  int version = kSchemaVersion;
  std::string name;
  ExperimentKind kind = ExperimentKind::TranslateValidate;
  SolverKind solver = SolverKind::Sbf;
  FluidProperties fluid = FluidProperties::water();

  double radius = 1.992e-5;                 ///< m
  std::vector<double> inverse_slenderness;  ///< L / r
  double particle_density = 1492.0;         ///< kg/m^3
  Orientation orientation = Orientation::Lengthwise;

  std::vector<double> force_z;   ///< N per aspect ratio; empty derives buoyancy with g = 9.81
  std::vector<double> torque_x;  ///< N m per aspect ratio

  double distance_dx = 16.0;  ///< tumbling centre-to-centre distance in dx

  LatticeSettings lattice;
  SbfSettings sbf;

  long steps = 100;
  long sample_every = 1;
  double window_fraction = 0.15;

  std::string output = "out";
  long vtk_every = 0;

  /// Force on the particle of aspect-ratio entry i, +z.
  double force(std::size_t i) const;
  /// Spherocylinder length of entry i.
  double length(std::size_t i) const { return inverse_slenderness.at(i) * radius; }
  /// Periodic box of the slender-body runs, or the lattice domain extent.
  Vec3 domain_extent() const;
};

/// Throws Config on unknown keys, wrong types, unsupported versions or violated invariants.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Named trailing-window fractions.
double window_preset(const std::string& name);

}  // namespace fibersim::harness
