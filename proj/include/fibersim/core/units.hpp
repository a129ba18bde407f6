#pragma once

#include <string_view>

namespace fibersim {

enum class QuantityKind {
  Length,
  Time,
  Velocity,
  Density,
  Force,
  Torque,
  KinematicViscosity,
  AngularVelocity,
};

enum class ConversionDirection { SiToLattice, LatticeToSi };

/// Throws UnknownQuantity for names outside the QuantityKind set.
QuantityKind parse_quantity_kind(std::string_view name);

/// dt = (tau - 1/2) dx^2 / (3 nu). Throws InvalidRelaxation for tau <= 1/2.
double derive_dt(double kinematic_viscosity, double dx, double tau);

/// Inverse of derive_dt.
double viscosity_from_dt(double dt, double dx, double tau);

/// -8(2 - w)/(8 - w) with w = 1/tau; places bounce-back walls half-way between nodes.
double magic_lambda_odd(double tau);

/// Conversion factors between SI and lattice units.
struct UnitScales {
  double dx = 1.0;
  double dt = 1.0;
  double rho0 = 1.0;
  double tau = 1.0;
  double lambda_odd = -1.0;

  /// Builds scales with dt derived from viscosity and the magic odd relaxation rate.
  static UnitScales from_viscosity(double kinematic_viscosity, double dx, double tau, double rho0);

  double lattice_viscosity() const { return (tau - 0.5) / 3.0; }
  /// SI value of one lattice unit of the given kind.
  double unit(QuantityKind kind) const;
};

double si_lattice_convert(double value, QuantityKind kind, const UnitScales& scales,
                          ConversionDirection direction);

inline double to_lattice(double si, QuantityKind kind, const UnitScales& s) {
  return si_lattice_convert(si, kind, s, ConversionDirection::SiToLattice);
}
inline double to_si(double lattice, QuantityKind kind, const UnitScales& s) {
  return si_lattice_convert(lattice, kind, s, ConversionDirection::LatticeToSi);
}

}  // namespace fibersim
