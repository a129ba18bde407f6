#pragma once

#include <string>

namespace fibersim::lbm {

class LbmSolver;

struct VtkScales {
  double dx = 1.0;        ///< cell size
  double velocity = 1.0;  ///< one lattice velocity unit
  double density = 1.0;   ///< one lattice density unit
};

/// Legacy binary STRUCTURED_POINTS file with a "density" scalar and a "velocity" vector per
/// cell centre. Throws Io on write failure.
void write_vtk(const std::string& path, const LbmSolver& solver, const VtkScales& scales = {});

}  // namespace fibersim::lbm
