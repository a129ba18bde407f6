#pragma once

#include <array>
#include <string>

namespace fibersim::lbm {

enum class BoundaryType { Periodic, NoSlip, FreeSlip };

BoundaryType parse_boundary_type(const std::string& name);
const char* to_string(BoundaryType type);

/// Boundary type of each box face, ordered x-, x+, y-, y+, z-, z+.
struct DomainBoundaries {
  std::array<BoundaryType, 6> faces{BoundaryType::Periodic, BoundaryType::Periodic,
                                    BoundaryType::Periodic, BoundaryType::Periodic,
                                    BoundaryType::Periodic, BoundaryType::Periodic};

  static DomainBoundaries all(BoundaryType type);
  BoundaryType face(int axis, int side) const { return faces[2 * axis + side]; }
  bool periodic(int axis) const { return faces[2 * axis] == BoundaryType::Periodic; }
  bool fully_periodic() const { return periodic(0) && periodic(1) && periodic(2); }

  /// Throws Config when a periodic face is paired with a wall, or when a free-slip face
  /// meets a no-slip face along an edge.
  void validate() const;
};

}  // namespace fibersim::lbm
