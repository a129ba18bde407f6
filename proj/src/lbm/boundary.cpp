#include "fibersim/lbm/boundary.hpp"

#include "fibersim/core/error.hpp"

namespace fibersim::lbm {

BoundaryType parse_boundary_type(const std::string& name) {
  if (name == "periodic") return BoundaryType::Periodic;
  if (name == "no-slip") return BoundaryType::NoSlip;
  if (name == "free-slip") return BoundaryType::FreeSlip;
  fail(ErrorCode::Config, "unknown boundary type '" + name + "'");
}

const char* to_string(BoundaryType type) {
  switch (type) {
    case BoundaryType::Periodic: return "periodic";
    case BoundaryType::NoSlip: return "no-slip";
    case BoundaryType::FreeSlip: return "free-slip";
  }
  return "?";
}

DomainBoundaries DomainBoundaries::all(BoundaryType type) {
  DomainBoundaries b;
  b.faces.fill(type);
  return b;
}

void DomainBoundaries::validate() const {
  for (int a = 0; a < 3; ++a) {
    const bool p0 = face(a, 0) == BoundaryType::Periodic;
    const bool p1 = face(a, 1) == BoundaryType::Periodic;
    require(p0 == p1, ErrorCode::Config, "periodic faces must come in opposite pairs");
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      for (int sa = 0; sa < 2; ++sa) {
        for (int sb = 0; sb < 2; ++sb) {
          const BoundaryType ta = face(a, sa);
          const BoundaryType tb = face(b, sb);
          const bool mixed = (ta == BoundaryType::FreeSlip && tb == BoundaryType::NoSlip) ||
                             (ta == BoundaryType::NoSlip && tb == BoundaryType::FreeSlip);
          require(!mixed, ErrorCode::Config,
                  "a free-slip face may not share an edge with a no-slip face");
        }
      }
    }
  }
}

}  // namespace fibersim::lbm
