#include "fibersim/core/error.hpp"

namespace fibersim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidRelaxation: return "invalid-relaxation";
    case ErrorCode::AspectRatioTooSmall: return "aspect-ratio-too-small";
    case ErrorCode::UnknownQuantity: return "unknown-quantity";
    case ErrorCode::SingularEvaluation: return "singular-evaluation";
    case ErrorCode::NonPerpendicularTorque: return "non-perpendicular-torque";
    case ErrorCode::SolverFailure: return "solver-failure";
    case ErrorCode::Overlap: return "overlap";
    case ErrorCode::Compressibility: return "compressibility";
    case ErrorCode::DegenerateMapping: return "degenerate-mapping";
    case ErrorCode::TooFewSamples: return "too-few-samples";
    case ErrorCode::NoCompletePeriod: return "no-complete-period";
    case ErrorCode::GeometryMismatch: return "geometry-mismatch";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

ErrorClass error_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidRelaxation:
    case ErrorCode::AspectRatioTooSmall:
    case ErrorCode::UnknownQuantity:
    case ErrorCode::GeometryMismatch:
      return ErrorClass::Config;
    default:
      return ErrorClass::Solver;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace fibersim
