#pragma once

#include <stdexcept>
#include <string>

namespace fibersim {

enum class ErrorCode {
  InvalidArgument,
  InvalidRelaxation,
  AspectRatioTooSmall,
  UnknownQuantity,
  SingularEvaluation,
  NonPerpendicularTorque,
  SolverFailure,
  Overlap,
  Compressibility,
  DegenerateMapping,
  TooFewSamples,
  NoCompletePeriod,
  GeometryMismatch,
  Config,
  Io,
};

/// Which process exit class an error belongs to.
enum class ErrorClass { Config, Solver };

const char* to_string(ErrorCode code);
ErrorClass error_class(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace fibersim
