#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symw {

enum class ErrorCode {
  MemoryBudgetExceeded,
  InvalidAxis,
  InvalidGrid,
  IndexOutOfRange,
  GridMismatch,
  NonFinite,
  NotNormalized,
  NonPositiveFrequency,
  EqualFrequencies,
  SingularKernel,
  GaugeNotVerified,
  InvalidScheme,
  BoundaryMassTooLarge,
  NonUniformVectorPotential,
  SolverDiverged,
  EmptyMask,
  UnsupportedParticleCount,
  EmptyTrajectory,
  TooLarge,
  ConfigInvalid,
  RuntimeFailure,
  IoError,
  UnknownScenario,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  // what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace symw
