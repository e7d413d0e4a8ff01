#include "symw/error.hpp"

namespace symw {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case ErrorCode::InvalidAxis: return "InvalidAxis";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorCode::EqualFrequencies: return "EqualFrequencies";
    case ErrorCode::SingularKernel: return "SingularKernel";
    case ErrorCode::GaugeNotVerified: return "GaugeNotVerified";
    case ErrorCode::InvalidScheme: return "InvalidScheme";
    case ErrorCode::BoundaryMassTooLarge: return "BoundaryMassTooLarge";
    case ErrorCode::NonUniformVectorPotential: return "NonUniformVectorPotential";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::UnsupportedParticleCount: return "UnsupportedParticleCount";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::RuntimeFailure: return "RuntimeFailure";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace symw
