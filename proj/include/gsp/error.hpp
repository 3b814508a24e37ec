#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsp {

enum class ErrorCode {
  IsolatedVertex,
  ParseError,
  SelfLoop,
  EmptyFile,
  ConvergenceFailure,
  DimensionMismatch,
  IndexOutOfRange,
  DegenerateSigma,
  SamplingConditionViolated,
  FrameNotInvertible,
  MissingCoordinates,
  SolverFailure,
  TooLarge,
  ConfigError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DegenerateSigma: return "DegenerateSigma";
    case ErrorCode::SamplingConditionViolated: return "SamplingConditionViolated";
    case ErrorCode::FrameNotInvertible: return "FrameNotInvertible";
    case ErrorCode::MissingCoordinates: return "MissingCoordinates";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// True for failures of a numerical routine rather than of its inputs.
inline bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::DegenerateSigma:
    case ErrorCode::SamplingConditionViolated:
    case ErrorCode::FrameNotInvertible:
    case ErrorCode::SolverFailure:
      return true;
    default:
      return false;
  }
}

}  // namespace gsp
