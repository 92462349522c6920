#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mergepath {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  DomainViolation,
  NotForwardEvaluable,
  NoResolventCapability,
  InnerLoopBudgetExceeded,
  SingularSystem,
  InfeasibleConstants,
  ConfigError,
  UnknownAlgorithm,
  StepSizeCollapse,
  MismatchedTraces,
  MissingReferencePoint,
  StepTooLarge,
  ParseError,
  IoError,
};

// Stable upper-case identifier, e.g. "DOMAIN_VIOLATION".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mergepath
