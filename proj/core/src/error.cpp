#include "mergepath/error.hpp"

#include <cmath>

#include "mergepath/types.hpp"

namespace mergepath {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::DomainViolation: return "DOMAIN_VIOLATION";
    case ErrorCode::NotForwardEvaluable: return "NOT_FORWARD_EVALUABLE";
    case ErrorCode::NoResolventCapability: return "NO_RESOLVENT_CAPABILITY";
    case ErrorCode::InnerLoopBudgetExceeded: return "INNER_LOOP_BUDGET_EXCEEDED";
    case ErrorCode::SingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::InfeasibleConstants: return "INFEASIBLE_CONSTANTS";
    case ErrorCode::ConfigError: return "CONFIG_ERROR";
    case ErrorCode::UnknownAlgorithm: return "UNKNOWN_ALGORITHM";
    case ErrorCode::StepSizeCollapse: return "STEP_SIZE_COLLAPSE";
    case ErrorCode::MismatchedTraces: return "MISMATCHED_TRACES";
    case ErrorCode::MissingReferencePoint: return "MISSING_REFERENCE_POINT";
    case ErrorCode::StepTooLarge: return "STEP_TOO_LARGE";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

void require_point(const Vec& z, const char* what) {
  if (z.size() == 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is empty");
  if (!z.allFinite()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
}

void require_dimension(const Vec& z, Index d, const char* what) {
  if (z.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has dimension " +
                                                  std::to_string(z.size()) + ", expected " +
                                                  std::to_string(d));
  }
}

}  // namespace mergepath
