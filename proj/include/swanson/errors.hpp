#ifndef SWANSON_ERRORS_HPP
#define SWANSON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace swanson {

enum class ErrorCode {
  EqualParameters,
  SumExceedsOne,
  ProductBoundViolated,
  ConstraintViolated,
  UnknownParameter,
  NoRealRoot,
  NoBracketedRoot,
  ResidualNotConstant,
  NotConstant,
  DegenerateRecurrence,
  NormalizabilityViolated,
  OutOfDomain,
  BeyondBoundStates,
  GaugeOverflow,
  WindowNotConverged,
  NonFiniteValue,
  NotSymmetric,
  ConvergenceFailure,
  SizeGuard,
  InvalidConfig,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::EqualParameters:         return "EqualParameters";
    case ErrorCode::SumExceedsOne:           return "SumExceedsOne";
    case ErrorCode::ProductBoundViolated:    return "ProductBoundViolated";
    case ErrorCode::ConstraintViolated:      return "ConstraintViolated";
    case ErrorCode::UnknownParameter:        return "UnknownParameter";
    case ErrorCode::NoRealRoot:              return "NoRealRoot";
    case ErrorCode::NoBracketedRoot:         return "NoBracketedRoot";
    case ErrorCode::ResidualNotConstant:     return "ResidualNotConstant";
    case ErrorCode::NotConstant:             return "NotConstant";
    case ErrorCode::DegenerateRecurrence:    return "DegenerateRecurrence";
    case ErrorCode::NormalizabilityViolated: return "NormalizabilityViolated";
    case ErrorCode::OutOfDomain:             return "OutOfDomain";
    case ErrorCode::BeyondBoundStates:       return "BeyondBoundStates";
    case ErrorCode::GaugeOverflow:           return "GaugeOverflow";
    case ErrorCode::WindowNotConverged:      return "WindowNotConverged";
    case ErrorCode::NonFiniteValue:          return "NonFiniteValue";
    case ErrorCode::NotSymmetric:            return "NotSymmetric";
    case ErrorCode::ConvergenceFailure:      return "ConvergenceFailure";
    case ErrorCode::SizeGuard:               return "SizeGuard";
    case ErrorCode::InvalidConfig:           return "InvalidConfig";
  }
  return "Unknown";
}

class SwansonError : public std::runtime_error {
 public:
  SwansonError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw SwansonError(code, what);
}

}  // namespace swanson

#endif  // SWANSON_ERRORS_HPP
