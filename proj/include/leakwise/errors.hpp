#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leakwise {

enum class ErrorCode {
  InvalidArgument,
  UnstableModel,
  LagTooLarge,
  NotPsd,
  ConvergenceFailure,
  BudgetNonpositive,
  AllWeightsZero,
  DistortionExceedsVariance,
  BracketFailure,
  NotMonotone,
  NonpositiveInput,
  AllZeroSpectrum,
  OutputBudgetTooSmall,
  DegenerateFading,
  ZeroNoiseFrequency,
  MomentMismatch,
  CapUnreachable,
  SingularNoise,
  TooManyComponents,
};

std::string_view error_code_name(ErrorCode code);

/// True for failures of the numerical machinery itself (root finders,
/// factorizations); false for rejected inputs and violated preconditions.
bool is_numerical_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace leakwise
