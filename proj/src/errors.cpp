#include "leakwise/errors.hpp"

namespace leakwise {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnstableModel: return "UnstableModel";
    case ErrorCode::LagTooLarge: return "LagTooLarge";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::BudgetNonpositive: return "BudgetNonpositive";
    case ErrorCode::AllWeightsZero: return "AllWeightsZero";
    case ErrorCode::DistortionExceedsVariance: return "DistortionExceedsVariance";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NonpositiveInput: return "NonpositiveInput";
    case ErrorCode::AllZeroSpectrum: return "AllZeroSpectrum";
    case ErrorCode::OutputBudgetTooSmall: return "OutputBudgetTooSmall";
    case ErrorCode::DegenerateFading: return "DegenerateFading";
    case ErrorCode::ZeroNoiseFrequency: return "ZeroNoiseFrequency";
    case ErrorCode::MomentMismatch: return "MomentMismatch";
    case ErrorCode::CapUnreachable: return "CapUnreachable";
    case ErrorCode::SingularNoise: return "SingularNoise";
    case ErrorCode::TooManyComponents: return "TooManyComponents";
  }
  return "UnknownError";
}

bool is_numerical_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::BracketFailure:
    case ErrorCode::NotMonotone:
    case ErrorCode::SingularNoise:
      return true;
    default:
      return false;
  }
}

}  // namespace leakwise
