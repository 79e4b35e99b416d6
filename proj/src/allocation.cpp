#include "leakwise/allocation.hpp"

#include "leakwise/errors.hpp"
#include "leakwise/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace leakwise {

namespace {

constexpr int kMaxBisectionIterations = 200;
constexpr double kResidualTolerance = 1e-10;
constexpr double kBracketCeiling = 1e300;

double budget_total(std::span<const double> powers, BudgetMode mode) {
  return mode == BudgetMode::Mean ? pairwise_mean(powers) : pairwise_sum(powers);
}

void require_positive_budget(double budget) {
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw_error(ErrorCode::BudgetNonpositive, "budget must be positive, got " +
                                                  std::to_string(budget));
  }
}

}  // namespace

double obfuscating_noise(double zeta, double weight) {
  if (weight <= 0.0 || zeta <= 0.0) return 0.0;
  const double ratio = zeta / weight;
  if (!std::isfinite(ratio)) {
    // zeta/weight overflowed; N -> sqrt(zeta * weight) / 2 in that limit.
    return 0.5 * std::sqrt(zeta) * std::sqrt(weight);
  }
  return zeta / (2.0 * (1.0 + std::sqrt(1.0 + ratio)));
}

double solve_water_level(const std::function<double(double)>& constraint_fn, double target) {
  const double tol = kResidualTolerance * std::max(1.0, std::abs(target));

  double lo = 0.0;
  double f_lo = constraint_fn(lo);
  if (f_lo > target) {
    if (f_lo <= target + tol) return 0.0;
    throw_error(ErrorCode::BracketFailure,
                "constraint at zeta=0 is " + std::to_string(f_lo) + ", above target " +
                    std::to_string(target));
  }

  double hi = 1.0;
  double f_hi = constraint_fn(hi);
  while (f_hi < target) {
    if (f_hi < f_lo - tol) {
      throw_error(ErrorCode::NotMonotone, "constraint decreased from " + std::to_string(f_lo) +
                                              " to " + std::to_string(f_hi) +
                                              " while expanding the bracket");
    }
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    if (hi > kBracketCeiling) {
      throw_error(ErrorCode::BracketFailure,
                  "target " + std::to_string(target) + " unreachable below zeta=" +
                      std::to_string(kBracketCeiling));
    }
    f_hi = constraint_fn(hi);
  }

  for (int i = 0; i < kMaxBisectionIterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket exhausted at double precision
    const double f_mid = constraint_fn(mid);
    if (f_mid < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Of the two bracket ends, keep the one with the smaller residual.
  const double zeta = std::abs(constraint_fn(hi) - target) < std::abs(constraint_fn(lo) - target)
                          ? hi
                          : lo;
  const double residual = std::abs(constraint_fn(zeta) - target);
  if (residual > tol) {
    throw_error(ErrorCode::BracketFailure, "bisection stalled with residual " +
                                               std::to_string(residual) + " above tolerance " +
                                               std::to_string(tol));
  }
  return zeta;
}

Allocation obfuscating_allocation(std::span<const double> weights, double budget,
                                  BudgetMode mode) {
  require_positive_budget(budget);
  double max_weight = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw_error(ErrorCode::InvalidArgument, "weights must be finite and nonnegative");
    }
    max_weight = std::max(max_weight, w);
  }
  if (max_weight <= 0.0) {
    throw_error(ErrorCode::AllWeightsZero, "no positive weight to allocate noise against");
  }
  // Components at spectral nulls get no noise and leak nothing; dropping
  // them keeps the profile away from the 0/0 limit.
  const double zero_threshold = 1e-12 * max_weight;

  std::vector<double> powers(weights.size());
  auto fill_powers = [&](double zeta) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      powers[i] = weights[i] < zero_threshold ? 0.0 : obfuscating_noise(zeta, weights[i]);
    }
  };
  const double zeta = solve_water_level(
      [&](double z) {
        fill_powers(z);
        return budget_total(powers, mode);
      },
      budget);

  fill_powers(zeta);
  Allocation result;
  result.powers = std::move(powers);
  result.water_level = zeta;
  result.budget = budget;
  result.residual = std::abs(budget_total(result.powers, mode) - budget);
  return result;
}

Allocation water_filling(std::span<const double> noise_spectrum, double budget, BudgetMode mode) {
  require_positive_budget(budget);
  for (double s : noise_spectrum) {
    if (s < 0.0 || !std::isfinite(s)) {
      throw_error(ErrorCode::InvalidArgument, "noise spectrum must be finite and nonnegative");
    }
  }
  if (noise_spectrum.empty()) {
    throw_error(ErrorCode::InvalidArgument, "noise spectrum is empty");
  }

  std::vector<double> powers(noise_spectrum.size());
  auto fill_powers = [&](double zeta) {
    for (std::size_t i = 0; i < noise_spectrum.size(); ++i) {
      powers[i] = std::max(0.0, zeta - noise_spectrum[i]);
    }
  };
  const double zeta = solve_water_level(
      [&](double z) {
        fill_powers(z);
        return budget_total(powers, mode);
      },
      budget);

  fill_powers(zeta);
  Allocation result;
  result.powers = std::move(powers);
  result.water_level = zeta;
  result.budget = budget;
  result.residual = std::abs(budget_total(result.powers, mode) - budget);
  return result;
}

Allocation reverse_water_filling(std::span<const double> variances, double budget) {
  require_positive_budget(budget);
  for (double v : variances) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw_error(ErrorCode::InvalidArgument, "variances must be finite and positive");
    }
  }
  if (variances.empty()) {
    throw_error(ErrorCode::InvalidArgument, "variance list is empty");
  }
  std::vector<double> vars(variances.begin(), variances.end());
  const double total_variance = pairwise_sum(vars);
  if (budget > total_variance * (1.0 + 1e-12)) {
    throw_error(ErrorCode::DistortionExceedsVariance,
                "distortion " + std::to_string(budget) + " exceeds total variance " +
                    std::to_string(total_variance));
  }

  std::vector<double> powers(vars.size());
  auto fill_powers = [&](double zeta) {
    for (std::size_t i = 0; i < vars.size(); ++i) powers[i] = std::min(zeta, vars[i]);
  };
  const double zeta = solve_water_level(
      [&](double z) {
        fill_powers(z);
        return pairwise_sum(powers);
      },
      std::min(budget, total_variance));

  fill_powers(zeta);
  Allocation result;
  result.powers = std::move(powers);
  result.water_level = zeta;
  result.budget = budget;
  result.residual = std::abs(pairwise_sum(result.powers) - budget);
  return result;
}

}  // namespace leakwise
