#pragma once

#include <functional>
#include <span>
#include <vector>

namespace leakwise {

/// Whether a budget constrains the mean of the per-component powers (spectra,
/// where sums stand in for integrals) or their plain sum (parallel channels,
/// finite-time streams).
enum class BudgetMode { Mean, Sum };

struct Allocation {
  std::vector<double> powers;
  double water_level = 0.0;  // zeta
  double budget = 0.0;
  double residual = 0.0;  // |achieved - budget|
};

/// Obfuscating noise profile for one component of weight lambda:
/// N(zeta) = zeta / (2 (1 + sqrt(1 + zeta/lambda))), increasing in both
/// arguments; 0 when lambda is 0.
double obfuscating_noise(double zeta, double weight);

/// Finds zeta >= 0 with constraint_fn(zeta) == target for a nondecreasing
/// continuous constraint_fn with constraint_fn(0) <= target. Brackets by
/// doubling from zeta = 1, then bisects (at most 200 iterations, stopping
/// early once the bracket cannot shrink). The residual satisfies
/// |constraint_fn(zeta) - target| <= 1e-10 * max(1, |target|).
///
/// Throws BracketFailure when the target is unreachable and NotMonotone when
/// probing observes a decrease.
double solve_water_level(const std::function<double(double)>& constraint_fn, double target);

/// Noise allocation minimizing sum_i (1/2) log2(1 + weights[i]/N_i) subject
/// to the budget: N_i = obfuscating_noise(zeta, weights[i]), with zeta chosen
/// so that the mean or sum of the N_i equals the budget. Components whose
/// weight is below 1e-12 * max(weights) receive zero noise.
Allocation obfuscating_allocation(std::span<const double> weights, double budget, BudgetMode mode);

/// Water-filling: powers[i] = max(0, zeta - noise_spectrum[i]) with the
/// budget met exactly.
Allocation water_filling(std::span<const double> noise_spectrum, double budget, BudgetMode mode);

/// Reverse water-filling: powers[i] = min(zeta, variances[i]) with
/// sum powers = budget. Requires budget <= sum(variances).
Allocation reverse_water_filling(std::span<const double> variances, double budget);

}  // namespace leakwise
