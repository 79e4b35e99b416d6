#pragma once

#include "leakwise/allocation.hpp"
#include "leakwise/spectral.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace leakwise {

enum class Regime { White, Colored, Parallel, FadingNoSi, FadingSi };
enum class ConstraintKind { NoisePower, OutputPower };

std::string_view regime_name(Regime regime);
std::string_view constraint_name(ConstraintKind kind);

/// Channel leakage (or capacity) value in bits per sample, together with the
/// allocation that achieves it.
struct LeakageReport {
  double value_bits = 0.0;
  std::optional<Allocation> allocation;
  Regime regime = Regime::White;
  ConstraintKind constraint = ConstraintKind::NoisePower;
  double budget = 0.0;
};

/// Discrete distribution of squared channel gains |h|^2. Probabilities must
/// sum to 1 and at least one gain must be positive.
class FadingModel {
 public:
  FadingModel(std::vector<double> gains_sq, std::vector<double> probs);

  const std::vector<double>& gains_sq() const { return gains_sq_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t num_states() const { return gains_sq_.size(); }

  /// E[|h|^2].
  double mean_gain_sq() const;

 private:
  std::vector<double> gains_sq_;
  std::vector<double> probs_;
};

/// White Gaussian input: L = (1/2) log2(1 + sigma_x_sq / noise_budget).
LeakageReport leakage_white(double sigma_x_sq, double noise_budget);

/// Colored Gaussian input: obfuscating allocation over the spectrum (mean
/// budget), L = mean_j (1/2) log2(1 + S(omega_j) / N(omega_j)).
LeakageReport leakage_colored(const SpectralDensity& s_x, double noise_budget);

/// Independent parallel channels with the given input variances (sum budget).
LeakageReport leakage_parallel(std::span<const double> eigenvalues, double noise_budget);

/// Output-power constraint E[y^2] <= Y; equivalent to a noise budget of
/// Y - variance(s_x). Throws OutputBudgetTooSmall when that is nonpositive.
LeakageReport leakage_output_constrained(const SpectralDensity& s_x, double output_budget);

/// Fading stream x_k = h_k xhat_k with xhat white Gaussian of variance
/// sigma_sq. Without side information the noise budget is spent uniformly;
/// with side information it is split across gain states by the obfuscating
/// profile with E[N_s] = noise_budget (zero-gain states get zero noise).
LeakageReport leakage_fading(const FadingModel& fading, double sigma_sq, double noise_budget,
                             bool side_info);

/// Fading with output-power budget Y; noise budget Y - E[|h|^2] sigma_sq.
LeakageReport leakage_fading_output(const FadingModel& fading, double sigma_sq,
                                    double output_budget, bool side_info);

/// AWGN capacity C = (1/2) log2(1 + input_power / sigma_z_sq).
LeakageReport capacity_white(double input_power, double sigma_z_sq);

/// Colored-noise capacity via water-filling (mean budget). Throws
/// ZeroNoiseFrequency when the noise spectrum vanishes somewhere.
LeakageReport capacity_colored(const SpectralDensity& s_z, double input_power);

/// Fast-fading capacity; side_info selects water-filling over gain states
/// (E[P_s] = input_power) versus a uniform input power.
LeakageReport capacity_fading(const FadingModel& fading, double sigma_z_sq, double input_power,
                              bool side_info);

struct LeakageCapacityComparison {
  double leakage_bits = 0.0;
  double capacity_bits = 0.0;
  bool leakage_le_capacity = false;
};

/// Moment-matched comparison: leakage of input s_x under noise budget
/// variance(s_z) versus capacity under noise s_z with input budget
/// variance(s_x). When explicit budgets are passed they must match the
/// spectra's variances (MomentMismatch otherwise).
LeakageCapacityComparison compare_leakage_capacity(const SpectralDensity& s_x,
                                                   const SpectralDensity& s_z,
                                                   std::optional<double> input_power = {},
                                                   std::optional<double> noise_power = {});

}  // namespace leakwise
