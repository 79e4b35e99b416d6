#include "leakwise/leakage.hpp"

#include "leakwise/errors.hpp"
#include "leakwise/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace leakwise {

namespace {

double half_log2_1p(double ratio) { return 0.5 * std::log2(1.0 + ratio); }

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw_error(ErrorCode::NonpositiveInput,
                std::string(what) + " must be positive, got " + std::to_string(value));
  }
}

double max_value(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

// mean_j (1/2) log2(1 + S_j / N_j), skipping null components (they carry no
// signal and no noise).
double spectral_rate_bits(std::span<const double> signal, std::span<const double> noise,
                          double zero_threshold) {
  std::vector<double> terms(signal.size(), 0.0);
  for (std::size_t j = 0; j < signal.size(); ++j) {
    if (signal[j] >= zero_threshold) terms[j] = half_log2_1p(signal[j] / noise[j]);
  }
  return pairwise_mean(terms);
}

}  // namespace

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::White: return "white";
    case Regime::Colored: return "colored";
    case Regime::Parallel: return "parallel";
    case Regime::FadingNoSi: return "fading_no_si";
    case Regime::FadingSi: return "fading_si";
  }
  return "unknown";
}

std::string_view constraint_name(ConstraintKind kind) {
  return kind == ConstraintKind::NoisePower ? "noise_power" : "output_power";
}

FadingModel::FadingModel(std::vector<double> gains_sq, std::vector<double> probs)
    : gains_sq_(std::move(gains_sq)), probs_(std::move(probs)) {
  if (gains_sq_.empty() || gains_sq_.size() != probs_.size()) {
    throw_error(ErrorCode::InvalidArgument,
                "fading model needs matching nonempty gain and probability lists");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw_error(ErrorCode::InvalidArgument, "probabilities must be nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw_error(ErrorCode::InvalidArgument,
                "probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  bool any_positive = false;
  for (double g : gains_sq_) {
    if (g < 0.0 || !std::isfinite(g)) {
      throw_error(ErrorCode::InvalidArgument, "squared gains must be nonnegative");
    }
    if (g > 0.0) any_positive = true;
  }
  if (!any_positive) {
    throw_error(ErrorCode::DegenerateFading, "every fading gain is zero");
  }
}

double FadingModel::mean_gain_sq() const {
  std::vector<double> terms(gains_sq_.size());
  for (std::size_t s = 0; s < gains_sq_.size(); ++s) terms[s] = probs_[s] * gains_sq_[s];
  return pairwise_sum(terms);
}

LeakageReport leakage_white(double sigma_x_sq, double noise_budget) {
  require_positive(sigma_x_sq, "input variance");
  require_positive(noise_budget, "noise budget");
  LeakageReport report;
  report.value_bits = half_log2_1p(sigma_x_sq / noise_budget);
  report.regime = Regime::White;
  report.constraint = ConstraintKind::NoisePower;
  report.budget = noise_budget;
  Allocation flat;
  flat.powers = {noise_budget};
  flat.water_level = 0.0;
  flat.budget = noise_budget;
  flat.residual = 0.0;
  report.allocation = std::move(flat);
  return report;
}

LeakageReport leakage_colored(const SpectralDensity& s_x, double noise_budget) {
  if (!(noise_budget > 0.0)) {
    throw_error(ErrorCode::BudgetNonpositive,
                "noise budget must be positive, got " + std::to_string(noise_budget));
  }
  const double peak = max_value(s_x.values());
  if (peak <= 0.0) {
    throw_error(ErrorCode::AllZeroSpectrum, "input spectrum is identically zero");
  }
  Allocation allocation = obfuscating_allocation(s_x.values(), noise_budget, BudgetMode::Mean);
  LeakageReport report;
  report.value_bits = spectral_rate_bits(s_x.values(), allocation.powers, 1e-12 * peak);
  report.allocation = std::move(allocation);
  report.regime = Regime::Colored;
  report.constraint = ConstraintKind::NoisePower;
  report.budget = noise_budget;
  return report;
}

LeakageReport leakage_parallel(std::span<const double> eigenvalues, double noise_budget) {
  if (!(noise_budget > 0.0)) {
    throw_error(ErrorCode::BudgetNonpositive,
                "noise budget must be positive, got " + std::to_string(noise_budget));
  }
  Allocation allocation = obfuscating_allocation(eigenvalues, noise_budget, BudgetMode::Sum);
  const double zero_threshold = 1e-12 * max_value(eigenvalues);
  std::vector<double> terms(eigenvalues.size(), 0.0);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] >= zero_threshold) {
      terms[i] = half_log2_1p(eigenvalues[i] / allocation.powers[i]);
    }
  }
  LeakageReport report;
  report.value_bits = pairwise_sum(terms);
  report.allocation = std::move(allocation);
  report.regime = Regime::Parallel;
  report.constraint = ConstraintKind::NoisePower;
  report.budget = noise_budget;
  return report;
}

LeakageReport leakage_output_constrained(const SpectralDensity& s_x, double output_budget) {
  const double input_variance = s_x.variance();
  const double noise_budget = output_budget - input_variance;
  if (!(noise_budget > 0.0)) {
    throw_error(ErrorCode::OutputBudgetTooSmall,
                "output budget " + std::to_string(output_budget) +
                    " leaves no room above the input variance " +
                    std::to_string(input_variance));
  }
  LeakageReport report = leakage_colored(s_x, noise_budget);
  report.constraint = ConstraintKind::OutputPower;
  report.budget = output_budget;
  return report;
}

LeakageReport leakage_fading(const FadingModel& fading, double sigma_sq, double noise_budget,
                             bool side_info) {
  require_positive(sigma_sq, "pre-fading variance");
  require_positive(noise_budget, "noise budget");

  const std::size_t n = fading.num_states();
  std::vector<double> state_weights(n);  // |h|^2 sigma^2 per state
  for (std::size_t s = 0; s < n; ++s) state_weights[s] = fading.gains_sq()[s] * sigma_sq;

  LeakageReport report;
  report.regime = side_info ? Regime::FadingSi : Regime::FadingNoSi;
  report.constraint = ConstraintKind::NoisePower;
  report.budget = noise_budget;

  std::vector<double> noise(n, noise_budget);
  double zeta = 0.0;
  if (side_info) {
    // Split the budget across gain states with E[N_s] = budget; zero-gain
    // states are excluded from the water-level equation and get no noise.
    auto fill = [&](double z) {
      for (std::size_t s = 0; s < n; ++s) noise[s] = obfuscating_noise(z, state_weights[s]);
    };
    zeta = solve_water_level(
        [&](double z) {
          fill(z);
          std::vector<double> terms(n);
          for (std::size_t s = 0; s < n; ++s) terms[s] = fading.probs()[s] * noise[s];
          return pairwise_sum(terms);
        },
        noise_budget);
    fill(zeta);
  }

  std::vector<double> terms(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    if (state_weights[s] > 0.0) {
      terms[s] = fading.probs()[s] * half_log2_1p(state_weights[s] / noise[s]);
    }
  }
  report.value_bits = pairwise_sum(terms);

  Allocation allocation;
  allocation.powers = std::move(noise);
  allocation.water_level = zeta;
  allocation.budget = noise_budget;
  std::vector<double> expected(n);
  for (std::size_t s = 0; s < n; ++s) expected[s] = fading.probs()[s] * allocation.powers[s];
  allocation.residual = std::abs(pairwise_sum(expected) - noise_budget);
  report.allocation = std::move(allocation);
  return report;
}

LeakageReport leakage_fading_output(const FadingModel& fading, double sigma_sq,
                                    double output_budget, bool side_info) {
  require_positive(sigma_sq, "pre-fading variance");
  const double signal_power = fading.mean_gain_sq() * sigma_sq;
  const double noise_budget = output_budget - signal_power;
  if (!(noise_budget > 0.0)) {
    throw_error(ErrorCode::OutputBudgetTooSmall,
                "output budget " + std::to_string(output_budget) +
                    " leaves no room above the faded signal power " +
                    std::to_string(signal_power));
  }
  LeakageReport report = leakage_fading(fading, sigma_sq, noise_budget, side_info);
  report.constraint = ConstraintKind::OutputPower;
  report.budget = output_budget;
  return report;
}

LeakageReport capacity_white(double input_power, double sigma_z_sq) {
  require_positive(input_power, "input power");
  require_positive(sigma_z_sq, "noise variance");
  LeakageReport report;
  report.value_bits = half_log2_1p(input_power / sigma_z_sq);
  report.regime = Regime::White;
  report.constraint = ConstraintKind::NoisePower;
  report.budget = input_power;
  Allocation flat;
  flat.powers = {input_power};
  flat.budget = input_power;
  report.allocation = std::move(flat);
  return report;
}

LeakageReport capacity_colored(const SpectralDensity& s_z, double input_power) {
  if (!(input_power > 0.0)) {
    throw_error(ErrorCode::BudgetNonpositive,
                "input power must be positive, got " + std::to_string(input_power));
  }
  for (std::size_t j = 0; j < s_z.size(); ++j) {
    if (s_z.values()[j] <= 0.0) {
      throw_error(ErrorCode::ZeroNoiseFrequency,
                  "noise spectrum vanishes at grid index " + std::to_string(j) +
                      "; capacity is unbounded");
    }
  }
  Allocation allocation = water_filling(s_z.values(), input_power, BudgetMode::Mean);
  std::vector<double> terms(s_z.size());
  for (std::size_t j = 0; j < s_z.size(); ++j) {
    terms[j] = half_log2_1p(allocation.powers[j] / s_z.values()[j]);
  }
  LeakageReport report;
  report.value_bits = pairwise_mean(terms);
  report.allocation = std::move(allocation);
  report.regime = Regime::Colored;
  report.constraint = ConstraintKind::NoisePower;
  report.budget = input_power;
  return report;
}

LeakageReport capacity_fading(const FadingModel& fading, double sigma_z_sq, double input_power,
                              bool side_info) {
  require_positive(sigma_z_sq, "noise variance");
  require_positive(input_power, "input power");

  const std::size_t n = fading.num_states();
  std::vector<double> power(n, input_power);
  double zeta = 0.0;
  if (side_info) {
    // Water-filling over gain states: P_s = max(0, zeta - sigma_z^2/|h_s|^2),
    // E[P_s] = input_power. Zero-gain states never receive power.
    auto fill = [&](double z) {
      for (std::size_t s = 0; s < n; ++s) {
        const double g = fading.gains_sq()[s];
        power[s] = g > 0.0 ? std::max(0.0, z - sigma_z_sq / g) : 0.0;
      }
    };
    zeta = solve_water_level(
        [&](double z) {
          fill(z);
          std::vector<double> terms(n);
          for (std::size_t s = 0; s < n; ++s) terms[s] = fading.probs()[s] * power[s];
          return pairwise_sum(terms);
        },
        input_power);
    fill(zeta);
  }

  std::vector<double> terms(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    const double g = fading.gains_sq()[s];
    if (g > 0.0) terms[s] = fading.probs()[s] * half_log2_1p(g * power[s] / sigma_z_sq);
  }
  LeakageReport report;
  report.value_bits = pairwise_sum(terms);
  report.regime = side_info ? Regime::FadingSi : Regime::FadingNoSi;
  report.constraint = ConstraintKind::NoisePower;
  report.budget = input_power;
  Allocation allocation;
  allocation.powers = std::move(power);
  allocation.water_level = zeta;
  allocation.budget = input_power;
  report.allocation = std::move(allocation);
  return report;
}

LeakageCapacityComparison compare_leakage_capacity(const SpectralDensity& s_x,
                                                   const SpectralDensity& s_z,
                                                   std::optional<double> input_power,
                                                   std::optional<double> noise_power) {
  const double p = s_x.variance();
  const double n = s_z.variance();
  const double tol = 1e-9;
  if (input_power && std::abs(*input_power - p) > tol * std::max(1.0, p)) {
    throw_error(ErrorCode::MomentMismatch,
                "declared input power " + std::to_string(*input_power) +
                    " does not match the input spectrum variance " + std::to_string(p));
  }
  if (noise_power && std::abs(*noise_power - n) > tol * std::max(1.0, n)) {
    throw_error(ErrorCode::MomentMismatch,
                "declared noise power " + std::to_string(*noise_power) +
                    " does not match the noise spectrum variance " + std::to_string(n));
  }
  LeakageCapacityComparison cmp;
  cmp.leakage_bits = leakage_colored(s_x, n).value_bits;
  cmp.capacity_bits = capacity_colored(s_z, p).value_bits;
  cmp.leakage_le_capacity = cmp.leakage_bits <= cmp.capacity_bits + 1e-9;
  return cmp;
}

}  // namespace leakwise
