#include "leakwise/mask.hpp"

#include "leakwise/errors.hpp"
#include "leakwise/numeric.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace leakwise {

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

void require_leakage_cap(double leakage_cap) {
  if (!(leakage_cap > 0.0) || !std::isfinite(leakage_cap)) {
    throw_error(ErrorCode::CapUnreachable,
                "leakage cap must be positive, got " + std::to_string(leakage_cap));
  }
}

// Obfuscating noise profile at water level zeta over the spectrum; returns
// the leakage mean_j (1/2) log2(1 + S_j/N_j) over non-null components.
double stationary_leakage_at(const SpectralDensity& s_x, double zeta,
                             std::vector<double>& noise) {
  const auto& s = s_x.values();
  double peak = 0.0;
  for (double v : s) peak = std::max(peak, v);
  const double zero_threshold = 1e-12 * peak;
  noise.assign(s.size(), 0.0);
  std::vector<double> terms(s.size(), 0.0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] < zero_threshold) continue;
    noise[j] = obfuscating_noise(zeta, s[j]);
    terms[j] = 0.5 * std::log2(1.0 + s[j] / noise[j]);
  }
  return pairwise_mean(terms);
}

// Expected leakage sum_s p_s (1/2) log2(1 + w_s/N_s) for per-state noise.
double fading_leakage_at(const FadingModel& fading, std::span<const double> state_weights,
                         std::span<const double> noise) {
  std::vector<double> terms(state_weights.size(), 0.0);
  for (std::size_t s = 0; s < state_weights.size(); ++s) {
    if (state_weights[s] > 0.0) {
      terms[s] = fading.probs()[s] * 0.5 * std::log2(1.0 + state_weights[s] / noise[s]);
    }
  }
  return pairwise_sum(terms);
}

double log_det(const Eigen::MatrixXd& m, ErrorCode failure_code, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw_error(failure_code, std::string(what) + " is not positive definite");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) acc += std::log(llt.matrixL()(i, i));
  return 2.0 * acc;
}

// (1/2) log2(det(sx + sn) / det(sn)).
double log_det_mi_bits(const Eigen::MatrixXd& sx, const Eigen::MatrixXd& sn) {
  const double ld_noise = log_det(sn, ErrorCode::SingularNoise, "noise covariance");
  const double ld_sum = log_det(sx + sn, ErrorCode::ConvergenceFailure, "signal-plus-noise");
  return (ld_sum - ld_noise) / (2.0 * std::numbers::ln2);
}

}  // namespace

std::string_view mask_regime_name(MaskRegime regime) {
  switch (regime) {
    case MaskRegime::Stationary: return "stationary";
    case MaskRegime::FadingNoSi: return "fading_no_si";
    case MaskRegime::FadingSi: return "fading_si";
    case MaskRegime::FiniteTime: return "finite_time";
  }
  return "unknown";
}

std::string_view mask_constraint_name(MaskConstraint kind) {
  switch (kind) {
    case MaskConstraint::Distortion: return "distortion";
    case MaskConstraint::OutputPower: return "output_power";
    case MaskConstraint::LeakageCap: return "leakage_cap";
  }
  return "unknown";
}

MaskDesign design_stationary(const SpectralDensity& s_x, double distortion_budget) {
  LeakageReport report = leakage_colored(s_x, distortion_budget);
  MaskDesign design;
  design.regime = MaskRegime::Stationary;
  design.water_level = report.allocation->water_level;
  design.budget_used = pairwise_mean(report.allocation->powers);
  design.noise_spec = SpectralDensity(s_x.grid(), std::move(report.allocation->powers));
  design.achieved_leakage_bits = report.value_bits;
  design.constraint_kind = MaskConstraint::Distortion;
  return design;
}

MaskDesign dual_stationary_distortion(const SpectralDensity& s_x, double leakage_cap) {
  require_leakage_cap(leakage_cap);
  double peak = 0.0;
  for (double v : s_x.values()) peak = std::max(peak, v);
  if (peak <= 0.0) {
    throw_error(ErrorCode::AllZeroSpectrum, "input spectrum is identically zero");
  }
  std::vector<double> noise;
  // Leakage is strictly decreasing in zeta, so the negation is a monotone
  // constraint for the shared root finder.
  const double zeta = solve_water_level(
      [&](double z) { return -stationary_leakage_at(s_x, z, noise); }, -leakage_cap);
  const double achieved = stationary_leakage_at(s_x, zeta, noise);

  MaskDesign design;
  design.regime = MaskRegime::Stationary;
  design.water_level = zeta;
  design.budget_used = pairwise_mean(noise);
  design.achieved_leakage_bits = achieved;
  design.noise_spec = SpectralDensity(s_x.grid(), std::move(noise));
  design.constraint_kind = MaskConstraint::LeakageCap;
  return design;
}

MaskDesign design_stationary_output_power(const SpectralDensity& s_x, double output_budget) {
  const double input_variance = s_x.variance();
  const double distortion = output_budget - input_variance;
  if (!(distortion > 0.0)) {
    throw_error(ErrorCode::OutputBudgetTooSmall,
                "output power " + std::to_string(output_budget) +
                    " leaves no room above the input variance " +
                    std::to_string(input_variance));
  }
  MaskDesign design = design_stationary(s_x, distortion);
  design.constraint_kind = MaskConstraint::OutputPower;
  design.budget_used += input_variance;
  return design;
}

MaskDesign dual_stationary_power(const SpectralDensity& s_x, double leakage_cap) {
  MaskDesign design = dual_stationary_distortion(s_x, leakage_cap);
  design.budget_used += s_x.variance();
  return design;
}

double conditional_entropy_rate_gain(const SpectralDensity& s_x, double distortion_budget) {
  MaskDesign design = design_stationary(s_x, distortion_budget);
  const auto& noise = std::get<SpectralDensity>(design.noise_spec).values();
  const auto& s = s_x.values();

  double peak = 0.0;
  for (double v : s) peak = std::max(peak, v);
  const double zero_threshold = 1e-12 * peak;

  std::vector<double> terms(s.size());
  std::vector<double> marginal_terms(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] < zero_threshold) {
      // A spectral null pins the conditional entropy rate at -inf.
      return -std::numeric_limits<double>::infinity();
    }
    terms[j] = 0.5 * std::log2(kTwoPiE * s[j] * noise[j] / (s[j] + noise[j]));
    marginal_terms[j] = 0.5 * std::log2(kTwoPiE * s[j]);
  }
  const double gain = pairwise_mean(terms);
  const double identity = pairwise_mean(marginal_terms) - design.achieved_leakage_bits;
  if (std::abs(gain - identity) > 1e-9 * std::max(1.0, std::abs(gain))) {
    throw_error(ErrorCode::ConvergenceFailure,
                "conditional entropy identity violated: " + std::to_string(gain) + " vs " +
                    std::to_string(identity));
  }
  return gain;
}

MaskDesign design_fading(const FadingModel& fading, double sigma_sq, double distortion_budget,
                         bool side_info) {
  LeakageReport report = leakage_fading(fading, sigma_sq, distortion_budget, side_info);
  MaskDesign design;
  design.regime = side_info ? MaskRegime::FadingSi : MaskRegime::FadingNoSi;
  design.achieved_leakage_bits = report.value_bits;
  design.water_level = report.allocation->water_level;
  std::vector<double> expected(fading.num_states());
  for (std::size_t s = 0; s < fading.num_states(); ++s) {
    expected[s] = fading.probs()[s] * report.allocation->powers[s];
  }
  design.budget_used = pairwise_sum(expected);
  design.noise_spec = std::move(report.allocation->powers);
  design.constraint_kind = MaskConstraint::Distortion;
  return design;
}

MaskDesign dual_fading(const FadingModel& fading, double sigma_sq, double leakage_cap,
                       bool side_info) {
  require_leakage_cap(leakage_cap);
  if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
    throw_error(ErrorCode::NonpositiveInput,
                "pre-fading variance must be positive, got " + std::to_string(sigma_sq));
  }
  const std::size_t n = fading.num_states();
  std::vector<double> state_weights(n);
  for (std::size_t s = 0; s < n; ++s) state_weights[s] = fading.gains_sq()[s] * sigma_sq;

  std::vector<double> noise(n, 0.0);
  double zeta = 0.0;
  if (side_info) {
    auto fill = [&](double z) {
      for (std::size_t s = 0; s < n; ++s) noise[s] = obfuscating_noise(z, state_weights[s]);
    };
    zeta = solve_water_level(
        [&](double z) {
          fill(z);
          return -fading_leakage_at(fading, state_weights, noise);
        },
        -leakage_cap);
    fill(zeta);
  } else {
    // Uniform variance D with E[(1/2) log2(1 + w_s/D)] = leakage_cap.
    const double d = solve_water_level(
        [&](double z) {
          noise.assign(n, z);
          return -fading_leakage_at(fading, state_weights, noise);
        },
        -leakage_cap);
    noise.assign(n, d);
  }

  MaskDesign design;
  design.regime = side_info ? MaskRegime::FadingSi : MaskRegime::FadingNoSi;
  design.achieved_leakage_bits = fading_leakage_at(fading, state_weights, noise);
  design.water_level = zeta;
  std::vector<double> expected(n);
  for (std::size_t s = 0; s < n; ++s) expected[s] = fading.probs()[s] * noise[s];
  design.budget_used = pairwise_sum(expected);
  design.noise_spec = std::move(noise);
  design.constraint_kind = MaskConstraint::LeakageCap;
  return design;
}

MaskDesign design_finite(const CovarianceMatrix& cov_x, double total_distortion,
                         bool diagonal_only) {
  EigenSpectrum spectrum = eig_sym(cov_x);
  Allocation allocation =
      obfuscating_allocation(spectrum.eigenvalues, total_distortion, BudgetMode::Sum);

  const std::size_t n = spectrum.eigenvalues.size();
  double peak = 0.0;
  for (double v : spectrum.eigenvalues) peak = std::max(peak, v);
  const double zero_threshold = 1e-12 * peak;
  std::vector<double> terms(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (spectrum.eigenvalues[k] >= zero_threshold) {
      terms[k] = 0.5 * std::log2(1.0 + spectrum.eigenvalues[k] / allocation.powers[k]);
    }
  }
  const double optimal_bits = pairwise_sum(terms);

  Eigen::VectorXd noise_eigs(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) noise_eigs[static_cast<Eigen::Index>(k)] = allocation.powers[k];
  Eigen::MatrixXd sigma_n =
      spectrum.basis * noise_eigs.asDiagonal() * spectrum.basis.transpose();
  sigma_n = 0.5 * (sigma_n + sigma_n.transpose()).eval();

  MaskDesign design;
  design.regime = MaskRegime::FiniteTime;
  design.constraint_kind = MaskConstraint::Distortion;
  design.water_level = allocation.water_level;
  if (diagonal_only) {
    Eigen::MatrixXd diag = sigma_n.diagonal().asDiagonal();
    design.achieved_leakage_bits = log_det_mi_bits(cov_x.entries(), diag);
    design.diagonal_penalty_bits = design.achieved_leakage_bits - optimal_bits;
    design.budget_used = diag.trace();
    design.noise_spec = CovarianceMatrix(std::move(diag));
  } else {
    design.achieved_leakage_bits = optimal_bits;
    design.budget_used = sigma_n.trace();
    design.noise_spec = CovarianceMatrix(std::move(sigma_n));
  }
  return design;
}

MaskDesign dual_finite(const CovarianceMatrix& cov_x, double leakage_cap) {
  require_leakage_cap(leakage_cap);
  EigenSpectrum spectrum = eig_sym(cov_x);
  const std::size_t n = spectrum.eigenvalues.size();
  double peak = 0.0;
  for (double v : spectrum.eigenvalues) peak = std::max(peak, v);
  if (peak <= 0.0) {
    throw_error(ErrorCode::AllWeightsZero, "covariance has no positive eigenvalue");
  }
  const double zero_threshold = 1e-12 * peak;

  std::vector<double> noise(n, 0.0);
  auto total_bits = [&](double zeta) {
    std::vector<double> terms(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      if (spectrum.eigenvalues[k] < zero_threshold) {
        noise[k] = 0.0;
        continue;
      }
      noise[k] = obfuscating_noise(zeta, spectrum.eigenvalues[k]);
      terms[k] = 0.5 * std::log2(1.0 + spectrum.eigenvalues[k] / noise[k]);
    }
    return pairwise_sum(terms);
  };
  const double zeta = solve_water_level([&](double z) { return -total_bits(z); }, -leakage_cap);
  const double achieved = total_bits(zeta);

  Eigen::VectorXd noise_eigs(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) noise_eigs[static_cast<Eigen::Index>(k)] = noise[k];
  Eigen::MatrixXd sigma_n =
      spectrum.basis * noise_eigs.asDiagonal() * spectrum.basis.transpose();
  sigma_n = 0.5 * (sigma_n + sigma_n.transpose()).eval();

  MaskDesign design;
  design.regime = MaskRegime::FiniteTime;
  design.constraint_kind = MaskConstraint::LeakageCap;
  design.water_level = zeta;
  design.achieved_leakage_bits = achieved;
  design.budget_used = pairwise_sum(noise);
  design.noise_spec = CovarianceMatrix(std::move(sigma_n));
  return design;
}

}  // namespace leakwise
