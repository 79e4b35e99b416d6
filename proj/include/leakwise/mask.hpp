#pragma once

#include "leakwise/leakage.hpp"
#include "leakwise/spectral.hpp"

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace leakwise {

enum class MaskRegime { Stationary, FadingNoSi, FadingSi, FiniteTime };
enum class MaskConstraint { Distortion, OutputPower, LeakageCap };

std::string_view mask_regime_name(MaskRegime regime);
std::string_view mask_constraint_name(MaskConstraint kind);

/// An additive privacy mask: the Gaussian noise specification to synthesize,
/// the leakage it achieves, and the budget it consumes. noise_spec holds a
/// stationary spectrum, per-fading-state variances, or a finite-time noise
/// covariance depending on the regime.
struct MaskDesign {
  MaskRegime regime = MaskRegime::Stationary;
  std::variant<std::monostate, SpectralDensity, std::vector<double>, CovarianceMatrix> noise_spec;
  double achieved_leakage_bits = 0.0;
  double budget_used = 0.0;
  MaskConstraint constraint_kind = MaskConstraint::Distortion;
  double water_level = 0.0;
  /// Extra leakage incurred by projecting a finite-time mask onto its
  /// diagonal; set only when the projection was requested.
  std::optional<double> diagonal_penalty_bits;
};

/// Stationary mask under distortion budget E[(x - xbar)^2] <= D. The optimal
/// noise spectrum is the obfuscating profile with mean D.
MaskDesign design_stationary(const SpectralDensity& s_x, double distortion_budget);

/// Minimum distortion achieving leakage rate <= leakage_cap; bisects on the
/// water level, where leakage is strictly decreasing.
MaskDesign dual_stationary_distortion(const SpectralDensity& s_x, double leakage_cap);

/// Stationary mask under output power E[xbar^2] <= output_budget; reduces to
/// the distortion design with budget output_budget - variance(s_x).
MaskDesign design_stationary_output_power(const SpectralDensity& s_x, double output_budget);

/// Minimum masked-data power achieving leakage <= leakage_cap.
MaskDesign dual_stationary_power(const SpectralDensity& s_x, double leakage_cap);

/// Supremum of the conditional entropy rate h(x | xbar) over masks meeting
/// the distortion budget:
/// mean_j (1/2) log2(2 pi e S_j N_j / (S_j + N_j)) at the optimal N.
/// -inf when the spectrum has nulls.
double conditional_entropy_rate_gain(const SpectralDensity& s_x, double distortion_budget);

/// Mask for a fading stream; per-state noise variances (uniform D without
/// side information).
MaskDesign design_fading(const FadingModel& fading, double sigma_sq, double distortion_budget,
                         bool side_info);

/// Minimum distortion for a fading stream under a leakage cap.
MaskDesign dual_fading(const FadingModel& fading, double sigma_sq, double leakage_cap,
                       bool side_info);

/// Finite-time mask: noise covariance U diag(N_k) U^T aligned with the
/// eigenbasis of cov_x, with sum N_k = total_distortion. With diagonal_only
/// the covariance is projected onto its diagonal (same trace) and the exact
/// leakage of the projected mask is reported along with the penalty.
MaskDesign design_finite(const CovarianceMatrix& cov_x, double total_distortion,
                         bool diagonal_only = false);

/// Minimum total distortion for a finite-time stream under a leakage cap.
MaskDesign dual_finite(const CovarianceMatrix& cov_x, double leakage_cap);

}  // namespace leakwise
