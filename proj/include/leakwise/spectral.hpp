#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace leakwise {

/// Uniform frequency grid omega_j = 2*pi*j/M, j = 0..M-1. Spectral integrals
/// (1/2pi) \int_0^{2pi} f(omega) d omega become plain means over the grid.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::size_t num_points);

  std::size_t num_points() const { return num_points_; }
  double omega(std::size_t j) const;

  bool operator==(const FrequencyGrid&) const = default;

 private:
  std::size_t num_points_;
};

/// Sampled power spectrum of a real stationary process. Values are
/// nonnegative and symmetric about omega = pi (values[j] == values[M-j]);
/// the constructor rejects inputs that violate either beyond tolerance and
/// averages mirror pairs so the stored data is exactly symmetric.
class SpectralDensity {
 public:
  SpectralDensity(FrequencyGrid grid, std::vector<double> values);

  static SpectralDensity flat(FrequencyGrid grid, double value);

  const FrequencyGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Process variance: mean of the sampled spectrum.
  double variance() const;

 private:
  FrequencyGrid grid_;
  std::vector<double> values_;
};

/// ARMA stream x_k = -sum_j g_j x_{k-j} + w_k + sum_i f_i w_{k-i} driven by
/// white Gaussian w with variance innovation_variance. Must be stable and
/// minimum phase (all roots of both polynomials strictly inside the unit
/// disc).
struct ArmaModel {
  std::vector<double> ma_coeffs;  // f_1..f_p
  std::vector<double> ar_coeffs;  // g_1..g_q
  double innovation_variance = 1.0;

  /// Throws UnstableModel (reporting the offending root magnitude) or
  /// InvalidArgument.
  void validate() const;
};

/// Symmetric positive semidefinite matrix. Construction symmetrizes the
/// entries and rejects matrices with relative asymmetry above 1e-12 or an
/// eigenvalue below -1e-10 times the largest one.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd entries);

  static CovarianceMatrix identity(Eigen::Index dim);
  static CovarianceMatrix diagonal(std::span<const double> variances);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double trace() const { return entries_.trace(); }

 private:
  Eigen::MatrixXd entries_;
};

/// Eigendecomposition of a covariance matrix: eigenvalues descending and
/// clipped to zero, basis columns orthonormal and ordered to match.
struct EigenSpectrum {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd basis;
};

/// Spectrum of an ARMA model on the given grid:
/// S(omega) = |(1 + sum f_i e^{-i i omega}) / (1 + sum g_j e^{-i j omega})|^2
///            * innovation_variance.
SpectralDensity arma_spectrum(const ArmaModel& model, const FrequencyGrid& grid);

/// Autocovariances R(0..max_lag) with R(k) = (1/M) sum_j values[j] cos(k omega_j).
/// Requires max_lag < M/2.
std::vector<double> spectrum_to_autocov(const SpectralDensity& s, std::size_t max_lag);

/// Toeplitz covariance entries[i][k] = r[|i-k|]. Throws NotPsd when the
/// resulting matrix has meaningfully negative eigenvalues.
CovarianceMatrix toeplitz_from_autocov(std::span<const double> r, Eigen::Index dim);

/// Symmetric eigendecomposition, eigenvalues sorted descending. Negative
/// eigenvalues within -1e-10 of the largest are clipped to zero.
EigenSpectrum eig_sym(const CovarianceMatrix& c);

}  // namespace leakwise
