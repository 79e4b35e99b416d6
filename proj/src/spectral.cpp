#include "leakwise/spectral.hpp"

#include "leakwise/errors.hpp"
#include "leakwise/numeric.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace leakwise {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Largest root magnitude of z^n + c[0] z^{n-1} + ... + c[n-1], via the
// companion matrix. Returns 0 for an empty coefficient list.
double max_root_magnitude(std::span<const double> coeffs) {
  const Eigen::Index n = static_cast<Eigen::Index>(coeffs.size());
  if (n == 0) return 0.0;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) companion(0, i) = -coeffs[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw_error(ErrorCode::ConvergenceFailure,
                "companion eigenvalue solve failed for polynomial of degree " + std::to_string(n));
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::size_t num_points) : num_points_(num_points) {
  if (num_points < 2) {
    throw_error(ErrorCode::InvalidArgument,
                "frequency grid needs at least 2 points, got " + std::to_string(num_points));
  }
}

double FrequencyGrid::omega(std::size_t j) const {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(num_points_);
}

SpectralDensity::SpectralDensity(FrequencyGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  const std::size_t m = grid_.num_points();
  if (values_.size() != m) {
    throw_error(ErrorCode::InvalidArgument,
                "spectrum has " + std::to_string(values_.size()) + " values for a grid of " +
                    std::to_string(m));
  }
  double max_abs = 0.0;
  for (double v : values_) max_abs = std::max(max_abs, std::abs(v));
  const double negative_tol = 1e-12 * max_abs;
  for (double& v : values_) {
    if (v < -negative_tol) {
      throw_error(ErrorCode::InvalidArgument, "negative spectral value " + std::to_string(v));
    }
    if (v < 0.0) v = 0.0;
  }
  // Mirror pairs (j, M-j) describe the same physical frequency of a real
  // process; reject genuine asymmetry, then average away rounding noise.
  const double symmetry_tol = 1e-9 * std::max(1.0, max_abs);
  for (std::size_t j = 1; 2 * j < m; ++j) {
    const double a = values_[j];
    const double b = values_[m - j];
    if (std::abs(a - b) > symmetry_tol) {
      throw_error(ErrorCode::InvalidArgument,
                  "spectrum asymmetric at index " + std::to_string(j) + ": " + std::to_string(a) +
                      " vs " + std::to_string(b));
    }
    const double avg = 0.5 * (a + b);
    values_[j] = avg;
    values_[m - j] = avg;
  }
}

SpectralDensity SpectralDensity::flat(FrequencyGrid grid, double value) {
  return SpectralDensity(grid, std::vector<double>(grid.num_points(), value));
}

double SpectralDensity::variance() const { return pairwise_mean(values_); }

void ArmaModel::validate() const {
  if (!(innovation_variance > 0.0) || !std::isfinite(innovation_variance)) {
    throw_error(ErrorCode::InvalidArgument,
                "innovation variance must be positive, got " +
                    std::to_string(innovation_variance));
  }
  const double ar_root = max_root_magnitude(ar_coeffs);
  if (ar_root >= 1.0) {
    throw_error(ErrorCode::UnstableModel,
                "AR polynomial root magnitude " + std::to_string(ar_root) + " >= 1");
  }
  const double ma_root = max_root_magnitude(ma_coeffs);
  if (ma_root >= 1.0) {
    throw_error(ErrorCode::UnstableModel,
                "MA polynomial root magnitude " + std::to_string(ma_root) + " >= 1 (not minimum phase)");
  }
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw_error(ErrorCode::InvalidArgument,
                "covariance must be square and nonempty, got " + std::to_string(entries_.rows()) +
                    "x" + std::to_string(entries_.cols()));
  }
  const double max_abs = entries_.cwiseAbs().maxCoeff();
  const double asymmetry = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-12 * std::max(1.0, max_abs)) {
    throw_error(ErrorCode::InvalidArgument,
                "matrix asymmetry " + std::to_string(asymmetry) + " exceeds tolerance");
  }
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries_,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw_error(ErrorCode::ConvergenceFailure,
                "eigenvalue check failed for dim " + std::to_string(entries_.rows()));
  }
  const double lambda_max = solver.eigenvalues().maxCoeff();
  const double lambda_min = solver.eigenvalues().minCoeff();
  if (lambda_min < -1e-10 * std::max(lambda_max, 0.0)) {
    throw_error(ErrorCode::NotPsd, "minimum eigenvalue " + std::to_string(lambda_min) +
                                       " below tolerance for maximum " +
                                       std::to_string(lambda_max));
  }
}

CovarianceMatrix CovarianceMatrix::identity(Eigen::Index dim) {
  return CovarianceMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

CovarianceMatrix CovarianceMatrix::diagonal(std::span<const double> variances) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(variances.size()));
  for (std::size_t i = 0; i < variances.size(); ++i) d[static_cast<Eigen::Index>(i)] = variances[i];
  return CovarianceMatrix(d.asDiagonal());
}

SpectralDensity arma_spectrum(const ArmaModel& model, const FrequencyGrid& grid) {
  model.validate();
  const std::size_t m = grid.num_points();
  std::vector<double> values(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double omega = grid.omega(j);
    std::complex<double> num(1.0, 0.0);
    for (std::size_t i = 0; i < model.ma_coeffs.size(); ++i) {
      num += model.ma_coeffs[i] * std::polar(1.0, -omega * static_cast<double>(i + 1));
    }
    std::complex<double> den(1.0, 0.0);
    for (std::size_t i = 0; i < model.ar_coeffs.size(); ++i) {
      den += model.ar_coeffs[i] * std::polar(1.0, -omega * static_cast<double>(i + 1));
    }
    values[j] = std::norm(num) / std::norm(den) * model.innovation_variance;
  }
  return SpectralDensity(grid, std::move(values));
}

std::vector<double> spectrum_to_autocov(const SpectralDensity& s, std::size_t max_lag) {
  const std::size_t m = s.grid().num_points();
  if (2 * max_lag >= m) {
    throw_error(ErrorCode::LagTooLarge, "max_lag " + std::to_string(max_lag) +
                                            " must be below M/2 = " + std::to_string(m / 2));
  }
  std::vector<double> result(max_lag + 1);
  std::vector<double> terms(m);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      terms[j] = s.values()[j] * std::cos(static_cast<double>(k) * s.grid().omega(j));
    }
    result[k] = pairwise_mean(terms);
  }
  return result;
}

CovarianceMatrix toeplitz_from_autocov(std::span<const double> r, Eigen::Index dim) {
  if (dim < 1 || static_cast<std::size_t>(dim) > r.size()) {
    throw_error(ErrorCode::InvalidArgument,
                "need at least " + std::to_string(dim) + " autocovariances, got " +
                    std::to_string(r.size()));
  }
  Eigen::MatrixXd entries(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      entries(i, k) = r[static_cast<std::size_t>(std::abs(i - k))];
    }
  }
  // CovarianceMatrix rejects the matrix if the autocovariance sequence was
  // not positive semidefinite to begin with.
  return CovarianceMatrix(std::move(entries));
}

EigenSpectrum eig_sym(const CovarianceMatrix& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.entries());
  if (solver.info() != Eigen::Success) {
    throw_error(ErrorCode::ConvergenceFailure,
                "symmetric eigendecomposition failed at dim " + std::to_string(c.dim()));
  }
  const Eigen::Index n = c.dim();
  EigenSpectrum spectrum;
  spectrum.eigenvalues.resize(static_cast<std::size_t>(n));
  spectrum.basis.resize(n, n);
  // Eigen returns ascending order; flip to descending and clip the tiny
  // negatives the constructor already vetted.
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = n - 1 - i;
    spectrum.eigenvalues[static_cast<std::size_t>(i)] = std::max(0.0, solver.eigenvalues()[src]);
    spectrum.basis.col(i) = solver.eigenvectors().col(src);
  }
  return spectrum;
}

}  // namespace leakwise
