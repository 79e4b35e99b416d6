#include "leakwise/sim.hpp"

#include "leakwise/errors.hpp"
#include "leakwise/numeric.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace leakwise::sim {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline double uniform_from_words(std::uint32_t w0, std::uint32_t w1) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(w0) << 32) | w1;
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

double log_det_chol(const Eigen::MatrixXd& m, ErrorCode failure_code, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw_error(failure_code, std::string(what) + " is not positive definite");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) acc += std::log(llt.matrixL()(i, i));
  return 2.0 * acc;
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& data) {
  const Eigen::Index paths = data.rows();
  const Eigen::RowVectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mean;
  return centered.transpose() * centered / static_cast<double>(paths - 1);
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t key)
    : key0_(static_cast<std::uint32_t>(key)), key1_(static_cast<std::uint32_t>(key >> 32)) {}

std::array<std::uint32_t, 4> Philox4x32::block(const std::array<std::uint32_t, 4>& counter) const {
  std::array<std::uint32_t, 4> state = counter;
  std::uint32_t k0 = key0_;
  std::uint32_t k1 = key1_;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, state[0], hi0, lo0);
    mulhilo(kPhiloxM1, state[2], hi1, lo1);
    state = {hi1 ^ state[1] ^ k0, lo1, hi0 ^ state[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return state;
}

void fill_path_normals(std::uint64_t seed, std::uint32_t stream, std::uint64_t path,
                       std::span<double> out) {
  const Philox4x32 generator(seed);
  const auto path_lo = static_cast<std::uint32_t>(path);
  const auto path_hi = static_cast<std::uint32_t>(path >> 32);
  std::size_t produced = 0;
  for (std::uint32_t block_index = 0; produced < out.size(); ++block_index) {
    const auto words = generator.block({block_index, path_lo, path_hi, stream});
    const double u1 = uniform_from_words(words[0], words[1]);
    const double u2 = uniform_from_words(words[2], words[3]);
    // Box-Muller; 1 - u1 keeps the log argument in (0, 1].
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[produced++] = radius * std::cos(angle);
    if (produced < out.size()) out[produced++] = radius * std::sin(angle);
  }
}

SampleBatch sample_gaussian(const CovarianceMatrix& cov, std::size_t num_paths,
                            std::uint64_t seed, std::uint32_t stream) {
  const Eigen::Index dim = cov.dim();
  EigenSpectrum spectrum = eig_sym(cov);
  Eigen::VectorXd sqrt_eigs(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    sqrt_eigs[i] = std::sqrt(spectrum.eigenvalues[static_cast<std::size_t>(i)]);
  }
  const Eigen::MatrixXd factor =
      spectrum.basis * sqrt_eigs.asDiagonal() * spectrum.basis.transpose();

  SampleBatch batch;
  batch.num_paths = num_paths;
  batch.horizon = static_cast<std::size_t>(dim);
  batch.seed = seed;
  batch.data.resize(static_cast<Eigen::Index>(num_paths), dim);
  std::vector<double> normals(static_cast<std::size_t>(dim));
  for (std::size_t p = 0; p < num_paths; ++p) {
    fill_path_normals(seed, stream, p, normals);
    Eigen::Map<const Eigen::VectorXd> g(normals.data(), dim);
    batch.data.row(static_cast<Eigen::Index>(p)) = (factor * g).transpose();
  }
  return batch;
}

double exact_mi_gaussian(const CovarianceMatrix& cov_x, const CovarianceMatrix& cov_n) {
  if (cov_x.dim() != cov_n.dim()) {
    throw_error(ErrorCode::InvalidArgument,
                "dimension mismatch: " + std::to_string(cov_x.dim()) + " vs " +
                    std::to_string(cov_n.dim()));
  }
  const double ld_noise =
      log_det_chol(cov_n.entries(), ErrorCode::SingularNoise, "noise covariance");
  const double ld_sum = log_det_chol(cov_x.entries() + cov_n.entries(),
                                     ErrorCode::ConvergenceFailure, "signal-plus-noise");
  return (ld_sum - ld_noise) / (2.0 * std::numbers::ln2);
}

BruteForceResult brute_force_allocation(std::span<const double> weights, double budget,
                                        double grid_step) {
  if (weights.empty() || weights.size() > 3) {
    throw_error(ErrorCode::TooManyComponents,
                "grid oracle supports 1 to 3 components, got " + std::to_string(weights.size()));
  }
  if (!(grid_step > 0.0)) {
    throw_error(ErrorCode::InvalidArgument, "grid step must be positive");
  }
  if (!(budget >= static_cast<double>(weights.size()) * grid_step)) {
    throw_error(ErrorCode::BudgetNonpositive,
                "budget " + std::to_string(budget) + " cannot cover " +
                    std::to_string(weights.size()) + " components at step " +
                    std::to_string(grid_step));
  }
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw_error(ErrorCode::InvalidArgument, "weights must be finite and nonnegative");
    }
  }

  auto term = [](double weight, double noise) { return 0.5 * std::log2(1.0 + weight / noise); };

  BruteForceResult result;
  result.allocation.budget = budget;

  if (weights.size() == 1) {
    result.allocation.powers = {budget};
    result.objective_bits = term(weights[0], budget);
    return result;
  }

  const auto steps = static_cast<std::size_t>(std::floor(budget / grid_step));
  const double remainder = budget - static_cast<double>(steps) * grid_step;

  if (weights.size() == 2) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 1;
    for (std::size_t i = 1; i + 1 <= steps; ++i) {
      const double n0 = static_cast<double>(i) * grid_step;
      const double n1 = budget - n0;
      const double objective = term(weights[0], n0) + term(weights[1], n1);
      if (objective < best) {
        best = objective;
        best_i = i;
      }
    }
    const double n0 = static_cast<double>(best_i) * grid_step;
    result.allocation.powers = {n0, budget - n0};
    result.objective_bits = best;
    return result;
  }

  // Three components: tabulate the per-component objective along the grid so
  // the O(steps^2) scan is two lookups and an add per point. The third
  // component absorbs the sub-step remainder of the budget.
  std::vector<double> f0(steps + 1), f1(steps + 1), f2(steps + 1);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double n = static_cast<double>(i) * grid_step;
    f0[i] = term(weights[0], n);
    f1[i] = term(weights[1], n);
    f2[i] = term(weights[2], n + remainder);
  }
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 1, best_j = 1;
  for (std::size_t i = 1; i + 2 <= steps; ++i) {
    const double fi = f0[i];
    const std::size_t j_max = steps - i - 1;
    for (std::size_t j = 1; j <= j_max; ++j) {
      const double objective = fi + f1[j] + f2[steps - i - j];
      if (objective < best) {
        best = objective;
        best_i = i;
        best_j = j;
      }
    }
  }
  const double n0 = static_cast<double>(best_i) * grid_step;
  const double n1 = static_cast<double>(best_j) * grid_step;
  result.allocation.powers = {n0, n1, budget - n0 - n1};
  result.objective_bits = best;
  return result;
}

SzegoRun szego_convergence(const SpectralDensity& s_x, double noise_budget,
                           std::span<const std::size_t> horizons) {
  for (std::size_t i = 1; i < horizons.size(); ++i) {
    if (horizons[i] <= horizons[i - 1]) {
      throw_error(ErrorCode::InvalidArgument, "horizons must be strictly increasing");
    }
  }
  SzegoRun run;
  run.limit_bits = leakage_colored(s_x, noise_budget).value_bits;
  for (std::size_t k : horizons) {
    const std::vector<double> autocov = spectrum_to_autocov(s_x, k);
    const CovarianceMatrix cov =
        toeplitz_from_autocov(autocov, static_cast<Eigen::Index>(k + 1));
    const MaskDesign design =
        design_finite(cov, static_cast<double>(k + 1) * noise_budget);
    SzegoPoint point;
    point.horizon = k;
    point.per_sample_bits = design.achieved_leakage_bits / static_cast<double>(k + 1);
    point.abs_error = std::abs(point.per_sample_bits - run.limit_bits);
    run.points.push_back(point);
  }
  return run;
}

AuditReport empirical_mask_audit(const MaskDesign& design, const CovarianceMatrix& cov_x,
                                 std::size_t num_paths, std::uint64_t seed,
                                 std::string design_ref) {
  if (design.regime != MaskRegime::FiniteTime ||
      !std::holds_alternative<CovarianceMatrix>(design.noise_spec)) {
    throw_error(ErrorCode::InvalidArgument, "audit requires a finite-time design");
  }
  const auto& cov_n = std::get<CovarianceMatrix>(design.noise_spec);
  if (cov_n.dim() != cov_x.dim()) {
    throw_error(ErrorCode::InvalidArgument, "design and data covariance dimensions differ");
  }
  if (num_paths < 2) {
    throw_error(ErrorCode::InvalidArgument, "audit needs at least 2 paths");
  }

  const SampleBatch data = sample_gaussian(cov_x, num_paths, seed, /*stream=*/0);
  const SampleBatch mask = sample_gaussian(cov_n, num_paths, seed, /*stream=*/1);

  std::vector<double> per_path(num_paths);
  for (std::size_t p = 0; p < num_paths; ++p) {
    per_path[p] = mask.data.row(static_cast<Eigen::Index>(p)).squaredNorm();
  }

  AuditReport report;
  report.design_ref = std::move(design_ref);
  report.empirical_distortion = pairwise_mean(per_path);
  report.empirical_mi_bits = exact_mi_gaussian(CovarianceMatrix(sample_covariance(data.data)),
                                               CovarianceMatrix(sample_covariance(mask.data)));
  report.num_paths = num_paths;
  report.seed = seed;
  return report;
}

}  // namespace leakwise::sim
