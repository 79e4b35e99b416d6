#pragma once

#include "leakwise/allocation.hpp"
#include "leakwise/mask.hpp"
#include "leakwise/spectral.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace leakwise::sim {

/// Philox 4x32-10 counter-based generator. Stateless: every 128-bit counter
/// maps to four independent 32-bit words under a 64-bit key, so substreams
/// can be assigned per path without coordination.
class Philox4x32 {
 public:
  explicit Philox4x32(std::uint64_t key);

  std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter) const;

 private:
  std::uint32_t key0_;
  std::uint32_t key1_;
};

/// Fills `out` with standard normals drawn from the (seed, stream, path)
/// substream. Independent of call order and of any other substream.
void fill_path_normals(std::uint64_t seed, std::uint32_t stream, std::uint64_t path,
                       std::span<double> out);

struct SampleBatch {
  std::size_t num_paths = 0;
  std::size_t horizon = 0;  // K+1
  Eigen::MatrixXd data;     // num_paths x horizon
  std::uint64_t seed = 0;
};

/// Independent draws with the given covariance via its symmetric square
/// root. `stream` separates batches that must be independent under one seed.
SampleBatch sample_gaussian(const CovarianceMatrix& cov, std::size_t num_paths,
                            std::uint64_t seed, std::uint32_t stream = 0);

/// Mutual information between jointly Gaussian x and y = x + n in bits:
/// (1/2) log2(det(cov_x + cov_n) / det(cov_n)). cov_n must be positive
/// definite (SingularNoise otherwise).
double exact_mi_gaussian(const CovarianceMatrix& cov_x, const CovarianceMatrix& cov_n);

struct BruteForceResult {
  Allocation allocation;
  double objective_bits = 0.0;
};

/// Exhaustive simplex grid over {N : sum N_i = budget, N_i >= grid_step}
/// minimizing sum (1/2) log2(1 + weights[i]/N_i). Oracle for the Lagrangian
/// allocation; capped at 3 components (TooManyComponents beyond).
BruteForceResult brute_force_allocation(std::span<const double> weights, double budget,
                                        double grid_step);

struct SzegoPoint {
  std::size_t horizon = 0;  // K
  double per_sample_bits = 0.0;
  double abs_error = 0.0;
};

struct SzegoRun {
  std::vector<SzegoPoint> points;
  double limit_bits = 0.0;
};

/// Builds Toeplitz covariances of growing dimension from s_x, designs the
/// finite-time mask at budget (K+1)*noise_budget, and tracks how the
/// per-sample leakage approaches the stationary integral value.
SzegoRun szego_convergence(const SpectralDensity& s_x, double noise_budget,
                           std::span<const std::size_t> horizons);

struct AuditReport {
  std::string design_ref;
  double empirical_distortion = 0.0;
  double empirical_mi_bits = 0.0;
  std::size_t num_paths = 0;
  std::uint64_t seed = 0;
};

/// End-to-end check of a finite-time design: samples x and n independently,
/// forms xbar = x + n, and estimates the distortion (mean per-path sum of
/// squared mask values) and the plug-in Gaussian MI from sample covariances.
AuditReport empirical_mask_audit(const MaskDesign& design, const CovarianceMatrix& cov_x,
                                 std::size_t num_paths, std::uint64_t seed,
                                 std::string design_ref = {});

}  // namespace leakwise::sim
