#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "leakwise/allocation.hpp"
#include "leakwise/errors.hpp"
#include "leakwise/numeric.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace leakwise;

namespace {

double objective_bits(std::span<const double> weights, std::span<const double> powers) {
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += 0.5 * std::log2(1.0 + weights[i] / powers[i]);
  }
  return total;
}

// Golden values for weights (1, 4), sum budget 1, frozen from an exhaustive
// grid search (step 1e-4) cross-checked by a 200-step scan on the water
// level: objective 2.368007740846 bits.
constexpr double kZeta14 = 2.545827892286;
constexpr double kNoise14Low = 0.441518440112;
constexpr double kNoise14High = 0.558481559888;

}  // namespace

TEST_CASE("obfuscating allocation") {
  SUBCASE("symmetric weights split evenly") {
    std::vector<double> weights{1.0, 1.0};
    auto a = obfuscating_allocation(weights, 0.5, BudgetMode::Sum);
    CHECK(a.powers[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(a.powers[1] == doctest::Approx(0.25).epsilon(1e-12));
    // zeta must reproduce the per-component profile.
    CHECK(obfuscating_noise(a.water_level, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("heterogeneous weights match the grid-search golden values") {
    std::vector<double> weights{1.0, 4.0};
    auto a = obfuscating_allocation(weights, 1.0, BudgetMode::Sum);
    CHECK(a.water_level == doctest::Approx(kZeta14).epsilon(1e-9));
    CHECK(a.powers[0] == doctest::Approx(kNoise14Low).epsilon(1e-9));
    CHECK(a.powers[1] == doctest::Approx(kNoise14High).epsilon(1e-9));
    CHECK(a.powers[1] > a.powers[0]);  // more noise on the stronger component
  }
  SUBCASE("flat weights in mean mode give the budget everywhere") {
    std::vector<double> weights(64, 1.7);
    auto a = obfuscating_allocation(weights, 0.4, BudgetMode::Mean);
    for (double p : a.powers) CHECK(p == doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("zero weights get zero noise") {
    std::vector<double> weights{0.0, 2.0, 0.0};
    auto a = obfuscating_allocation(weights, 1.0, BudgetMode::Sum);
    CHECK(a.powers[0] == 0.0);
    CHECK(a.powers[2] == 0.0);
    CHECK(a.powers[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("errors") {
    std::vector<double> ok{1.0};
    std::vector<double> zeros{0.0, 0.0};
    CHECK_THROWS_AS(obfuscating_allocation(ok, 0.0, BudgetMode::Sum), Error);
    CHECK_THROWS_AS(obfuscating_allocation(ok, -1.0, BudgetMode::Sum), Error);
    CHECK_THROWS_AS(obfuscating_allocation(zeros, 1.0, BudgetMode::Sum), Error);
  }
}

TEST_CASE("water filling") {
  SUBCASE("equal noise splits evenly") {
    std::vector<double> noise{1.0, 1.0};
    auto a = water_filling(noise, 2.0, BudgetMode::Sum);
    CHECK(a.powers[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.powers[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.water_level == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("deep noise stays dry") {
    // zeta = 2: max(0, 2-1) + max(0, 2-3) = 1.
    std::vector<double> noise{1.0, 3.0};
    auto a = water_filling(noise, 1.0, BudgetMode::Sum);
    CHECK(a.powers[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(a.powers[1] == 0.0);
    CHECK(a.water_level == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("three equal levels") {
    std::vector<double> noise{0.5, 0.5, 0.5};
    auto a = water_filling(noise, 1.5, BudgetMode::Sum);
    for (double p : a.powers) CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("complementary slackness") {
    std::vector<double> noise{0.2, 1.1, 2.7, 0.9};
    auto a = water_filling(noise, 2.0, BudgetMode::Sum);
    for (std::size_t i = 0; i < noise.size(); ++i) {
      if (a.powers[i] > 0.0) {
        CHECK(a.powers[i] + noise[i] == doctest::Approx(a.water_level).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("reverse water filling") {
  SUBCASE("symmetric") {
    std::vector<double> variances{1.0, 1.0};
    auto a = reverse_water_filling(variances, 1.0);
    CHECK(a.powers[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.powers[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.water_level == doctest::Approx(0.5).epsilon(1e-10));
  }
  SUBCASE("small variance saturates") {
    // min(zeta, 0.3) + min(zeta, 2) = 1 -> zeta = 0.7.
    std::vector<double> variances{0.3, 2.0};
    auto a = reverse_water_filling(variances, 1.0);
    CHECK(a.powers[0] == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(a.powers[1] == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(a.water_level == doctest::Approx(0.7).epsilon(1e-10));
  }
  SUBCASE("distortion equal to the total variance") {
    std::vector<double> variances{1.0};
    auto a = reverse_water_filling(variances, 1.0);
    CHECK(a.powers[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("distortion above the total variance rejected") {
    std::vector<double> variances{0.5, 0.5};
    CHECK_THROWS_AS(reverse_water_filling(variances, 1.5), Error);
  }
}

TEST_CASE("water level solver") {
  SUBCASE("identity map") {
    CHECK(solve_water_level([](double z) { return z; }, 3.0) ==
          doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("linear map") {
    CHECK(solve_water_level([](double z) { return 0.5 * z; }, 1.0) ==
          doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("obfuscating total reproduces the golden water level") {
    std::vector<double> weights{1.0, 4.0};
    auto total = [&](double z) {
      return obfuscating_noise(z, weights[0]) + obfuscating_noise(z, weights[1]);
    };
    CHECK(solve_water_level(total, 1.0) == doctest::Approx(kZeta14).epsilon(1e-9));
  }
  SUBCASE("unreachable target") {
    CHECK_THROWS_AS(solve_water_level([](double z) { return std::min(z, 1.0); }, 2.0), Error);
  }
  SUBCASE("decreasing map detected") {
    CHECK_THROWS_AS(solve_water_level([](double z) { return -z; }, 1.0), Error);
  }
}

TEST_CASE("allocation properties on random instances") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> weight_dist(0.1, 5.0);
  std::uniform_real_distribution<double> budget_dist(0.2, 2.0);
  std::uniform_int_distribution<int> size_dist(2, 6);

  for (int trial = 0; trial < 60; ++trial) {
    const int m = size_dist(rng);
    std::vector<double> weights(static_cast<std::size_t>(m));
    for (double& w : weights) w = weight_dist(rng);
    const double budget = budget_dist(rng);
    auto a = obfuscating_allocation(weights, budget, BudgetMode::Sum);

    // Budget conservation.
    CHECK(a.residual <= 1e-9 * std::max(1.0, budget));

    // Monotonicity: larger weights get at least as much noise.
    for (std::size_t i = 0; i < weights.size(); ++i) {
      for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[i] >= weights[k]) CHECK(a.powers[i] >= a.powers[k] - 1e-12);
      }
    }

    // Stationarity: the marginal rate 1/N_i - 1/(N_i + w_i) is equalized.
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const double marginal = 1.0 / a.powers[i] - 1.0 / (a.powers[i] + weights[i]);
      lo = std::min(lo, marginal);
      hi = std::max(hi, marginal);
    }
    CHECK((hi - lo) / hi <= 1e-8);

    // Homogeneity: scaling weights and budget scales the allocation.
    const double c = 1.0 + weight_dist(rng);
    std::vector<double> scaled(weights);
    for (double& w : scaled) w *= c;
    auto b = obfuscating_allocation(scaled, c * budget, BudgetMode::Sum);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      CHECK(b.powers[i] == doctest::Approx(c * a.powers[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("water filling properties on random instances") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> level_dist(0.1, 3.0);
  std::uniform_real_distribution<double> budget_dist(0.2, 2.0);

  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> noise(5);
    for (double& s : noise) s = level_dist(rng);
    const double budget = budget_dist(rng);
    auto a = water_filling(noise, budget, BudgetMode::Sum);
    CHECK(a.residual <= 1e-9 * std::max(1.0, budget));
    // Reverse monotonicity: quieter components get at least as much power.
    for (std::size_t i = 0; i < noise.size(); ++i) {
      for (std::size_t k = 0; k < noise.size(); ++k) {
        if (noise[i] <= noise[k]) CHECK(a.powers[i] >= a.powers[k] - 1e-12);
      }
    }
  }
}

TEST_CASE("objective sanity against direct perturbation") {
  std::vector<double> weights{1.0, 4.0};
  auto a = obfuscating_allocation(weights, 1.0, BudgetMode::Sum);
  const double optimal = objective_bits(weights, a.powers);
  // Feasible perturbations along the budget simplex can only do worse.
  for (double shift : {-0.2, -0.05, 0.05, 0.2}) {
    std::vector<double> perturbed{a.powers[0] + shift, a.powers[1] - shift};
    if (perturbed[0] <= 0.0 || perturbed[1] <= 0.0) continue;
    CHECK(objective_bits(weights, perturbed) >= optimal - 1e-12);
  }
}
