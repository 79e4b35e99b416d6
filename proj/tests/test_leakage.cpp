#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "leakwise/errors.hpp"
#include "leakwise/leakage.hpp"
#include "leakwise/numeric.hpp"
#include "leakwise/sim.hpp"
#include "leakwise/spectral.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace leakwise;

namespace {

SpectralDensity ar1_spectrum(std::size_t grid_points) {
  ArmaModel model;
  model.ar_coeffs = {-0.5};
  model.innovation_variance = 1.0;
  return arma_spectrum(model, FrequencyGrid(grid_points));
}

// Frozen from the 200-step water-level scan at M = 4096 (identical at
// M = 64; the spectrum is smooth, so the quadrature converges immediately).
constexpr double kAr1LeakageAtHalf = 0.823450686843;
constexpr double kAr1Zeta = 3.041277543638;

FadingModel on_off_fading() { return FadingModel({0.0, 2.0}, {0.5, 0.5}); }

}  // namespace

TEST_CASE("white leakage closed form") {
  CHECK(leakage_white(1.0, 1.0).value_bits == 0.5);
  CHECK(leakage_white(3.0, 1.0).value_bits == 1.0);
  CHECK(leakage_white(1.0, 1e12).value_bits <= 1e-12);
  CHECK_THROWS_AS(leakage_white(0.0, 1.0), Error);
  CHECK_THROWS_AS(leakage_white(1.0, 0.0), Error);
}

TEST_CASE("colored leakage") {
  SUBCASE("flat spectrum reduces to the white formula") {
    auto s = SpectralDensity::flat(FrequencyGrid(512), 1.0);
    CHECK(leakage_colored(s, 1.0).value_bits == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("AR(1) golden value") {
    auto report = leakage_colored(ar1_spectrum(4096), 0.5);
    CHECK(report.value_bits == doctest::Approx(kAr1LeakageAtHalf).epsilon(1e-9));
    CHECK(report.allocation->water_level == doctest::Approx(kAr1Zeta).epsilon(1e-9));
  }
  SUBCASE("value recomputes from the allocation") {
    auto s = ar1_spectrum(256);
    auto report = leakage_colored(s, 0.7);
    std::vector<double> terms(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      terms[j] = 0.5 * std::log2(1.0 + s.values()[j] / report.allocation->powers[j]);
    }
    CHECK(pairwise_mean(terms) == doctest::Approx(report.value_bits).epsilon(1e-9));
  }
  SUBCASE("strictly decreasing in the budget") {
    auto s = ar1_spectrum(256);
    double previous = std::numeric_limits<double>::infinity();
    for (double budget = 0.1; budget <= 2.05; budget += 0.1) {
      const double value = leakage_colored(s, budget).value_bits;
      CHECK(value < previous);
      previous = value;
    }
  }
  SUBCASE("spectral nulls carry no leakage") {
    SpectralDensity s(FrequencyGrid(4), {0.0, 2.0, 4.0, 2.0});
    auto report = leakage_colored(s, 0.5);
    CHECK(report.allocation->powers[0] == 0.0);
    CHECK(std::isfinite(report.value_bits));
  }
  SUBCASE("errors") {
    auto s = SpectralDensity::flat(FrequencyGrid(8), 0.0);
    CHECK_THROWS_AS(leakage_colored(s, 1.0), Error);
    CHECK_THROWS_AS(leakage_colored(ar1_spectrum(8), 0.0), Error);
  }
}

TEST_CASE("parallel leakage") {
  SUBCASE("two symmetric channels") {
    std::vector<double> eigenvalues{1.0, 1.0};
    auto report = leakage_parallel(eigenvalues, 0.5);
    CHECK(report.value_bits == doctest::Approx(std::log2(5.0)).epsilon(1e-10));
  }
  SUBCASE("single channel reduces to white") {
    std::vector<double> eigenvalues{1.0};
    CHECK(leakage_parallel(eigenvalues, 1.0).value_bits ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("heterogeneous channels agree with the grid oracle") {
    std::vector<double> eigenvalues{1.0, 4.0};
    auto report = leakage_parallel(eigenvalues, 1.0);
    auto oracle = sim::brute_force_allocation(eigenvalues, 1.0, 1e-4);
    CHECK(report.value_bits <= oracle.objective_bits + 1e-3);
    CHECK(report.value_bits == doctest::Approx(oracle.objective_bits).epsilon(1e-3));
  }
}

TEST_CASE("output-power-constrained leakage") {
  SUBCASE("flat input equals the noise-budget form") {
    auto s = SpectralDensity::flat(FrequencyGrid(64), 1.0);
    auto report = leakage_output_constrained(s, 2.0);
    CHECK(report.value_bits ==
          doctest::Approx(leakage_colored(s, 1.0).value_bits).epsilon(1e-12));
    CHECK(report.constraint == ConstraintKind::OutputPower);
    CHECK(report.budget == 2.0);
  }
  SUBCASE("vanishing noise headroom blows up but stays finite") {
    auto s = SpectralDensity::flat(FrequencyGrid(64), 1.0);
    auto report = leakage_output_constrained(s, 1.0 + 1e-9);
    CHECK(report.value_bits > 10.0);
    CHECK(std::isfinite(report.value_bits));
  }
  SUBCASE("no headroom is an error") {
    auto s = SpectralDensity::flat(FrequencyGrid(64), 1.0);
    CHECK_THROWS_AS(leakage_output_constrained(s, 1.0), Error);
    CHECK_THROWS_AS(leakage_output_constrained(s, 0.5), Error);
  }
}

TEST_CASE("fading leakage") {
  SUBCASE("constant fading collapses to white") {
    FadingModel constant({1.0}, {1.0});
    CHECK(leakage_fading(constant, 1.0, 1.0, false).value_bits ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(leakage_fading(constant, 1.0, 1.0, true).value_bits ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("on-off fading without side information") {
    auto report = leakage_fading(on_off_fading(), 1.0, 1.0, false);
    CHECK(report.value_bits == doctest::Approx(0.25 * std::log2(3.0)).epsilon(1e-12));
  }
  SUBCASE("on-off fading with side information routes all noise to the active state") {
    auto report = leakage_fading(on_off_fading(), 1.0, 1.0, true);
    CHECK(report.value_bits == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(report.allocation->water_level == doctest::Approx(16.0).epsilon(1e-9));
    CHECK(report.allocation->powers[0] == 0.0);
    CHECK(report.allocation->powers[1] == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("side information never hurts") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> gain_dist(0.0, 4.0);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<double> gains{gain_dist(rng), gain_dist(rng), gain_dist(rng) + 0.1};
      std::vector<double> raw{unit(rng), unit(rng), unit(rng)};
      const double total = raw[0] + raw[1] + raw[2];
      for (double& p : raw) p /= total;
      FadingModel fading(gains, raw);
      const double sigma_sq = unit(rng) * 3.0;
      const double budget = unit(rng) * 2.0;
      const double with_si = leakage_fading(fading, sigma_sq, budget, true).value_bits;
      const double without = leakage_fading(fading, sigma_sq, budget, false).value_bits;
      CHECK(with_si <= without + 1e-9);
    }
  }
  SUBCASE("degenerate model rejected") {
    CHECK_THROWS_AS(FadingModel({0.0, 0.0}, {0.5, 0.5}), Error);
    CHECK_THROWS_AS(FadingModel({1.0}, {0.5}), Error);
  }
}

TEST_CASE("fading leakage with output power") {
  SUBCASE("constant fading") {
    FadingModel constant({1.0}, {1.0});
    CHECK(leakage_fading_output(constant, 1.0, 2.0, false).value_bits ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("reduces to the noise-budget form") {
    // E|h|^2 = 1, so Y = 2 leaves a unit noise budget.
    auto report = leakage_fading_output(on_off_fading(), 1.0, 2.0, false);
    CHECK(report.value_bits == doctest::Approx(0.25 * std::log2(3.0)).epsilon(1e-12));
  }
  SUBCASE("boundary rejected") {
    CHECK_THROWS_AS(leakage_fading_output(on_off_fading(), 1.0, 1.0, false), Error);
  }
}

TEST_CASE("capacity") {
  SUBCASE("white closed form") {
    CHECK(capacity_white(1.0, 1.0).value_bits == 0.5);
    CHECK(capacity_white(3.0, 1.0).value_bits == 1.0);
    CHECK(capacity_white(2.0, 1.0).value_bits == leakage_white(2.0, 1.0).value_bits);
  }
  SUBCASE("flat colored noise") {
    auto s = SpectralDensity::flat(FrequencyGrid(64), 1.0);
    CHECK(capacity_colored(s, 1.0).value_bits == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("two-level noise fills only the quiet half") {
    // Mean budget 1 over levels (1, 3): zeta = 3, power (2, 0), so the
    // capacity is (1/2) * (1/2) log2(3).
    SpectralDensity s(FrequencyGrid(2), {1.0, 3.0});
    auto report = capacity_colored(s, 1.0);
    CHECK(report.allocation->powers[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(report.allocation->powers[1] == 0.0);
    CHECK(report.value_bits == doctest::Approx(0.25 * std::log2(3.0)).epsilon(1e-10));
  }
  SUBCASE("capacity vanishes with the budget") {
    auto s = SpectralDensity::flat(FrequencyGrid(64), 1.0);
    CHECK(capacity_colored(s, 1e-9).value_bits < 1e-8);
  }
  SUBCASE("zero-noise frequency rejected") {
    SpectralDensity s(FrequencyGrid(4), {0.0, 1.0, 2.0, 1.0});
    CHECK_THROWS_AS(capacity_colored(s, 1.0), Error);
  }
  SUBCASE("fading capacity") {
    FadingModel constant({1.0}, {1.0});
    CHECK(capacity_fading(constant, 1.0, 1.0, false).value_bits ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(capacity_fading(constant, 1.0, 1.0, true).value_bits ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(capacity_fading(on_off_fading(), 1.0, 1.0, false).value_bits ==
          doctest::Approx(0.25 * std::log2(3.0)).epsilon(1e-12));
  }
  SUBCASE("transmitter side information never hurts") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<double> gains{unit(rng) * 3.0, unit(rng) * 3.0};
      const double p0 = unit(rng);
      FadingModel fading(gains, {p0, 1.0 - p0});
      const double with_si = capacity_fading(fading, 1.0, 0.8, true).value_bits;
      const double without = capacity_fading(fading, 1.0, 0.8, false).value_bits;
      CHECK(with_si >= without - 1e-9);
    }
  }
}

TEST_CASE("entropy power identity for Gaussian pairs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double sigma_sq = dist(rng);
    const double noise = dist(rng);
    const double mi_xy = leakage_white(sigma_sq, noise).value_bits;
    const double mi_zy = 0.5 * std::log2(1.0 + noise / sigma_sq);
    CHECK(std::abs(mi_xy + 0.5 * std::log2(1.0 - std::exp2(-2.0 * mi_zy))) <= 1e-10);
  }
}

TEST_CASE("leakage never exceeds matched capacity") {
  SUBCASE("white against white is an equality") {
    auto flat_x = SpectralDensity::flat(FrequencyGrid(128), 1.0);
    auto flat_z = SpectralDensity::flat(FrequencyGrid(128), 1.0);
    auto cmp = compare_leakage_capacity(flat_x, flat_z, 1.0, 1.0);
    CHECK(cmp.leakage_bits == doctest::Approx(cmp.capacity_bits).epsilon(1e-9));
    CHECK(cmp.leakage_le_capacity);
  }
  SUBCASE("colored input against white noise has a strict gap") {
    auto s_x = ar1_spectrum(512);
    auto s_z = SpectralDensity::flat(FrequencyGrid(512), 0.8);
    auto cmp = compare_leakage_capacity(s_x, s_z);
    CHECK(cmp.leakage_le_capacity);
    CHECK(cmp.capacity_bits - cmp.leakage_bits > 1e-6);
  }
  SUBCASE("randomized matched instances") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coeff(0.0, 0.4);
    std::uniform_real_distribution<double> base(1.0, 3.0);
    FrequencyGrid grid(128);
    auto random_spectrum = [&]() {
      const double c0 = base(rng);
      const double c1 = coeff(rng);
      const double c2 = coeff(rng);
      std::vector<double> values(grid.num_points());
      for (std::size_t j = 0; j < values.size(); ++j) {
        values[j] = c0 + c1 * std::cos(grid.omega(j)) + c2 * std::cos(2.0 * grid.omega(j));
      }
      return SpectralDensity(grid, values);
    };
    for (int trial = 0; trial < 25; ++trial) {
      auto cmp = compare_leakage_capacity(random_spectrum(), random_spectrum());
      CHECK(cmp.leakage_bits <= cmp.capacity_bits + 1e-9);
    }
  }
  SUBCASE("moment mismatch rejected") {
    auto flat = SpectralDensity::flat(FrequencyGrid(64), 1.0);
    CHECK_THROWS_AS(compare_leakage_capacity(flat, flat, 2.0, std::nullopt), Error);
    CHECK_THROWS_AS(compare_leakage_capacity(flat, flat, std::nullopt, 0.5), Error);
  }
}

TEST_CASE("flat-spectrum reduction across random parameters") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> sigma_dist(0.5, 4.0);
  std::uniform_real_distribution<double> noise_dist(0.25, 4.0);
  FrequencyGrid grid(1024);
  for (int trial = 0; trial < 10; ++trial) {
    const double sigma_sq = sigma_dist(rng);
    const double noise = noise_dist(rng);
    const double colored =
        leakage_colored(SpectralDensity::flat(grid, sigma_sq), noise).value_bits;
    const double white = leakage_white(sigma_sq, noise).value_bits;
    CHECK(std::abs(colored - white) <= 1e-10);
  }
}
