#include "leakwise/numeric.hpp"

namespace leakwise {

namespace {

double pairwise_sum_impl(std::span<const double> values) {
  if (values.size() <= 8) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum_impl(values.first(half)) + pairwise_sum_impl(values.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise_sum_impl(values); }

double pairwise_mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return pairwise_sum_impl(values) / static_cast<double>(values.size());
}

}  // namespace leakwise
