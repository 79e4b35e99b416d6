#pragma once

#include <cstddef>
#include <span>

namespace leakwise {

/// Sums a span with a fixed pairwise reduction tree. The tree depends only on
/// the length, so results are reproducible regardless of how the values were
/// produced, and rounding error grows like O(log n) instead of O(n).
double pairwise_sum(std::span<const double> values);

/// pairwise_sum(values) / values.size(); 0 for an empty span.
double pairwise_mean(std::span<const double> values);

}  // namespace leakwise
