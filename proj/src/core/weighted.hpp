#pragma once

#include <cstddef>
#include <span>

namespace ordstat {

/// Result of a weighted percentile: the selected row value, its normalized
/// weight, and its 1-based index kstar into the permuted rows. With
/// L = sum of normalized weights before kstar, the balance condition
/// L <= p <= L + weight_at_k holds, and kstar is the smallest index whose
/// running weight crosses p (lower-percentile policy).
struct WeightedResult {
    double value = 0.0;
    double weight_at_k = 0.0;
    std::size_t kstar = 0;
};

/// Weighted percentile of paired rows (values[i], weights[i]), permuted as
/// units in place. Weights must be non-negative with a positive total and
/// are normalized to sum 1 on entry; p must lie in [0,1]. Runs the
/// fixed-pivot selection kernel repeatedly under the weight-balance
/// condition, moving the target rank by one until the running sums
/// straddle p. Expected linear time.
WeightedResult weighted_percentile(std::span<double> values,
                                   std::span<double> weights, double p);

/// Lower weighted median (p = 1/2); operates on copies.
double weighted_median(std::span<const double> values,
                       std::span<const double> weights);

/// Sort-based reference: stable-sort rows by value and return the value at
/// the smallest rank whose running normalized weight sum reaches p.
double weighted_percentile_oracle(std::span<const double> values,
                                  std::span<const double> weights, double p);

} // namespace ordstat
