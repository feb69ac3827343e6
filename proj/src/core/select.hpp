#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace ordstat {

class Mt19937;

/// Tallies of the three comparison sites of the selection loop plus the
/// pivot-position increments. exit_tests counts outer-loop admissions,
/// data_comparisons the element-vs-pivot tests of the scan (the scan runs
/// through the pivot cell, whose self-comparison is always false),
/// branch_tests the cursor-update branches.
struct ComparisonCounts {
    std::uint64_t exit_tests = 0;
    std::uint64_t data_comparisons = 0;
    std::uint64_t branch_tests = 0;
    std::uint64_t position_increments = 0;

    std::uint64_t total() const {
        return exit_tests + data_comparisons + branch_tests;
    }
};

/// k-th smallest (1-based) of data, permuting the buffer in place so that
/// data[i] <= data[k-1] for i < k-1 and data[k-1] <= data[i] for i > k-1.
///
/// The pivot position stays fixed at k; values are swapped around it until
/// the rank condition holds. An oracle index (1-based) is swapped into
/// position k first and never changes the result. With shuffle set the
/// buffer is backward-shuffled before selection (rng required).
double select_kth(std::span<double> data, std::size_t k,
                  std::optional<std::size_t> oracle = std::nullopt,
                  bool shuffle = false, Mt19937 *rng = nullptr);

/// As select_kth, also filling the comparison breakdown.
double select_kth_counted(std::span<double> data, std::size_t k,
                          ComparisonCounts &counts,
                          std::optional<std::size_t> oracle = std::nullopt,
                          bool shuffle = false, Mt19937 *rng = nullptr);

/// One partition pass over data[left..right] (1-based, inclusive) with the
/// pivot taken from position k (left <= k <= right). On return values
/// strictly below the pivot occupy [left, position-1] and the pivot sits at
/// the returned position.
std::size_t partition_step(std::span<double> data, std::size_t left,
                           std::size_t right, std::size_t k);

/// Fisher-Yates backward shuffle: draws n-1 swap positions from the last
/// index down.
void backward_shuffle(std::span<double> data, Mt19937 &rng);

} // namespace ordstat
