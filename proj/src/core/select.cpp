#include "select.hpp"

#include <stdexcept>
#include <utility>

#include "mt19937.hpp"

namespace ordstat {

namespace {

struct NoCounts {
    static void exit_test(std::size_t) {}
    static void data_comparison(std::size_t) {}
    static void branch_test(std::size_t) {}
    static void position_increment(std::size_t) {}
};

struct Tally {
    ComparisonCounts *c;
    void exit_test(std::size_t n) const { c->exit_tests += n; }
    void data_comparison(std::size_t n) const { c->data_comparisons += n; }
    void branch_test(std::size_t n) const { c->branch_tests += n; }
    void position_increment(std::size_t n) const { c->position_increments += n; }
};

// Core loop, 0-based cursors. The scan runs through the right sentinel,
// which holds the pivot after the swap; the strict < keeps that pass a
// no-op, and the comparison is part of the tally.
template <typename Counter>
double select_loop(std::span<double> a, std::size_t k0, Counter cnt) {
    std::size_t left = 0;
    std::size_t right = a.size() - 1;
    bool done = false;
    while (!done) {
        cnt.exit_test(1);
        const double pivot = a[k0];
        a[k0] = a[right];
        a[right] = pivot;
        std::size_t position = left;
        cnt.data_comparison(right - left + 1);
        for (std::size_t i = left; i <= right; ++i) {
            if (a[i] < pivot) {
                std::swap(a[i], a[position]);
                ++position;
            }
        }
        cnt.position_increment(position - left);
        a[right] = a[position];
        a[position] = pivot;
        cnt.branch_test(1);
        if (position < k0)
            left = position + 1;
        else
            right = position - 1; // may wrap when position == 0; unused then
        done = position == k0;
    }
    return a[k0];
}

template <typename Counter>
double select_impl(std::span<double> data, std::size_t k,
                   std::optional<std::size_t> oracle, bool shuffle,
                   Mt19937 *rng, Counter cnt) {
    const std::size_t n = data.size();
    if (n == 0)
        throw std::invalid_argument("select_kth: empty buffer");
    if (k < 1 || k > n)
        throw std::invalid_argument("select_kth: rank out of range");
    if (shuffle) {
        if (!rng)
            throw std::invalid_argument("select_kth: shuffle requires an rng");
        backward_shuffle(data, *rng);
    }
    if (oracle) {
        if (*oracle < 1 || *oracle > n)
            throw std::invalid_argument("select_kth: oracle index out of range");
        std::swap(data[*oracle - 1], data[k - 1]);
    }
    return select_loop(data, k - 1, cnt);
}

} // namespace

double select_kth(std::span<double> data, std::size_t k,
                  std::optional<std::size_t> oracle, bool shuffle,
                  Mt19937 *rng) {
    return select_impl(data, k, oracle, shuffle, rng, NoCounts{});
}

double select_kth_counted(std::span<double> data, std::size_t k,
                          ComparisonCounts &counts,
                          std::optional<std::size_t> oracle, bool shuffle,
                          Mt19937 *rng) {
    return select_impl(data, k, oracle, shuffle, rng, Tally{&counts});
}

std::size_t partition_step(std::span<double> data, std::size_t left,
                           std::size_t right, std::size_t k) {
    const std::size_t n = data.size();
    if (left < 1 || right > n || left > right || k < left || k > right)
        throw std::invalid_argument("partition_step: cursor ordering violated");
    const std::size_t l = left - 1, r = right - 1, k0 = k - 1;
    const double pivot = data[k0];
    data[k0] = data[r];
    data[r] = pivot;
    std::size_t position = l;
    for (std::size_t i = l; i <= r; ++i) {
        if (data[i] < pivot) {
            std::swap(data[i], data[position]);
            ++position;
        }
    }
    data[r] = data[position];
    data[position] = pivot;
    return position + 1;
}

void backward_shuffle(std::span<double> data, Mt19937 &rng) {
    for (std::size_t i = data.size(); i > 1; --i) {
        const std::size_t j = rng.uniform_int(i); // 1..i
        std::swap(data[i - 1], data[j - 1]);
    }
}

} // namespace ordstat
