#include "weighted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "running_sum.hpp"

namespace ordstat {

namespace {

// Fixed-pivot selection on value/weight rows over [left..right] (0-based
// inclusive) with pivot position k. Rows are swapped as pairs.
void select_rows(std::span<double> vals, std::span<double> wts,
                 std::size_t left, std::size_t right, std::size_t k) {
    bool done = false;
    while (!done) {
        const double pv = vals[k];
        const double pw = wts[k];
        vals[k] = vals[right];
        wts[k] = wts[right];
        vals[right] = pv;
        wts[right] = pw;
        std::size_t position = left;
        for (std::size_t i = left; i <= right; ++i) {
            if (vals[i] < pv) {
                std::swap(vals[i], vals[position]);
                std::swap(wts[i], wts[position]);
                ++position;
            }
        }
        vals[right] = vals[position];
        wts[right] = wts[position];
        vals[position] = pv;
        wts[position] = pw;
        if (position < k)
            left = position + 1;
        else if (position > k)
            right = position - 1;
        done = position == k;
    }
}

void check_weights(std::span<const double> values,
                   std::span<const double> weights, double p) {
    if (values.empty() || values.size() != weights.size())
        throw std::invalid_argument("weighted_percentile: bad row count");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("weighted_percentile: p outside [0,1]");
    for (double w : weights)
        if (!(w >= 0.0))
            throw std::invalid_argument("weighted_percentile: negative weight");
}

// Total in input order; the oracle and the selection normalize identically.
double total_weight(std::span<const double> weights) {
    double tot = 0.0;
    for (double w : weights)
        tot += w;
    if (!(tot > 0.0))
        throw std::invalid_argument("weighted_percentile: zero total weight");
    return tot;
}

} // namespace

WeightedResult weighted_percentile(std::span<double> values,
                                   std::span<double> weights, double p) {
    check_weights(values, weights, p);
    const std::size_t n = values.size();
    const double tot = total_weight(weights);
    for (double &w : weights)
        w /= tot;

    if (p == 0.0) { // ceil(n*p) clamps to rank 1
        select_rows(values, weights, 0, n - 1, 0);
        return {values[0], weights[0], 1};
    }

    std::size_t k = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * p));
    k = std::clamp<std::size_t>(k, 1, n) - 1; // 0-based
    std::size_t left = 0;
    std::size_t right = n - 1;

    // Balance walk. The prefix sums feeding the accept/move decisions are
    // accumulated error-free so the same row multiset always compares the
    // same way against p, whatever order the kernel left it in; without
    // that the acceptance window can close and the walk cycles.
    for (std::size_t iter = 0; iter <= n; ++iter) {
        select_rows(values, weights, left, right, k);
        RunningSum before_k; // weight strictly before k
        for (std::size_t i = 0; i < k; ++i)
            before_k.add(weights[i]);
        RunningSum through_k = before_k;
        through_k.add(weights[k]);
        const bool lo_ok = before_k.compare(p) < 0;
        const bool hi_ok = through_k.compare(p) >= 0;
        if ((lo_ok && hi_ok) || (lo_ok && k == n - 1)) {
            // top row accepted even if rounding left the normalized total
            // a hair under p
            return {values[k], weights[k], k + 1};
        }
        if (!lo_ok) {
            --k; // overshoot: drop the largest prefix row
            left = 0;
            right = k;
        } else {
            ++k; // undershoot: extend past the current row
            left = k;
            right = n - 1;
        }
        if (k >= n)
            throw std::runtime_error("weighted_percentile: balance walk left the rank range");
    }
    throw std::runtime_error("weighted_percentile: balance walk failed to settle");
}

double weighted_median(std::span<const double> values,
                       std::span<const double> weights) {
    std::vector<double> v(values.begin(), values.end());
    std::vector<double> w(weights.begin(), weights.end());
    return weighted_percentile(v, w, 0.5).value;
}

double weighted_percentile_oracle(std::span<const double> values,
                                  std::span<const double> weights, double p) {
    check_weights(values, weights, p);
    const std::size_t n = values.size();
    const double tot = total_weight(weights);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    if (p == 0.0)
        return values[order[0]];
    RunningSum run;
    for (std::size_t r = 0; r < n; ++r) {
        run.add(weights[order[r]] / tot);
        if (run.compare(p) >= 0)
            return values[order[r]];
    }
    return values[order[n - 1]];
}

} // namespace ordstat
