#include "medcouple.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "select.hpp"
#include "weighted.hpp"

namespace ordstat {

namespace {

struct Entry {
    double value;
    std::size_t tie_rank; // 1..k among median-equal points, 0 otherwise
};

// Kernel matrix frames. Rows run over the upper side (values >= m) in
// descending value order with the median-tied block last, tie ranks
// ascending; columns run over the lower side (values <= m) descending with
// the tied block first, tie ranks descending. This makes H(i,j)
// non-increasing in both indices, and puts the k self-pairs exactly on the
// zero anti-diagonal of the tied block.
struct Frames {
    double m = 0.0;
    std::size_t ties = 0;
    std::vector<Entry> plus;
    std::vector<Entry> minus;

    double at(std::size_t i, std::size_t j) const {
        return medcouple_kernel(minus[j].value, plus[i].value, m,
                                minus[j].tie_rank, plus[i].tie_rank);
    }
};

double sample_median(std::span<const double> values) {
    std::vector<double> buf(values.begin(), values.end());
    const std::size_t n = buf.size();
    if (n % 2 == 1)
        return select_kth(buf, (n + 1) / 2);
    const double lower = select_kth(buf, n / 2);
    double upper = buf[n / 2];
    for (std::size_t i = n / 2 + 1; i < n; ++i)
        upper = std::min(upper, buf[i]);
    return 0.5 * (lower + upper);
}

Frames build_frames(std::span<const double> values) {
    Frames fr;
    fr.m = sample_median(values);
    std::vector<Entry> tied;
    std::vector<Entry> above;
    std::vector<Entry> below;
    for (double v : values) {
        if (v == fr.m)
            tied.push_back({v, tied.size() + 1});
        else if (v > fr.m)
            above.push_back({v, 0});
        else
            below.push_back({v, 0});
    }
    fr.ties = tied.size();
    std::sort(above.begin(), above.end(),
              [](const Entry &a, const Entry &b) { return a.value > b.value; });
    std::sort(below.begin(), below.end(),
              [](const Entry &a, const Entry &b) { return a.value > b.value; });

    fr.plus = above;
    fr.plus.insert(fr.plus.end(), tied.begin(), tied.end()); // rank ascending
    fr.minus = tied;
    std::reverse(fr.minus.begin(), fr.minus.end()); // rank descending
    fr.minus.insert(fr.minus.end(), below.begin(), below.end());
    return fr;
}

// first column index whose entry is < t (row entries are non-increasing)
std::size_t row_lower_bound(const Frames &fr, std::size_t i, double t) {
    std::size_t lo = 0, hi = fr.minus.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (fr.at(i, mid) < t)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// first column index whose entry is <= t
std::size_t row_upper_bound(const Frames &fr, std::size_t i, double t) {
    std::size_t lo = 0, hi = fr.minus.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (fr.at(i, mid) <= t)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// rank-th smallest entry (1-based) of the full P x Q kernel matrix.
double matrix_kth_smallest(const Frames &fr, std::uint64_t rank) {
    const std::size_t P = fr.plus.size();
    const std::size_t Q = fr.minus.size();
    std::vector<std::size_t> L(P, 0), R(P, Q); // [L_i, R_i) candidate windows
    const std::uint64_t gather_limit = std::max<std::uint64_t>(256, 2 * P);

    auto gather = [&]() {
        std::vector<double> cand;
        std::uint64_t smaller_excluded = 0;
        for (std::size_t i = 0; i < P; ++i) {
            smaller_excluded += Q - R[i];
            for (std::size_t j = L[i]; j < R[i]; ++j)
                cand.push_back(fr.at(i, j));
        }
        std::sort(cand.begin(), cand.end());
        const std::uint64_t idx = rank - smaller_excluded;
        if (idx < 1 || idx > cand.size())
            throw std::logic_error("medcouple_fast: rank outside candidate set");
        return cand[idx - 1];
    };

    for (int round = 0; round < 256; ++round) {
        std::uint64_t nc = 0;
        for (std::size_t i = 0; i < P; ++i)
            nc += R[i] - L[i];
        if (nc <= gather_limit)
            return gather();

        std::vector<double> mids;
        std::vector<double> wts;
        mids.reserve(P);
        wts.reserve(P);
        for (std::size_t i = 0; i < P; ++i) {
            if (L[i] < R[i]) {
                mids.push_back(fr.at(i, (L[i] + R[i] - 1) / 2));
                wts.push_back(static_cast<double>(R[i] - L[i]));
            }
        }
        const double trial = weighted_percentile(mids, wts, 0.5).value;

        std::uint64_t less = 0, less_eq = 0;
        std::vector<std::size_t> flt(P), fle(P);
        for (std::size_t i = 0; i < P; ++i) {
            flt[i] = row_lower_bound(fr, i, trial);
            fle[i] = row_upper_bound(fr, i, trial);
            less += Q - flt[i];
            less_eq += Q - fle[i];
        }

        bool changed = false;
        if (rank <= less) {
            for (std::size_t i = 0; i < P; ++i) {
                if (L[i] < flt[i]) {
                    L[i] = std::min(flt[i], R[i]);
                    changed = true;
                }
            }
        } else if (rank > less_eq) {
            for (std::size_t i = 0; i < P; ++i) {
                if (R[i] > fle[i]) {
                    R[i] = std::max(fle[i], L[i]);
                    changed = true;
                }
            }
        } else {
            return trial;
        }
        if (!changed)
            return gather();
    }
    return gather();
}

bool all_equal(std::span<const double> values) {
    for (double v : values)
        if (v != values[0])
            return false;
    return true;
}

} // namespace

double medcouple_kernel(double xi, double xj, double m, std::size_t pi,
                        std::size_t qj) {
    if (!(xi <= m && m <= xj))
        throw std::invalid_argument("medcouple_kernel: arguments must straddle m");
    if (xi == xj)
        return pi > qj ? 1.0 : (pi < qj ? -1.0 : 0.0);
    return ((xj - m) - (m - xi)) / (xj - xi);
}

double medcouple_naive(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3)
        throw std::invalid_argument("medcouple: need at least 3 values");
    if (all_equal(values))
        return 0.0;
    const double m = sample_median(values);

    std::vector<std::size_t> tie_rank(n, 0);
    std::size_t ties = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (values[i] == m)
            tie_rank[i] = ++ties;

    std::vector<double> kernels;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(values[i] <= m))
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !(values[j] >= m))
                continue;
            kernels.push_back(
                medcouple_kernel(values[i], values[j], m, tie_rank[i], tie_rank[j]));
        }
    }
    std::sort(kernels.begin(), kernels.end());
    const std::size_t M = kernels.size();
    if (M == 0)
        return 0.0;
    if (M % 2 == 1)
        return kernels[M / 2];
    return 0.5 * (kernels[M / 2 - 1] + kernels[M / 2]);
}

double medcouple_fast(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3)
        throw std::invalid_argument("medcouple: need at least 3 values");
    if (all_equal(values))
        return 0.0;
    const Frames fr = build_frames(values);
    const std::size_t P = fr.plus.size();
    const std::size_t Q = fr.minus.size();
    const std::uint64_t full = static_cast<std::uint64_t>(P) * Q;
    const std::uint64_t M = full - fr.ties; // self-pairs excluded

    std::uint64_t neg = 0, le0 = 0;
    for (std::size_t i = 0; i < P; ++i) {
        neg += Q - row_lower_bound(fr, i, 0.0);
        le0 += Q - row_upper_bound(fr, i, 0.0);
    }
    const std::uint64_t zero = le0 - neg;

    // The self-pairs all carry kernel 0, so reduced order statistics map to
    // full-matrix ones by skipping `ties` zeros.
    auto reduced = [&](std::uint64_t r) -> double {
        if (r <= neg)
            return matrix_kth_smallest(fr, r);
        if (r <= neg + zero - fr.ties)
            return 0.0;
        return matrix_kth_smallest(fr, r + fr.ties);
    };

    if (M % 2 == 1)
        return reduced((M + 1) / 2);
    const double a = reduced(M / 2);
    const double b = reduced(M / 2 + 1);
    return 0.5 * (a + b);
}

} // namespace ordstat
