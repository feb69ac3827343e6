#include "robust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "linalg.hpp"
#include "mt19937.hpp"

namespace ordstat {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kDetSlack = 1e-12;

EllipsoidEstimate fit_with_optional_ridge(const DataView &X,
                                          std::span<const std::size_t> subset,
                                          bool allow_ridge, bool *ridged) {
    const std::size_t p = X.p;
    const std::size_t h = subset.size();
    if (h < p + 1)
        throw std::invalid_argument("fit_subset: subset smaller than p+1");
    EllipsoidEstimate est;
    est.mu.assign(p, 0.0);
    est.sigma.assign(p * p, 0.0);
    est.subset.assign(subset.begin(), subset.end());
    std::sort(est.subset.begin(), est.subset.end());

    for (std::size_t idx : est.subset)
        for (std::size_t j = 0; j < p; ++j)
            est.mu[j] += X(idx, j);
    for (std::size_t j = 0; j < p; ++j)
        est.mu[j] /= static_cast<double>(h);

    std::vector<double> d(p);
    for (std::size_t idx : est.subset) {
        for (std::size_t j = 0; j < p; ++j)
            d[j] = X(idx, j) - est.mu[j];
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = 0; b <= a; ++b)
                est.sigma[a * p + b] += d[a] * d[b];
    }
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b <= a; ++b) {
            est.sigma[a * p + b] /= static_cast<double>(h);
            est.sigma[b * p + a] = est.sigma[a * p + b];
        }

    std::vector<double> chol(p * p);
    bool spd = linalg::cholesky(est.sigma, p, chol) &&
               linalg::condition_number(est.sigma, p) <= kMaxCondition;
    if (!spd && allow_ridge) {
        double trace = 0.0;
        for (std::size_t a = 0; a < p; ++a)
            trace += est.sigma[a * p + a];
        const double ridge = 1e-8 * (trace > 0.0 ? trace : 1.0);
        for (std::size_t a = 0; a < p; ++a)
            est.sigma[a * p + a] += ridge;
        spd = linalg::cholesky(est.sigma, p, chol);
        if (ridged)
            *ridged = true;
    }
    if (!spd)
        throw std::domain_error("fit_subset: singular covariance");
    est.log_det = linalg::cholesky_log_det(chol, p);
    est.det = std::exp(est.log_det);
    return est;
}

} // namespace

EllipsoidEstimate fit_subset(const DataView &X,
                             std::span<const std::size_t> subset) {
    return fit_with_optional_ridge(X, subset, false, nullptr);
}

std::vector<double> mahalanobis_sq(const DataView &X,
                                   const EllipsoidEstimate &est) {
    const std::size_t p = X.p;
    std::vector<double> chol(p * p);
    if (!linalg::cholesky(est.sigma, p, chol) ||
        linalg::condition_number(est.sigma, p) > kMaxCondition)
        throw std::domain_error("mahalanobis_sq: singular covariance");
    std::vector<double> d2(X.n);
    std::vector<double> v(p);
    for (std::size_t i = 0; i < X.n; ++i) {
        for (std::size_t j = 0; j < p; ++j)
            v[j] = X(i, j) - est.mu[j];
        std::vector<double> w = v;
        linalg::cholesky_solve(chol, p, w);
        double acc = 0.0;
        for (std::size_t j = 0; j < p; ++j)
            acc += v[j] * w[j];
        d2[i] = acc;
    }
    return d2;
}

std::vector<std::size_t> smallest_h(std::span<const double> d2, std::size_t h,
                                    UpdateBackend backend,
                                    std::size_t hint_pos,
                                    ComparisonCounts *counts) {
    const std::size_t n = d2.size();
    if (h < 1 || h > n)
        throw std::invalid_argument("smallest_h: h out of range");

    double threshold;
    if (backend == UpdateBackend::sort) {
        std::vector<double> buf(d2.begin(), d2.end());
        std::sort(buf.begin(), buf.end());
        threshold = buf[h - 1];
    } else {
        std::vector<double> buf(d2.begin(), d2.end());
        std::optional<std::size_t> oracle;
        if (backend == UpdateBackend::select_oracle && hint_pos >= 1 &&
            hint_pos <= n)
            oracle = hint_pos;
        if (counts)
            threshold = select_kth_counted(buf, h, *counts, oracle);
        else
            threshold = select_kth(buf, h, oracle);
    }

    std::vector<std::size_t> subset;
    subset.reserve(h);
    for (std::size_t i = 0; i < n && subset.size() < h; ++i)
        if (d2[i] < threshold)
            subset.push_back(i);
    for (std::size_t i = 0; i < n && subset.size() < h; ++i)
        if (d2[i] == threshold)
            subset.push_back(i);
    std::sort(subset.begin(), subset.end());
    return subset;
}

EllipsoidEstimate cstep(const DataView &X, const EllipsoidEstimate &est,
                        std::size_t h, UpdateBackend backend, Mt19937 *rng,
                        ComparisonCounts *counts) {
    if (h < X.p + 1 || h > X.n)
        throw std::invalid_argument("cstep: h out of range");
    const std::vector<double> d2 = mahalanobis_sq(X, est);

    std::size_t hint = 0;
    if (backend == UpdateBackend::select_oracle) {
        if (!rng)
            throw std::invalid_argument("cstep: select_oracle needs an rng");
        // uniformly random unit outside the current subset, 1-based hint
        std::vector<char> in(X.n, 0);
        for (std::size_t idx : est.subset)
            in[idx] = 1;
        std::vector<std::size_t> excluded;
        excluded.reserve(X.n - est.subset.size());
        for (std::size_t i = 0; i < X.n; ++i)
            if (!in[i])
                excluded.push_back(i);
        if (!excluded.empty())
            hint = excluded[rng->uniform_int(excluded.size()) - 1] + 1;
    }

    const auto subset = smallest_h(d2, h, backend, hint, counts);
    return fit_subset(X, subset);
}

EllipsoidEstimate mcd_approx(const DataView &X, std::size_t h,
                             std::size_t n_starts, Mt19937 &rng,
                             UpdateBackend backend, ComparisonCounts *counts) {
    if (n_starts < 1)
        throw std::invalid_argument("mcd_approx: need at least one start");
    const std::size_t n = X.n;
    const std::size_t p = X.p;
    if (h < p + 1 || h > n)
        throw std::invalid_argument("mcd_approx: h out of range");

    bool have_best = false;
    EllipsoidEstimate best;
    std::vector<std::size_t> pool(n);

    // Oracle hints draw from a split-off stream so that every backend sees
    // the same start subsets; the split is taken unconditionally to keep
    // the main stream aligned across backends.
    Mt19937 hint_rng(rng.next_u32());

    for (std::size_t s = 0; s < n_starts; ++s) {
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t i = 0; i < p + 1; ++i) {
            const std::size_t j = i + rng.uniform_int(n - i) - 1;
            std::swap(pool[i], pool[j]);
        }
        std::vector<std::size_t> start(pool.begin(),
                                       pool.begin() + static_cast<long>(p + 1));
        EllipsoidEstimate est;
        try {
            est = fit_subset(X, start);
            for (int it = 0; it < 100; ++it) {
                EllipsoidEstimate next = cstep(X, est, h, backend, &hint_rng, counts);
                if (next.log_det >
                    est.log_det + kDetSlack * std::max(1.0, std::fabs(est.log_det)) &&
                    est.subset.size() == h)
                    throw std::logic_error("mcd_approx: determinant increased in a concentration step");
                const bool converged =
                    std::fabs(next.log_det - est.log_det) <
                        kDetSlack * std::max(1.0, std::fabs(est.log_det)) ||
                    next.subset == est.subset;
                est = std::move(next);
                if (converged)
                    break;
            }
        } catch (const std::domain_error &) {
            continue; // singular start
        }
        if (!have_best || est.log_det < best.log_det) {
            best = std::move(est);
            have_best = true;
        }
    }
    if (!have_best)
        throw std::domain_error("mcd_approx: all starts singular");
    return best;
}

std::vector<FsStep> fs_progression(const DataView &X, std::size_t m0,
                                   UpdateBackend backend, Mt19937 * /*rng*/) {
    const std::size_t n = X.n;
    const std::size_t p = X.p;
    if (m0 < p + 1 || m0 > n)
        throw std::invalid_argument("fs_progression: m0 out of range");

    // robust start: nearest to the coordinate-wise median with identity shape
    std::vector<double> med(p);
    {
        std::vector<double> col(n);
        for (std::size_t j = 0; j < p; ++j) {
            for (std::size_t i = 0; i < n; ++i)
                col[i] = X(i, j);
            std::vector<double> buf = col;
            const double lower = select_kth(buf, (n + 1) / 2);
            if (n % 2 == 1) {
                med[j] = lower;
            } else {
                double upper = buf[n / 2];
                for (std::size_t i = n / 2 + 1; i < n; ++i)
                    upper = std::min(upper, buf[i]);
                med[j] = 0.5 * (lower + upper);
            }
        }
    }
    std::vector<double> d0(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const double dv = X(i, j) - med[j];
            d0[i] += dv * dv;
        }
    std::vector<std::size_t> subset = smallest_h(d0, m0, UpdateBackend::sort);

    std::vector<FsStep> steps;
    steps.reserve(n - m0 + 1);
    for (std::size_t m = m0; m <= n; ++m) {
        FsStep step;
        step.m = m;
        step.subset = subset;
        if (m == n) {
            step.min_out_index = n;
            steps.push_back(std::move(step));
            break;
        }
        EllipsoidEstimate est;
        try {
            est = fit_subset(X, subset);
        } catch (const std::domain_error &) {
            est = fit_with_optional_ridge(X, subset, true, &step.ridged);
        }
        const std::vector<double> d2 = mahalanobis_sq(X, est);

        std::vector<char> in(n, 0);
        for (std::size_t idx : subset)
            in[idx] = 1;
        std::size_t min_out = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!in[i] && (min_out == n || d2[i] < d2[min_out]))
                min_out = i;
        step.min_out_index = min_out;

        const std::size_t hint = min_out < n ? min_out + 1 : 0;
        auto next = smallest_h(d2, m + 1, backend,
                               backend == UpdateBackend::select_oracle ? hint : 0,
                               &step.counts);
        // interchange: some current member is not carried into the grown subset
        for (std::size_t idx : subset)
            if (!std::binary_search(next.begin(), next.end(), idx)) {
                step.interchange = true;
                break;
            }
        subset = std::move(next);
        steps.push_back(std::move(step));
    }
    return steps;
}

} // namespace ordstat
