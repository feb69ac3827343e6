#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "select.hpp"

namespace ordstat {

class Mt19937;

/// Row-major n x p data view.
struct DataView {
    std::span<const double> values;
    std::size_t n = 0;
    std::size_t p = 0;

    double operator()(std::size_t i, std::size_t j) const {
        return values[i * p + j];
    }
};

/// Location/scatter fit of an index subset: mean vector, covariance
/// (divide-by-size), its determinant and the active subset.
struct EllipsoidEstimate {
    std::vector<double> mu;     // p
    std::vector<double> sigma;  // p x p row-major
    double det = 0.0;
    double log_det = 0.0;
    std::vector<std::size_t> subset; // 0-based, ascending
};

enum class UpdateBackend { sort, select, select_oracle };

/// Fits mean/covariance/determinant on the given subset. Throws when the
/// covariance is numerically singular (condition number above 1e12).
EllipsoidEstimate fit_subset(const DataView &X,
                             std::span<const std::size_t> subset);

/// Squared Mahalanobis distances of all n observations under est.
std::vector<double> mahalanobis_sq(const DataView &X,
                                   const EllipsoidEstimate &est);

/// Indices of the h smallest entries of d2. Ties at the threshold are
/// admitted in index order, so every backend returns the same subset; the
/// backends differ only in how the threshold rank is found (full sort,
/// fixed-pivot selection, or selection primed with a hint position).
std::vector<std::size_t> smallest_h(std::span<const double> d2, std::size_t h,
                                    UpdateBackend backend,
                                    std::size_t hint_pos = 0,
                                    ComparisonCounts *counts = nullptr);

/// One MCD concentration step: refit on the h observations closest to the
/// current estimate. The determinant never increases. With the
/// select_oracle backend the hint is a uniformly random excluded index.
EllipsoidEstimate cstep(const DataView &X, const EllipsoidEstimate &est,
                        std::size_t h, UpdateBackend backend,
                        Mt19937 *rng = nullptr,
                        ComparisonCounts *counts = nullptr);

/// Approximate MCD: n_starts random (p+1)-subsets, each concentrated to a
/// determinant fixed point (relative log-det change < 1e-12, at most 100
/// iterations); the minimum-determinant estimate wins. Starts with a
/// singular fit are skipped; throws if every start is singular.
EllipsoidEstimate mcd_approx(const DataView &X, std::size_t h,
                             std::size_t n_starts, Mt19937 &rng,
                             UpdateBackend backend,
                             ComparisonCounts *counts = nullptr);

/// One Forward-Search state: subset of size m, the index of the smallest
/// excluded distance, instrumentation of the subset update, whether the
/// step covariance needed a ridge, and whether units left the subset when
/// it grew (interchange).
struct FsStep {
    std::size_t m = 0;
    std::vector<std::size_t> subset;
    std::size_t min_out_index = 0; // 0-based; n when no unit is excluded
    ComparisonCounts counts;
    bool ridged = false;
    bool interchange = false;
};

/// Forward-Search progression from a robust start of size m0 (the m0 units
/// nearest the coordinate-wise median) up to the full sample. Each step
/// ranks all n squared distances and keeps the m+1 smallest; the
/// select_oracle backend primes the selection with min_out_index.
std::vector<FsStep> fs_progression(const DataView &X, std::size_t m0,
                                   UpdateBackend backend,
                                   Mt19937 *rng = nullptr);

} // namespace ordstat
