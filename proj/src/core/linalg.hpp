#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

// Dense symmetric p x p helpers for the small covariance matrices of the
// robust estimation steps. Row-major storage.
namespace ordstat::linalg {

// Lower-triangular Cholesky factor; returns false if A is not numerically
// positive definite.
inline bool cholesky(std::span<const double> a, std::size_t p,
                     std::span<double> l) {
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * p + j];
            for (std::size_t k = 0; k < j; ++k)
                sum -= l[i * p + k] * l[j * p + k];
            if (i == j) {
                if (!(sum > 0.0))
                    return false;
                l[i * p + i] = std::sqrt(sum);
            } else {
                l[i * p + j] = sum / l[j * p + j];
            }
        }
        for (std::size_t j = i + 1; j < p; ++j)
            l[i * p + j] = 0.0;
    }
    return true;
}

inline double cholesky_log_det(std::span<const double> l, std::size_t p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i)
        acc += std::log(l[i * p + i]);
    return 2.0 * acc;
}

// Solves A x = b given the Cholesky factor L (A = L L^T), in place.
inline void cholesky_solve(std::span<const double> l, std::size_t p,
                           std::span<double> b) {
    for (std::size_t i = 0; i < p; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k)
            sum -= l[i * p + k] * b[k];
        b[i] = sum / l[i * p + i];
    }
    for (std::size_t ii = p; ii-- > 0;) {
        double sum = b[ii];
        for (std::size_t k = ii + 1; k < p; ++k)
            sum -= l[k * p + ii] * b[k];
        b[ii] = sum / l[ii * p + ii];
    }
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(std::span<const double> a,
                                                 std::size_t p) {
    std::vector<double> m(a.begin(), a.end());
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j)
                off += m[i * p + j] * m[i * p + j];
        if (off < 1e-30)
            break;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) {
                const double apq = m[i * p + j];
                if (apq == 0.0)
                    continue;
                const double theta = (m[j * p + j] - m[i * p + i]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < p; ++k) {
                    const double mik = m[i * p + k];
                    const double mjk = m[j * p + k];
                    m[i * p + k] = c * mik - s * mjk;
                    m[j * p + k] = s * mik + c * mjk;
                }
                for (std::size_t k = 0; k < p; ++k) {
                    const double mki = m[k * p + i];
                    const double mkj = m[k * p + j];
                    m[k * p + i] = c * mki - s * mkj;
                    m[k * p + j] = s * mki + c * mkj;
                }
            }
        }
    }
    std::vector<double> ev(p);
    for (std::size_t i = 0; i < p; ++i)
        ev[i] = m[i * p + i];
    return ev;
}

// lambda_max / lambda_min; infinity when the matrix is numerically singular.
inline double condition_number(std::span<const double> a, std::size_t p) {
    const auto ev = symmetric_eigenvalues(a, p);
    double lo = ev[0], hi = ev[0];
    for (double v : ev) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(lo > 0.0))
        return std::numeric_limits<double>::infinity();
    return hi / lo;
}

} // namespace ordstat::linalg
