#pragma once

#include <cstddef>
#include <span>

namespace ordstat {

/// Pairwise medcouple kernel for xi <= m <= xj:
///   ((xj - m) - (m - xi)) / (xj - xi)              when xi != xj
///   sign(pi - qj)                                  when xi == xj == m,
/// with pi, qj the tie ranks of the two arguments among the median-equal
/// points. Throws if the arguments do not straddle m.
double medcouple_kernel(double xi, double xj, double m, std::size_t pi,
                        std::size_t qj);

/// Robust skewness in [-1,1]: median of the kernel values over all index
/// pairs (i, j), i != j, with x_i <= m <= x_j (m the sample median; the
/// two middle order statistics are averaged for even n). Even kernel
/// counts average the two middle kernels. O(n^2) reference.
double medcouple_naive(std::span<const double> values);

/// Same quantity computed by rank selection on the monotone kernel matrix,
/// with trial pivots chosen through the weighted median. O(n log n)
/// expected.
double medcouple_fast(std::span<const double> values);

} // namespace ordstat
