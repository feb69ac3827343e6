#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ordstat {

class Mt19937;

inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

/// Exponential integral E1(s), s > 0; series for s <= 1, continued
/// fraction beyond, ~1e-14 relative accuracy.
double expint_e1(double s);

/// Series order for the Vervaat pdf/cdf inversion (default 100).
struct VervaatParams {
    double beta = 1.0;
    int n_terms = 100;
};

/// Vervaat perpetuity density and distribution function at the points xs
/// (all > 0), via an order-n Post-Widder inversion of the transform
/// exp(-beta*Ein(s)) evaluated at s = n/x.
///
/// The textbook form of the inversion accumulates factorially scaled
/// derivative terms; here the recursion is carried in Poisson-rescaled
/// variables t_q = (-s)^q L(q+1) / q!, which are all non-negative and
/// bounded, with weights beta*P(Pois(s) >= m):
///   t_q = (1/q) sum_{j<q} w_{q-j} t_j,  F = sum t_q,  f = s * t_n.
void vervaat_pdf_cdf(const VervaatParams &params, std::span<const double> xs,
                     std::span<double> pdf_out, std::span<double> cdf_out);

/// Dickman cdf (beta = 1) at the given points.
std::vector<double> dickman_cdf(std::span<const double> xs);

/// Variates of the perpetuity Y = W1 + W1*W2 + ... with W ~ U^(1/beta),
/// truncated when the running product of W factors drops below eps.
std::vector<double> vervaat_rnd(double beta, std::size_t count, Mt19937 &rng,
                                double eps = 1e-12);

} // namespace ordstat
