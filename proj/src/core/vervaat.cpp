#include "vervaat.hpp"

#include <cmath>
#include <stdexcept>

#include "mt19937.hpp"

namespace ordstat {

double expint_e1(double s) {
    if (!(s > 0.0))
        throw std::domain_error("expint_e1: argument must be positive");
    if (s <= 1.0) {
        // E1(s) = -gamma - ln s + sum_{k>=1} (-1)^{k+1} s^k / (k k!)
        double acc = 0.0;
        double term = 1.0;
        for (int k = 1; k < 64; ++k) {
            term *= s / k;
            const double contrib = term / k;
            acc += (k % 2 == 1) ? contrib : -contrib;
            if (contrib < 1e-18 * std::max(1.0, std::fabs(acc)))
                break;
        }
        return -kEulerGamma - std::log(s) + acc;
    }
    // modified Lentz continued fraction: E1(s) = e^-s / (s + 1/(1 + 1/(s + 2/(1 + ...))))
    double b = s + 1.0;
    double c = 1e308;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15)
            break;
    }
    return std::exp(-s) * h;
}

void vervaat_pdf_cdf(const VervaatParams &params, std::span<const double> xs,
                     std::span<double> pdf_out, std::span<double> cdf_out) {
    const double beta = params.beta;
    const int n = params.n_terms > 0 ? params.n_terms : 100;
    if (!(beta > 0.0))
        throw std::domain_error("vervaat_pdf_cdf: beta must be positive");
    if (!pdf_out.empty() && pdf_out.size() != xs.size())
        throw std::invalid_argument("vervaat_pdf_cdf: pdf buffer size mismatch");
    if (!cdf_out.empty() && cdf_out.size() != xs.size())
        throw std::invalid_argument("vervaat_pdf_cdf: cdf buffer size mismatch");
    for (double x : xs)
        if (!(x > 0.0))
            throw std::domain_error("vervaat_pdf_cdf: evaluation points must be positive");

    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> t(static_cast<std::size_t>(n) + 1, 0.0);

    for (std::size_t idx = 0; idx < xs.size(); ++idx) {
        const double s = n / xs[idx];

        // w[m] = beta * P(Pois(s) >= m); below s ~ 745 the pmf recursion is
        // exact enough, beyond it the mass under n is far below double eps
        if (s < 745.0) {
            double pmf = std::exp(-s);
            double cdf = 0.0;
            for (int m = 1; m <= n; ++m) {
                cdf += pmf; // P(Pois <= m-1)
                w[static_cast<std::size_t>(m)] =
                    beta * std::max(0.0, 1.0 - cdf);
                pmf *= s / m;
            }
        } else {
            for (int m = 1; m <= n; ++m)
                w[static_cast<std::size_t>(m)] = beta;
        }

        t[0] = std::exp(-beta * (kEulerGamma + std::log(s) + expint_e1(s)));
        double cdf_sum = t[0];
        for (int q = 1; q <= n; ++q) {
            double acc = 0.0;
            for (int j = 0; j < q; ++j)
                acc += w[static_cast<std::size_t>(q - j)] * t[static_cast<std::size_t>(j)];
            t[static_cast<std::size_t>(q)] = acc / q;
            cdf_sum += t[static_cast<std::size_t>(q)];
        }
        if (!pdf_out.empty())
            pdf_out[idx] = s * t[static_cast<std::size_t>(n)];
        if (!cdf_out.empty())
            cdf_out[idx] = cdf_sum;
    }
}

std::vector<double> dickman_cdf(std::span<const double> xs) {
    std::vector<double> F(xs.size());
    vervaat_pdf_cdf(VervaatParams{1.0, 100}, xs, {}, F);
    return F;
}

std::vector<double> vervaat_rnd(double beta, std::size_t count, Mt19937 &rng,
                                double eps) {
    if (!(beta > 0.0))
        throw std::domain_error("vervaat_rnd: beta must be positive");
    if (!(eps > 0.0))
        throw std::domain_error("vervaat_rnd: eps must be positive");
    std::vector<double> out;
    out.reserve(count);
    const double inv_beta = 1.0 / beta;
    for (std::size_t i = 0; i < count; ++i) {
        double product = 1.0;
        double sum = 0.0;
        do {
            product *= std::pow(rng.next_uniform53(), inv_beta);
            sum += product;
        } while (product >= eps);
        out.push_back(sum);
    }
    return out;
}

} // namespace ordstat
