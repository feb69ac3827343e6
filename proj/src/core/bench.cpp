#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "mt19937.hpp"
#include "vervaat.hpp"

namespace ordstat {

std::size_t RankSpec::resolve(std::size_t n) const {
    switch (kind) {
    case Kind::median:
        return (n + 1) / 2; // lower median rank, ceil(n/2)
    case Kind::max:
        return n;
    case Kind::min:
        return 1;
    case Kind::value:
        if (value < 1 || value > n)
            throw std::invalid_argument("bench: rank out of range for n");
        return value;
    }
    return 1;
}

std::string RankSpec::label() const {
    switch (kind) {
    case Kind::median:
        return "median";
    case Kind::max:
        return "max";
    case Kind::min:
        return "min";
    case Kind::value:
        return std::to_string(value);
    }
    return "?";
}

std::vector<double> sample(Dist dist, double shape, double mu, double sigma,
                           std::size_t n, Mt19937 &rng) {
    std::vector<double> out(n);
    switch (dist) {
    case Dist::uniform:
        for (auto &v : out)
            v = rng.next_uniform53();
        break;
    case Dist::birnbaum_saunders: {
        if (!(shape > 0.0))
            throw std::invalid_argument("sample: Birnbaum-Saunders shape must be positive");
        for (auto &v : out) {
            const double gz = shape * rng.next_normal_inversion() / 2.0;
            const double root = gz + std::sqrt(gz * gz + 1.0);
            v = root * root;
        }
        break;
    }
    case Dist::lognormal:
        if (!(sigma > 0.0))
            throw std::invalid_argument("sample: lognormal sigma must be positive");
        for (auto &v : out)
            v = std::exp(mu + sigma * rng.next_normal_inversion());
        break;
    }
    return out;
}

namespace {

// comparison-counted std::sort for the baseline variant
ComparisonCounts sort_counts(std::vector<double> &buf) {
    ComparisonCounts c;
    std::sort(buf.begin(), buf.end(), [&c](double a, double b) {
        ++c.data_comparisons;
        return a < b;
    });
    return c;
}

} // namespace

std::vector<BenchRow> bench_run(const BenchConfig &cfg) {
    if (cfg.replicates < 1)
        throw std::invalid_argument("bench: replicates must be >= 1");
    std::vector<BenchRow> rows;
    rows.reserve(cfg.n_set.size() * cfg.k_set.size() * cfg.replicates);

    std::uint32_t stream = 0;
    for (std::size_t ni = 0; ni < cfg.n_set.size(); ++ni) {
        const std::size_t n = cfg.n_set[ni];
        if (n < 1)
            throw std::invalid_argument("bench: sample sizes must be >= 1");
        for (std::size_t ki = 0; ki < cfg.k_set.size(); ++ki) {
            const std::size_t k = cfg.k_set[ki].resolve(n);
            for (std::size_t rep = 0; rep < cfg.replicates; ++rep, ++stream) {
                Mt19937 rng(cfg.seed + stream);
                auto data = sample(cfg.dist, cfg.shape, cfg.mu, cfg.sigma, n, rng);
                BenchRow row;
                row.n = n;
                row.k = k;
                row.rep = rep;
                const auto t0 = std::chrono::steady_clock::now();
                switch (cfg.variant) {
                case BenchVariant::select:
                    select_kth_counted(data, k, row.counts);
                    break;
                case BenchVariant::select_oracle: {
                    const std::size_t hint = rng.uniform_int(n);
                    select_kth_counted(data, k, row.counts, hint);
                    break;
                }
                case BenchVariant::sort_baseline:
                    row.counts = sort_counts(data);
                    break;
                }
                if (cfg.wallclock) {
                    const auto t1 = std::chrono::steady_clock::now();
                    row.wall_us =
                        std::chrono::duration<double, std::micro>(t1 - t0).count();
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::string rows_to_csv(std::span<const BenchRow> rows, bool wallclock) {
    std::string csv = "n,k,rep,exit,data,branch,incr,total";
    if (wallclock)
        csv += ",wall_us";
    csv += "\n";
    for (const auto &r : rows) {
        csv += std::to_string(r.n) + "," + std::to_string(r.k) + "," +
               std::to_string(r.rep) + "," + std::to_string(r.counts.exit_tests) +
               "," + std::to_string(r.counts.data_comparisons) + "," +
               std::to_string(r.counts.branch_tests) + "," +
               std::to_string(r.counts.position_increments) + "," +
               std::to_string(r.counts.total());
        if (wallclock) {
            char buf[32];
            std::snprintf(buf, sizeof buf, ",%.3f", r.wall_us);
            csv += buf;
        }
        csv += "\n";
    }
    return csv;
}

std::string summary_to_csv(std::span<const BenchRow> rows) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> groups;
    for (const auto &r : rows)
        groups[{r.n, r.k}].push_back(static_cast<double>(r.counts.total()));

    std::string csv = "n,k,min,mean,median,max\n";
    for (auto &[key, totals] : groups) {
        std::sort(totals.begin(), totals.end());
        const std::size_t m = totals.size();
        double mean = 0.0;
        for (double v : totals)
            mean += v;
        mean /= static_cast<double>(m);
        const double median = m % 2 == 1
                                  ? totals[m / 2]
                                  : 0.5 * (totals[m / 2 - 1] + totals[m / 2]);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.0f,%.6f,%.1f,%.0f\n", key.first,
                      key.second, totals.front(), mean, median, totals.back());
        csv += buf;
    }
    return csv;
}

double dickman_fit(std::span<const double> totals, std::size_t n) {
    if (totals.empty())
        throw std::invalid_argument("dickman_fit: empty input");
    if (n < 1)
        throw std::invalid_argument("dickman_fit: n must be >= 1");
    std::vector<double> x(totals.begin(), totals.end());
    for (auto &v : x)
        v = v / static_cast<double>(n) - 1.0;
    std::sort(x.begin(), x.end());

    std::vector<double> pos(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        pos[i] = std::max(x[i], 1e-12); // cdf reference needs positive support
    const auto F = dickman_cdf(pos);

    const double m = static_cast<double>(x.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ref = x[i] > 0.0 ? F[i] : 0.0;
        ks = std::max(ks, std::fabs((static_cast<double>(i) + 1.0) / m - ref));
        ks = std::max(ks, std::fabs(static_cast<double>(i) / m - ref));
    }
    return ks;
}

} // namespace ordstat
