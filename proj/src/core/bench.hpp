#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "select.hpp"

namespace ordstat {

class Mt19937;

enum class Dist { uniform, birnbaum_saunders, lognormal };

enum class BenchVariant { select, select_oracle, sort_baseline };

/// Symbolic or explicit rank. median resolves to ceil(n/2), max to n,
/// min to 1.
struct RankSpec {
    enum class Kind { value, median, max, min } kind = Kind::median;
    std::size_t value = 0;

    std::size_t resolve(std::size_t n) const;
    std::string label() const;
};

struct BenchConfig {
    Dist dist = Dist::uniform;
    double shape = 0.5; // Birnbaum-Saunders
    double mu = 0.0, sigma = 1.0; // lognormal
    std::vector<std::size_t> n_set;
    std::vector<RankSpec> k_set;
    std::size_t replicates = 1;
    std::uint32_t seed = 0;
    BenchVariant variant = BenchVariant::select;
    bool wallclock = false;
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t rep = 0;
    ComparisonCounts counts;
    double wall_us = 0.0;
};

/// i.i.d. draws: uniforms from the 53-bit stream, Birnbaum-Saunders via the
/// normal transform x = (g z/2 + sqrt((g z/2)^2 + 1))^2, lognormal as
/// exp(mu + sigma z); normals by inversion.
std::vector<double> sample(Dist dist, double shape, double mu, double sigma,
                           std::size_t n, Mt19937 &rng);

/// Runs replicates for every (n, k) pair; each replicate draws from its own
/// stream seeded with base seed + a stable enumeration offset, so the rows
/// are deterministic for a given config regardless of execution order.
std::vector<BenchRow> bench_run(const BenchConfig &cfg);

/// Raw rows: header n,k,rep,exit,data,branch,incr,total (wall_us appended
/// when the config asks for it), decimal integers, LF endings.
std::string rows_to_csv(std::span<const BenchRow> rows, bool wallclock);

/// Per-(n,k) min/mean/median/max of the comparison totals.
std::string summary_to_csv(std::span<const BenchRow> rows);

/// Kolmogorov-Smirnov distance between the empirical law of totals/n - 1
/// and the Dickman cdf.
double dickman_fit(std::span<const double> totals, std::size_t n);

} // namespace ordstat
