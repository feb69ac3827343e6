#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "core/bench.hpp"
#include "core/mt19937.hpp"

using namespace ordstat;

TEST_CASE("samples follow their distributions") {
    Mt19937 rng(1);
    for (double u : sample(Dist::uniform, 0, 0, 1, 5000, rng)) {
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    for (double v : sample(Dist::birnbaum_saunders, 0.5, 0, 1, 5000, rng))
        CHECK(v > 0.0);

    const auto ln = sample(Dist::lognormal, 0, 0.0, 1.0, 100000, rng);
    std::vector<double> buf = ln;
    std::nth_element(buf.begin(), buf.begin() + 50000, buf.end());
    CHECK(buf[50000] == doctest::Approx(1.0).epsilon(0.03)); // median e^mu
}

TEST_CASE("symbolic ranks") {
    RankSpec median{RankSpec::Kind::median, 0};
    CHECK(median.resolve(9) == 5);
    CHECK(median.resolve(10) == 5); // ceil(n/2)
    RankSpec mx{RankSpec::Kind::max, 0};
    CHECK(mx.resolve(7) == 7);
    RankSpec mn{RankSpec::Kind::min, 0};
    CHECK(mn.resolve(7) == 1);
    RankSpec bad{RankSpec::Kind::value, 8};
    CHECK_THROWS_AS(bad.resolve(7), std::invalid_argument);
}

TEST_CASE("deterministic rows and byte-identical CSV") {
    BenchConfig cfg;
    cfg.dist = Dist::uniform;
    cfg.n_set = {50, 80};
    cfg.k_set = {RankSpec{RankSpec::Kind::max, 0},
                 RankSpec{RankSpec::Kind::median, 0}};
    cfg.replicates = 20;
    cfg.seed = 31;

    const auto rows1 = bench_run(cfg);
    const auto rows2 = bench_run(cfg);
    CHECK(rows_to_csv(rows1, false) == rows_to_csv(rows2, false));
    CHECK(rows1.size() == 2 * 2 * 20);

    // schema
    std::stringstream ss(rows_to_csv(rows1, false));
    std::string header;
    std::getline(ss, header);
    CHECK(header == "n,k,rep,exit,data,branch,incr,total");
    std::string first;
    std::getline(ss, first);
    CHECK(first.rfind("50,50,0,", 0) == 0);
}

TEST_CASE("empty n_set produces a header-only CSV") {
    BenchConfig cfg;
    cfg.k_set = {RankSpec{RankSpec::Kind::max, 0}};
    cfg.replicates = 3;
    const auto rows = bench_run(cfg);
    CHECK(rows.empty());
    CHECK(rows_to_csv(rows, false) == "n,k,rep,exit,data,branch,incr,total\n");
}

TEST_CASE("grouped summary equals independent recomputation") {
    BenchConfig cfg;
    cfg.n_set = {60};
    cfg.k_set = {RankSpec{RankSpec::Kind::median, 0}};
    cfg.replicates = 101;
    cfg.seed = 5;
    const auto rows = bench_run(cfg);

    std::vector<double> totals;
    for (const auto &r : rows)
        totals.push_back(static_cast<double>(r.counts.total()));
    std::sort(totals.begin(), totals.end());
    double mean = 0.0;
    for (double v : totals)
        mean += v;
    mean /= static_cast<double>(totals.size());

    std::stringstream ss(summary_to_csv(rows));
    std::string header, line;
    std::getline(ss, header);
    CHECK(header == "n,k,min,mean,median,max");
    std::getline(ss, line);
    std::stringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ','))
        fields.push_back(field);
    REQUIRE(fields.size() == 6);
    CHECK(std::stod(fields[2]) == totals.front());
    CHECK(std::stod(fields[3]) == doctest::Approx(mean).epsilon(1e-8)); // printed at 6 decimals
    CHECK(std::stod(fields[4]) == totals[totals.size() / 2]);
    CHECK(std::stod(fields[5]) == totals.back());
}

TEST_CASE("variants run and the baseline counts sort comparisons") {
    BenchConfig cfg;
    cfg.n_set = {128};
    cfg.k_set = {RankSpec{RankSpec::Kind::median, 0}};
    cfg.replicates = 5;
    cfg.variant = BenchVariant::sort_baseline;
    for (const auto &r : bench_run(cfg)) {
        CHECK(r.counts.exit_tests == 0);
        CHECK(r.counts.data_comparisons > 128); // n log n-ish
    }
    cfg.variant = BenchVariant::select_oracle;
    for (const auto &r : bench_run(cfg))
        CHECK(r.counts.total() > 0);
}

TEST_CASE("dickman_fit") {
    CHECK_THROWS_AS(dickman_fit({}, 10), std::invalid_argument);

    // degenerate: identical totals give the one-point maximum deviation
    std::vector<double> flat(100, 2000.0);
    const double ks = dickman_fit(flat, 1000);
    CHECK(ks > 0.3);

    // find-max totals at modest size stay reasonably close already
    BenchConfig cfg;
    cfg.n_set = {200};
    cfg.k_set = {RankSpec{RankSpec::Kind::max, 0}};
    cfg.replicates = 2000;
    cfg.seed = 17;
    std::vector<double> totals;
    for (const auto &r : bench_run(cfg))
        totals.push_back(static_cast<double>(r.counts.total()));
    CHECK(dickman_fit(totals, 200) < 0.1);
}
