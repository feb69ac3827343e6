#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "core/mt19937.hpp"
#include "core/running_sum.hpp"
#include "core/weighted.hpp"

using namespace ordstat;

namespace {

struct Instance {
    std::vector<double> values;
    std::vector<double> weights;
};

Instance random_instance(Mt19937 &rng, std::size_t max_n, int style) {
    Instance inst;
    const std::size_t n = rng.uniform_int(max_n);
    inst.values.resize(n);
    inst.weights.resize(n);
    switch (style % 4) {
    case 0: // continuous
        for (std::size_t i = 0; i < n; ++i) {
            inst.values[i] = rng.next_uniform53();
            inst.weights[i] = rng.next_uniform53();
        }
        break;
    case 1: // discrete values and weights, zero weights included
        for (std::size_t i = 0; i < n; ++i) {
            inst.values[i] = static_cast<double>(rng.uniform_int(6));
            inst.weights[i] = static_cast<double>(rng.uniform_int(4) - 1);
        }
        break;
    case 2: // 0/1 weights
        for (std::size_t i = 0; i < n; ++i) {
            inst.values[i] = rng.next_uniform53();
            inst.weights[i] = rng.next_uniform53() < 0.4 ? 1.0 : 0.0;
        }
        break;
    default: // equal weights over tied values
        for (std::size_t i = 0; i < n; ++i) {
            inst.values[i] = static_cast<double>(rng.uniform_int(3));
            inst.weights[i] = 1.0;
        }
        break;
    }
    double tot = 0.0;
    for (double w : inst.weights)
        tot += w;
    if (!(tot > 0.0))
        inst.weights[rng.uniform_int(n) - 1] = 1.0;
    return inst;
}

} // namespace

TEST_CASE("spec examples") {
    {
        std::vector<double> v = {1, 2, 3, 4, 5}, w = {1, 1, 1, 1, 1};
        const auto r = weighted_percentile(v, w, 0.5);
        CHECK(r.value == 3.0);
        CHECK(r.kstar == 3);
    }
    {
        std::vector<double> v = {1, 2, 3, 4, 5},
                            w = {0.15, 0.10, 0.20, 0.30, 0.25};
        CHECK(weighted_percentile(v, w, 0.5).value == 4.0);
    }
    {
        std::vector<double> v = {1, 2, 3, 4, 5}, w = {0.2, 0.5, 0.1, 0.1, 0.1};
        const auto r = weighted_percentile(v, w, 1.0);
        CHECK(r.value == 5.0);
        CHECK(r.kstar == 5);
    }
    CHECK(weighted_median(std::vector<double>{7.0}, std::vector<double>{3.0}) == 7.0);
    CHECK(weighted_median(std::vector<double>{1, 2, 3},
                          std::vector<double>{1, 1, 10}) == 3.0);
    CHECK(weighted_median(std::vector<double>{1, 2, 3, 4},
                          std::vector<double>{1, 1, 1, 1}) == 2.0); // lower
}

TEST_CASE("oracle examples") {
    {
        // equal weights: plain order statistic at ceil(n*p)
        std::vector<double> v = {5, 1, 4, 2, 3}, w = {1, 1, 1, 1, 1};
        CHECK(weighted_percentile_oracle(v, w, 0.3) == 2.0);
        CHECK(weighted_percentile_oracle(v, w, 0.6) == 3.0);
        CHECK(weighted_percentile_oracle(v, w, 1.0) == 5.0);
    }
    {
        // one unit weight among zeros wins every p in (0,1]
        std::vector<double> v = {10, 20, 30}, w = {0, 1, 0};
        for (double p : {0.01, 0.3, 0.5, 0.9, 1.0})
            CHECK(weighted_percentile_oracle(v, w, p) == 20.0);
    }
}

TEST_CASE("zero-weight rows and exact boundaries resolve low") {
    std::vector<double> v = {1, 2, 3}, w = {0.5, 0.0, 0.5};
    const auto r = weighted_percentile(v, w, 0.5);
    CHECK(r.value == 1.0);
    CHECK(r.kstar == 1);
}

TEST_CASE("p = 0 clamps to the first rank") {
    std::vector<double> v = {4, 1, 9}, w = {1, 1, 1};
    const auto r = weighted_percentile(v, w, 0.0);
    CHECK(r.value == 1.0);
    CHECK(r.kstar == 1);
}

TEST_CASE("errors") {
    std::vector<double> v = {1, 2}, w = {1, -0.5};
    CHECK_THROWS_AS(weighted_percentile(v, w, 0.5), std::invalid_argument);
    std::vector<double> z = {0.0, 0.0};
    std::vector<double> v2 = {1, 2};
    CHECK_THROWS_AS(weighted_percentile(v2, z, 0.5), std::invalid_argument);
    std::vector<double> w2 = {1, 1};
    CHECK_THROWS_AS(weighted_percentile(v2, w2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(weighted_percentile(v2, w2, -0.1), std::invalid_argument);
}

TEST_CASE("agrees with the sort oracle across styles, and terminates") {
    Mt19937 rng(2718);
    for (int t = 0; t < 20000; ++t) {
        auto inst = random_instance(rng, 40, t);
        double p;
        switch (t % 5) {
        case 0: p = 0.0; break;
        case 1: p = 1.0; break;
        case 2: p = 0.5; break;
        default: p = rng.next_uniform53(); break;
        }
        const double want = weighted_percentile_oracle(inst.values, inst.weights, p);
        auto v = inst.values;
        auto w = inst.weights;
        const auto got = weighted_percentile(v, w, p);
        CHECK(got.value == want);
    }
}

TEST_CASE("balance invariant and pair integrity hold on return") {
    Mt19937 rng(99);
    for (int t = 0; t < 3000; ++t) {
        auto inst = random_instance(rng, 30, t);
        const double p = t % 3 == 0 ? 1.0 : rng.next_uniform53();
        auto v = inst.values;
        auto w = inst.weights;
        const auto r = weighted_percentile(v, w, p);

        // balance: L <= p <= L + w_k (top rank admits the rounded total)
        RunningSum L;
        for (std::size_t i = 0; i + 1 < r.kstar; ++i)
            L.add(w[i]);
        CHECK(L.compare(p) <= 0);
        RunningSum through = L;
        through.add(w[r.kstar - 1]);
        if (r.kstar != v.size())
            CHECK(through.compare(p) >= 0);
        CHECK(r.value == v[r.kstar - 1]);
        CHECK(r.weight_at_k == w[r.kstar - 1]);

        // rows permuted as pairs: the (value, weight/total) multiset survives
        double tot = 0.0;
        for (double x : inst.weights)
            tot += x;
        std::vector<std::pair<double, double>> before, after;
        for (std::size_t i = 0; i < v.size(); ++i) {
            before.emplace_back(inst.values[i], inst.weights[i] / tot);
            after.emplace_back(v[i], w[i]);
        }
        std::sort(before.begin(), before.end());
        std::sort(after.begin(), after.end());
        CHECK(before == after);
    }
}

TEST_CASE("weighted median minimizes the weighted absolute deviation") {
    Mt19937 rng(13);
    for (int t = 0; t < 400; ++t) {
        const std::size_t n = rng.uniform_int(100);
        std::vector<double> v(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = rng.next_uniform53() * 10.0;
            w[i] = t % 2 == 0 ? rng.next_uniform53()
                              : static_cast<double>(rng.uniform_int(5) - 1);
        }
        double tot = 0.0;
        for (double x : w)
            tot += x;
        if (!(tot > 0.0))
            w[0] = 1.0;

        const double med = weighted_median(v, w);
        auto objective = [&](double a) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += w[i] * std::fabs(v[i] - a);
            return acc;
        };
        const double at_med = objective(med);
        double best = at_med;
        for (double cand : v)
            best = std::min(best, objective(cand));
        CHECK(at_med <= best + 1e-9 * std::max(1.0, best));
    }
}

TEST_CASE("kstar tracks the requested percentile for uniform data") {
    Mt19937 rng(314);
    const std::size_t n = 1000;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        double acc = 0.0;
        const int reps = 50;
        for (int t = 0; t < reps; ++t) {
            std::vector<double> v(n), w(n);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = rng.next_uniform53();
                w[i] = rng.next_uniform53();
            }
            const auto r = weighted_percentile(v, w, p);
            acc += std::fabs(static_cast<double>(r.kstar) / n - p);
        }
        CHECK(acc / reps < 0.05);
    }
}
