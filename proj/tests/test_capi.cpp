// Exercises the shared-library surface the way an external binding would:
// through ordstat.h only.
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "ordstat.h"
#include "golden_vectors.hpp"

TEST_CASE("rng handles") {
    ordstat_rng *g = ordstat_rng_new_classic(12345);
    REQUIRE(g != nullptr);
    for (double expected : golden::classic_12345_uniform53)
        CHECK(ordstat_rng_uniform53(g) == expected);
    ordstat_rng_free(g);

    ordstat_rng *r = ordstat_rng_new_r(896);
    REQUIRE(r != nullptr);
    for (double expected : golden::r_seed896_runif)
        CHECK(ordstat_rng_r_uniform(r) == expected);
    ordstat_rng_free(r);

    int32_t codes[626];
    CHECK(ordstat_r_seed_state(896, codes) == ORDSTAT_OK);
    CHECK(codes[0] == 403);
    CHECK(codes[1] == 624);
    ordstat_rng *from_state = ordstat_rng_new_from_r_state(codes);
    REQUIRE(from_state != nullptr);
    CHECK(ordstat_rng_r_uniform(from_state) == golden::r_seed896_runif[0]);
    ordstat_rng_free(from_state);

    uint64_t v = 0;
    ordstat_rng *u = ordstat_rng_new_classic(1);
    CHECK(ordstat_rng_uniform_int(u, 6, &v) == ORDSTAT_OK);
    CHECK(v >= 1);
    CHECK(v <= 6);
    CHECK(ordstat_rng_uniform_int(u, 0, &v) == ORDSTAT_ERR_INVALID_ARGUMENT);
    CHECK(std::string(ordstat_last_error()).size() > 0);
    ordstat_rng_free(u);
}

TEST_CASE("selection") {
    double data[] = {2, 3, 4, 5, 6, 7, 8, 9, 1};
    double out = 0;
    ordstat_counts counts;
    CHECK(ordstat_select_kth_counted(data, 9, 9, 0, 0, nullptr, &out, &counts) ==
          ORDSTAT_OK);
    CHECK(out == 9.0);
    CHECK(counts.exit_tests + counts.data_comparisons + counts.branch_tests == 63);
    CHECK(counts.data_comparisons == 45);

    double bad[] = {1.0};
    CHECK(ordstat_select_kth(bad, 1, 2, 0, 0, nullptr, &out) ==
          ORDSTAT_ERR_INVALID_ARGUMENT);

    double part[] = {5, 1, 4};
    size_t pos = 0;
    CHECK(ordstat_partition_step(part, 3, 1, 3, 2, &pos) == ORDSTAT_OK);
    CHECK(pos == 1);

    ordstat_rng *g = ordstat_rng_new_classic(3);
    double arr[] = {1, 2, 3, 4, 5};
    CHECK(ordstat_backward_shuffle(arr, 5, g) == ORDSTAT_OK);
    double sorted_check = 0;
    CHECK(ordstat_select_kth(arr, 5, 3, 0, 0, nullptr, &sorted_check) == ORDSTAT_OK);
    CHECK(sorted_check == 3.0);
    ordstat_rng_free(g);
}

TEST_CASE("weighted percentile") {
    double values[] = {1, 2, 3, 4, 5};
    double weights[] = {0.15, 0.10, 0.20, 0.30, 0.25};
    double value = 0, weight = 0;
    size_t kstar = 0;
    CHECK(ordstat_weighted_percentile(values, weights, 5, 0.5, &value, &weight,
                                      &kstar) == ORDSTAT_OK);
    CHECK(value == 4.0);

    const double v2[] = {1, 2, 3}, w2[] = {1, 1, 10};
    double med = 0;
    CHECK(ordstat_weighted_median(v2, w2, 3, &med) == ORDSTAT_OK);
    CHECK(med == 3.0);
    double ref = 0;
    CHECK(ordstat_weighted_percentile_sorted(v2, w2, 3, 0.5, &ref) == ORDSTAT_OK);
    CHECK(ref == 3.0);

    const double wneg[] = {1, -1, 1};
    CHECK(ordstat_weighted_median(v2, wneg, 3, &med) ==
          ORDSTAT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("medcouple") {
    const double x[] = {1, 2, 3, 4, 10};
    double fast = 0, naive = 0;
    CHECK(ordstat_medcouple(x, 5, 0, &fast) == ORDSTAT_OK);
    CHECK(ordstat_medcouple(x, 5, 1, &naive) == ORDSTAT_OK);
    CHECK(fast == naive);
    CHECK(fast == doctest::Approx(5.0 / 18.0));

    double k = 0;
    CHECK(ordstat_medcouple_kernel(1, 10, 3, 0, 0, &k) == ORDSTAT_OK);
    CHECK(k == doctest::Approx(5.0 / 9.0));
    CHECK(ordstat_medcouple_kernel(4, 5, 3, 0, 0, &k) ==
          ORDSTAT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("vervaat") {
    const double xs[] = {0.5, 1.0};
    double f[2], F[2];
    CHECK(ordstat_vervaat_pdf_cdf(1.0, 0, xs, 2, f, F) == ORDSTAT_OK);
    CHECK(f[0] == doctest::Approx(0.5614594835668851).epsilon(1e-10));
    double F2[2];
    CHECK(ordstat_dickman_cdf(xs, 2, F2) == ORDSTAT_OK);
    CHECK(F2[0] == F[0]);
    CHECK(F2[1] == F[1]);

    ordstat_rng *g = ordstat_rng_new_classic(7);
    double draws[100];
    CHECK(ordstat_vervaat_rnd(1.0, 100, 1e-12, g, draws) == ORDSTAT_OK);
    for (double d : draws)
        CHECK(d > 0.0);
    ordstat_rng_free(g);

    const double badx[] = {-1.0};
    CHECK(ordstat_vervaat_pdf_cdf(1.0, 0, badx, 1, f, F) == ORDSTAT_ERR_DOMAIN);
}

TEST_CASE("robust steps") {
    // 1-d toy data: cluster plus outliers
    const double X[] = {0.1, 0.2, 0.3, 0.4, 0.5, 5.0, 6.0, 7.0};
    const size_t n = 8, p = 1, h = 5;

    double d2[8];
    const double mu = 0.3, sigma = 1.0;
    CHECK(ordstat_mahalanobis_sq(X, n, p, &mu, &sigma, d2) == ORDSTAT_OK);
    CHECK(d2[2] == doctest::Approx(0.0));

    const size_t start[] = {0, 1};
    size_t subset[5];
    double det = 0;
    CHECK(ordstat_cstep(X, n, p, start, 2, h, ORDSTAT_BACKEND_SELECT, nullptr,
                        subset, &det, nullptr) == ORDSTAT_OK);
    for (size_t i = 0; i < h; ++i)
        CHECK(subset[i] < 5); // the cluster

    double mu_out[1], sigma_out[1];
    size_t best[5];
    ordstat_counts counts;
    CHECK(ordstat_mcd(X, n, p, h, 10, ORDSTAT_BACKEND_SELECT_ORACLE, 42, mu_out,
                      sigma_out, &det, best, &counts) == ORDSTAT_OK);
    CHECK(mu_out[0] == doctest::Approx(0.3));

    size_t ms[7];
    ordstat_counts steps[7];
    size_t n_steps = 0;
    CHECK(ordstat_fs(X, n, p, 2, ORDSTAT_BACKEND_SELECT, ms, steps, &n_steps) ==
          ORDSTAT_OK);
    CHECK(n_steps == 7);
    CHECK(ms[6] == 8);
}

TEST_CASE("raster") {
    const char *pnm = "P2\n# tiny\n2 3\n255\n0 10\n20 30\n40 50\n";
    ordstat_raster *r = nullptr;
    CHECK(ordstat_read_pnm_mem(reinterpret_cast<const uint8_t *>(pnm),
                               std::strlen(pnm), &r) == ORDSTAT_OK);
    REQUIRE(r != nullptr);
    CHECK(ordstat_raster_width(r) == 2);
    CHECK(ordstat_raster_height(r) == 3);
    CHECK(ordstat_raster_channels(r) == 1);
    CHECK(ordstat_raster_samples(r)[0] == 0);
    CHECK(ordstat_raster_samples(r)[5] == 50);

    ordstat_raster *big = ordstat_raster_new(8, 8, 1);
    REQUIRE(big != nullptr);
    uint8_t *s = ordstat_raster_samples(big);
    for (int i = 0; i < 64; ++i)
        s[i] = 100;
    ordstat_rng *g = ordstat_rng_new_classic(1);
    CHECK(ordstat_add_salt_pepper(big, 0.3, g) == ORDSTAT_OK);
    ordstat_raster *filtered = nullptr;
    CHECK(ordstat_weighted_median_filter(big, nullptr, &filtered) == ORDSTAT_OK);
    REQUIRE(filtered != nullptr);

    const char *bad = "P4\n1 1\n255\n0\n";
    ordstat_raster *nope = nullptr;
    CHECK(ordstat_read_pnm_mem(reinterpret_cast<const uint8_t *>(bad),
                               std::strlen(bad), &nope) == ORDSTAT_ERR_PARSE);

    ordstat_rng_free(g);
    ordstat_raster_free(filtered);
    ordstat_raster_free(big);
    ordstat_raster_free(r);
}

TEST_CASE("bench") {
    const size_t n_set[] = {40};
    const int64_t k_set[] = {ORDSTAT_K_MAX, 3};
    ordstat_bench_config cfg{};
    cfg.dist = ORDSTAT_DIST_UNIFORM;
    cfg.n_set = n_set;
    cfg.n_count = 1;
    cfg.k_set = k_set;
    cfg.k_count = 2;
    cfg.replicates = 10;
    cfg.seed = 9;
    cfg.variant = ORDSTAT_VARIANT_SELECT;

    char *rows = nullptr;
    char *summary = nullptr;
    CHECK(ordstat_bench_csv(&cfg, &rows, &summary) == ORDSTAT_OK);
    REQUIRE(rows != nullptr);
    REQUIRE(summary != nullptr);
    CHECK(std::string(rows).rfind("n,k,rep,exit,data,branch,incr,total\n", 0) == 0);
    CHECK(std::string(summary).rfind("n,k,min,mean,median,max\n", 0) == 0);
    ordstat_free(rows);
    ordstat_free(summary);

    ordstat_rng *g = ordstat_rng_new_classic(4);
    double buf[100];
    CHECK(ordstat_sample(ORDSTAT_DIST_LOGNORMAL, 0, 0.0, 1.0, 100, g, buf) ==
          ORDSTAT_OK);
    for (double v : buf)
        CHECK(v > 0.0);
    double ks = 0;
    CHECK(ordstat_dickman_fit(buf, 100, 10, &ks) == ORDSTAT_OK);
    ordstat_rng_free(g);
}

TEST_CASE("status strings") {
    CHECK(std::string(ordstat_strerror(ORDSTAT_OK)) == "ok");
    CHECK(std::string(ordstat_strerror(ORDSTAT_ERR_PARSE)) == "parse error");
}
