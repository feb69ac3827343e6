#include "ordstat.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>

#include "core/bench.hpp"
#include "core/medcouple.hpp"
#include "core/mt19937.hpp"
#include "core/raster.hpp"
#include "core/robust.hpp"
#include "core/select.hpp"
#include "core/vervaat.hpp"
#include "core/weighted.hpp"

using namespace ordstat;

struct ordstat_rng {
    Mt19937 gen;
};

struct ordstat_raster {
    Raster img;
};

namespace {

thread_local std::string g_last_error;

int fail(int status, const char *what) {
    g_last_error = what;
    return status;
}

// Maps C++ exceptions from the core onto status codes.
template <typename Fn> int guarded(Fn &&fn) {
    try {
        return fn();
    } catch (const std::invalid_argument &e) {
        return fail(ORDSTAT_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error &e) {
        return fail(ORDSTAT_ERR_DOMAIN, e.what());
    } catch (const std::bad_alloc &) {
        return fail(ORDSTAT_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(ORDSTAT_ERR_NO_CONVERGENCE, e.what());
    }
}

void copy_counts(const ComparisonCounts &src, ordstat_counts *dst) {
    if (!dst)
        return;
    dst->exit_tests = src.exit_tests;
    dst->data_comparisons = src.data_comparisons;
    dst->branch_tests = src.branch_tests;
    dst->position_increments = src.position_increments;
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char *ordstat_strerror(int status) {
    switch (status) {
    case ORDSTAT_OK:
        return "ok";
    case ORDSTAT_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case ORDSTAT_ERR_DOMAIN:
        return "domain error";
    case ORDSTAT_ERR_NO_CONVERGENCE:
        return "no convergence";
    case ORDSTAT_ERR_IO:
        return "i/o error";
    case ORDSTAT_ERR_PARSE:
        return "parse error";
    default:
        return "internal error";
    }
}

const char *ordstat_last_error(void) { return g_last_error.c_str(); }

/* ---- rng ---- */

ordstat_rng *ordstat_rng_new_classic(uint32_t seed) {
    return new (std::nothrow) ordstat_rng{Mt19937(seed)};
}

ordstat_rng *ordstat_rng_new_r(int32_t seed) {
    return new (std::nothrow) ordstat_rng{Mt19937::from_r_seed(seed)};
}

ordstat_rng *ordstat_rng_new_from_r_state(const int32_t codes[626]) {
    if (!codes)
        return nullptr;
    RSeedState st;
    std::memcpy(st.codes.data(), codes, sizeof st.codes);
    try {
        return new ordstat_rng{Mt19937::from_r_state(st)};
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return nullptr;
    }
}

void ordstat_rng_free(ordstat_rng *rng) { delete rng; }

int ordstat_r_seed_state(int32_t seed, int32_t codes_out[626]) {
    if (!codes_out)
        return fail(ORDSTAT_ERR_INVALID_ARGUMENT, "null output");
    const RSeedState st = RSeedState::from_seed(seed);
    std::memcpy(codes_out, st.codes.data(), sizeof st.codes);
    return ORDSTAT_OK;
}

double ordstat_rng_uniform53(ordstat_rng *rng) { return rng->gen.next_uniform53(); }
double ordstat_rng_r_uniform(ordstat_rng *rng) { return rng->gen.next_r_uniform(); }
double ordstat_rng_normal(ordstat_rng *rng) { return rng->gen.next_normal_inversion(); }
double ordstat_rng_r_normal(ordstat_rng *rng) { return rng->gen.next_r_normal(); }

int ordstat_rng_uniform_int(ordstat_rng *rng, uint64_t n, uint64_t *out) {
    return guarded([&] {
        if (!rng || !out)
            throw std::invalid_argument("uniform_int: null argument");
        *out = rng->gen.uniform_int(n);
        return ORDSTAT_OK;
    });
}

double ordstat_inverse_normal_cdf(double u) {
    try {
        return inverse_normal_cdf(u);
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return std::numeric_limits<double>::quiet_NaN();
    }
}

/* ---- selection ---- */

static int select_common(double *data, size_t n, size_t k, size_t oracle,
                         int shuffle, ordstat_rng *rng, double *out,
                         ordstat_counts *counts) {
    return guarded([&] {
        if (!data || !out)
            throw std::invalid_argument("select_kth: null argument");
        std::span<double> buf(data, n);
        std::optional<std::size_t> orc;
        if (oracle != 0)
            orc = oracle;
        if (counts) {
            ComparisonCounts c;
            *out = select_kth_counted(buf, k, c, orc, shuffle != 0,
                                      rng ? &rng->gen : nullptr);
            copy_counts(c, counts);
        } else {
            *out = select_kth(buf, k, orc, shuffle != 0, rng ? &rng->gen : nullptr);
        }
        return ORDSTAT_OK;
    });
}

int ordstat_select_kth(double *data, size_t n, size_t k, size_t oracle,
                       int shuffle, ordstat_rng *rng, double *out) {
    return select_common(data, n, k, oracle, shuffle, rng, out, nullptr);
}

int ordstat_select_kth_counted(double *data, size_t n, size_t k, size_t oracle,
                               int shuffle, ordstat_rng *rng, double *out,
                               ordstat_counts *counts) {
    if (!counts)
        return fail(ORDSTAT_ERR_INVALID_ARGUMENT, "select_kth_counted: null counts");
    return select_common(data, n, k, oracle, shuffle, rng, out, counts);
}

int ordstat_partition_step(double *data, size_t n, size_t left, size_t right,
                           size_t k, size_t *position_out) {
    return guarded([&] {
        if (!data || !position_out)
            throw std::invalid_argument("partition_step: null argument");
        *position_out = partition_step(std::span<double>(data, n), left, right, k);
        return ORDSTAT_OK;
    });
}

int ordstat_backward_shuffle(double *data, size_t n, ordstat_rng *rng) {
    return guarded([&] {
        if (!data || !rng)
            throw std::invalid_argument("backward_shuffle: null argument");
        backward_shuffle(std::span<double>(data, n), rng->gen);
        return ORDSTAT_OK;
    });
}

/* ---- weighted ---- */

int ordstat_weighted_percentile(double *values, double *weights, size_t n,
                                double p, double *value_out, double *weight_out,
                                size_t *kstar_out) {
    return guarded([&] {
        if (!values || !weights)
            throw std::invalid_argument("weighted_percentile: null argument");
        const auto res = weighted_percentile(std::span<double>(values, n),
                                             std::span<double>(weights, n), p);
        if (value_out)
            *value_out = res.value;
        if (weight_out)
            *weight_out = res.weight_at_k;
        if (kstar_out)
            *kstar_out = res.kstar;
        return ORDSTAT_OK;
    });
}

int ordstat_weighted_median(const double *values, const double *weights,
                            size_t n, double *out) {
    return guarded([&] {
        if (!values || !weights || !out)
            throw std::invalid_argument("weighted_median: null argument");
        *out = weighted_median(std::span<const double>(values, n),
                               std::span<const double>(weights, n));
        return ORDSTAT_OK;
    });
}

int ordstat_weighted_percentile_sorted(const double *values,
                                       const double *weights, size_t n,
                                       double p, double *out) {
    return guarded([&] {
        if (!values || !weights || !out)
            throw std::invalid_argument("weighted_percentile_sorted: null argument");
        *out = weighted_percentile_oracle(std::span<const double>(values, n),
                                          std::span<const double>(weights, n), p);
        return ORDSTAT_OK;
    });
}

/* ---- medcouple ---- */

int ordstat_medcouple(const double *x, size_t n, int method, double *out) {
    return guarded([&] {
        if (!x || !out)
            throw std::invalid_argument("medcouple: null argument");
        std::span<const double> v(x, n);
        *out = method == 1 ? medcouple_naive(v) : medcouple_fast(v);
        return ORDSTAT_OK;
    });
}

int ordstat_medcouple_kernel(double xi, double xj, double m, size_t pi,
                             size_t qj, double *out) {
    return guarded([&] {
        if (!out)
            throw std::invalid_argument("medcouple_kernel: null output");
        *out = medcouple_kernel(xi, xj, m, pi, qj);
        return ORDSTAT_OK;
    });
}

/* ---- vervaat ---- */

int ordstat_vervaat_pdf_cdf(double beta, int n_terms, const double *xs,
                            size_t count, double *f_out, double *cdf_out) {
    return guarded([&] {
        if (!xs)
            throw std::invalid_argument("vervaat_pdf_cdf: null points");
        VervaatParams params{beta, n_terms > 0 ? n_terms : 100};
        vervaat_pdf_cdf(params, std::span<const double>(xs, count),
                        f_out ? std::span<double>(f_out, count) : std::span<double>{},
                        cdf_out ? std::span<double>(cdf_out, count)
                                : std::span<double>{});
        return ORDSTAT_OK;
    });
}

int ordstat_dickman_cdf(const double *xs, size_t count, double *cdf_out) {
    return ordstat_vervaat_pdf_cdf(1.0, 100, xs, count, nullptr, cdf_out);
}

int ordstat_vervaat_rnd(double beta, size_t count, double eps, ordstat_rng *rng,
                        double *out) {
    return guarded([&] {
        if (!rng || (!out && count > 0))
            throw std::invalid_argument("vervaat_rnd: null argument");
        const auto v = vervaat_rnd(beta, count, rng->gen, eps);
        if (!v.empty())
            std::memcpy(out, v.data(), v.size() * sizeof(double));
        return ORDSTAT_OK;
    });
}

/* ---- robust ---- */

int ordstat_mahalanobis_sq(const double *X, size_t n, size_t p,
                           const double *mu, const double *sigma,
                           double *d2_out) {
    return guarded([&] {
        if (!X || !mu || !sigma || !d2_out)
            throw std::invalid_argument("mahalanobis_sq: null argument");
        DataView view{std::span<const double>(X, n * p), n, p};
        EllipsoidEstimate est;
        est.mu.assign(mu, mu + p);
        est.sigma.assign(sigma, sigma + p * p);
        const auto d2 = mahalanobis_sq(view, est);
        std::memcpy(d2_out, d2.data(), d2.size() * sizeof(double));
        return ORDSTAT_OK;
    });
}

int ordstat_cstep(const double *X, size_t n, size_t p, const size_t *subset,
                  size_t h_in, size_t h, int backend, ordstat_rng *rng,
                  size_t *subset_out, double *det_out, ordstat_counts *counts) {
    return guarded([&] {
        if (!X || !subset || !subset_out)
            throw std::invalid_argument("cstep: null argument");
        DataView view{std::span<const double>(X, n * p), n, p};
        const auto est =
            fit_subset(view, std::span<const size_t>(subset, h_in));
        ComparisonCounts c;
        const auto next =
            cstep(view, est, h, static_cast<UpdateBackend>(backend),
                  rng ? &rng->gen : nullptr, counts ? &c : nullptr);
        std::memcpy(subset_out, next.subset.data(), h * sizeof(size_t));
        if (det_out)
            *det_out = next.det;
        copy_counts(c, counts);
        return ORDSTAT_OK;
    });
}

int ordstat_mcd(const double *X, size_t n, size_t p, size_t h, size_t n_starts,
                int backend, uint32_t seed, double *mu_out, double *sigma_out,
                double *det_out, size_t *subset_out, ordstat_counts *counts) {
    return guarded([&] {
        if (!X)
            throw std::invalid_argument("mcd: null data");
        DataView view{std::span<const double>(X, n * p), n, p};
        Mt19937 rng(seed);
        ComparisonCounts c;
        const auto est = mcd_approx(view, h, n_starts, rng,
                                    static_cast<UpdateBackend>(backend),
                                    counts ? &c : nullptr);
        if (mu_out)
            std::memcpy(mu_out, est.mu.data(), p * sizeof(double));
        if (sigma_out)
            std::memcpy(sigma_out, est.sigma.data(), p * p * sizeof(double));
        if (det_out)
            *det_out = est.det;
        if (subset_out)
            std::memcpy(subset_out, est.subset.data(), h * sizeof(size_t));
        copy_counts(c, counts);
        return ORDSTAT_OK;
    });
}

int ordstat_fs(const double *X, size_t n, size_t p, size_t m0, int backend,
               size_t *m_out, ordstat_counts *step_counts, size_t *n_steps_out) {
    return guarded([&] {
        if (!X || !n_steps_out)
            throw std::invalid_argument("fs: null argument");
        DataView view{std::span<const double>(X, n * p), n, p};
        const auto steps =
            fs_progression(view, m0, static_cast<UpdateBackend>(backend));
        *n_steps_out = steps.size();
        for (size_t i = 0; i < steps.size(); ++i) {
            if (m_out)
                m_out[i] = steps[i].m;
            if (step_counts)
                copy_counts(steps[i].counts, &step_counts[i]);
        }
        return ORDSTAT_OK;
    });
}

/* ---- raster ---- */

ordstat_raster *ordstat_raster_new(int width, int height, int channels) {
    if (width < 1 || height < 1 || (channels != 1 && channels != 3)) {
        g_last_error = "raster_new: bad dimensions";
        return nullptr;
    }
    auto *r = new (std::nothrow) ordstat_raster;
    if (!r)
        return nullptr;
    r->img.width = width;
    r->img.height = height;
    r->img.channels = channels;
    r->img.samples.assign(
        static_cast<size_t>(width) * height * channels, 0);
    return r;
}

void ordstat_raster_free(ordstat_raster *r) { delete r; }
int ordstat_raster_width(const ordstat_raster *r) { return r->img.width; }
int ordstat_raster_height(const ordstat_raster *r) { return r->img.height; }
int ordstat_raster_channels(const ordstat_raster *r) { return r->img.channels; }
uint8_t *ordstat_raster_samples(ordstat_raster *r) { return r->img.samples.data(); }

int ordstat_read_pnm_file(const char *path, ordstat_raster **out) {
    return guarded([&]() -> int {
        if (!path || !out)
            throw std::invalid_argument("read_pnm: null argument");
        try {
            auto img = read_pnm_file(path);
            *out = new ordstat_raster{std::move(img)};
            return ORDSTAT_OK;
        } catch (const std::invalid_argument &e) {
            return fail(ORDSTAT_ERR_PARSE, e.what());
        } catch (const std::runtime_error &e) {
            return fail(ORDSTAT_ERR_IO, e.what());
        }
    });
}

int ordstat_read_pnm_mem(const uint8_t *bytes, size_t len, ordstat_raster **out) {
    return guarded([&]() -> int {
        if (!bytes || !out)
            throw std::invalid_argument("read_pnm: null argument");
        try {
            auto img = read_pnm(std::span<const uint8_t>(bytes, len));
            *out = new ordstat_raster{std::move(img)};
            return ORDSTAT_OK;
        } catch (const std::invalid_argument &e) {
            return fail(ORDSTAT_ERR_PARSE, e.what());
        }
    });
}

int ordstat_write_pnm_file(const ordstat_raster *r, const char *path,
                           int binary) {
    return guarded([&]() -> int {
        if (!r || !path)
            throw std::invalid_argument("write_pnm: null argument");
        try {
            write_pnm_file(r->img, path, binary != 0);
            return ORDSTAT_OK;
        } catch (const std::runtime_error &e) {
            return fail(ORDSTAT_ERR_IO, e.what());
        }
    });
}

int ordstat_add_salt_pepper(ordstat_raster *r, double pnoise, ordstat_rng *rng) {
    return guarded([&] {
        if (!r || !rng)
            throw std::invalid_argument("add_salt_pepper: null argument");
        add_salt_pepper(r->img, pnoise, rng->gen);
        return ORDSTAT_OK;
    });
}

int ordstat_weighted_median_filter(const ordstat_raster *in,
                                   const double mask[9],
                                   ordstat_raster **out) {
    return guarded([&] {
        if (!in || !out)
            throw std::invalid_argument("filter: null argument");
        const Mask3 m = mask ? Mask3::normalized(std::span<const double>(mask, 9))
                             : Mask3::wiener();
        auto img = weighted_median_filter(in->img, m);
        *out = new ordstat_raster{std::move(img)};
        return ORDSTAT_OK;
    });
}

/* ---- bench ---- */

int ordstat_bench_csv(const ordstat_bench_config *cfg, char **rows_csv,
                      char **summary_csv) {
    return guarded([&] {
        if (!cfg)
            throw std::invalid_argument("bench: null config");
        BenchConfig c;
        c.dist = static_cast<Dist>(cfg->dist);
        c.shape = cfg->shape;
        c.mu = cfg->mu;
        c.sigma = cfg->sigma;
        c.n_set.assign(cfg->n_set, cfg->n_set + cfg->n_count);
        for (size_t i = 0; i < cfg->k_count; ++i) {
            RankSpec spec;
            const int64_t code = cfg->k_set[i];
            if (code == ORDSTAT_K_MEDIAN)
                spec.kind = RankSpec::Kind::median;
            else if (code == ORDSTAT_K_MAX)
                spec.kind = RankSpec::Kind::max;
            else if (code == ORDSTAT_K_MIN)
                spec.kind = RankSpec::Kind::min;
            else if (code >= 1) {
                spec.kind = RankSpec::Kind::value;
                spec.value = static_cast<size_t>(code);
            } else {
                throw std::invalid_argument("bench: bad rank code");
            }
            c.k_set.push_back(spec);
        }
        c.replicates = cfg->replicates;
        c.seed = cfg->seed;
        c.variant = static_cast<BenchVariant>(cfg->variant);
        c.wallclock = cfg->wallclock != 0;

        const auto rows = bench_run(c);
        if (rows_csv)
            *rows_csv = dup_string(rows_to_csv(rows, c.wallclock));
        if (summary_csv)
            *summary_csv = dup_string(summary_to_csv(rows));
        return ORDSTAT_OK;
    });
}

void ordstat_free(void *ptr) { std::free(ptr); }

int ordstat_sample(int dist, double shape, double mu, double sigma, size_t n,
                   ordstat_rng *rng, double *out) {
    return guarded([&] {
        if (!rng || (!out && n > 0))
            throw std::invalid_argument("sample: null argument");
        const auto v =
            sample(static_cast<Dist>(dist), shape, mu, sigma, n, rng->gen);
        if (!v.empty())
            std::memcpy(out, v.data(), v.size() * sizeof(double));
        return ORDSTAT_OK;
    });
}

int ordstat_dickman_fit(const double *totals, size_t count, size_t n,
                        double *ks_out) {
    return guarded([&] {
        if (!totals || !ks_out)
            throw std::invalid_argument("dickman_fit: null argument");
        *ks_out = dickman_fit(std::span<const double>(totals, count), n);
        return ORDSTAT_OK;
    });
}

} // extern "C"
