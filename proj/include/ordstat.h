/* ordstat — linear-time order statistics, weighted percentiles and friends.
 *
 * C API of the shared library. All functions return ORDSTAT_OK (0) on
 * success or a nonzero ordstat_status; a human-readable message for the
 * last failure on the calling thread is available via ordstat_last_error().
 *
 * Ranks and oracle hints are 1-based, matching the usual statistical
 * convention a_(k). Selection routines permute the caller's buffer in
 * place; the caller keeps ownership of all non-opaque memory.
 */
#ifndef ORDSTAT_H
#define ORDSTAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ORDSTAT_API __declspec(dllexport)
#else
#define ORDSTAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ordstat_status {
    ORDSTAT_OK = 0,
    ORDSTAT_ERR_INVALID_ARGUMENT = 1,
    ORDSTAT_ERR_DOMAIN = 2,
    ORDSTAT_ERR_NO_CONVERGENCE = 3,
    ORDSTAT_ERR_IO = 4,
    ORDSTAT_ERR_PARSE = 5,
    ORDSTAT_ERR_INTERNAL = 6
} ordstat_status;

ORDSTAT_API const char *ordstat_strerror(int status);
ORDSTAT_API const char *ordstat_last_error(void);

/* ------------------------------------------------------------------ */
/* Random number generation (MT19937)                                  */
/* ------------------------------------------------------------------ */

typedef struct ordstat_rng ordstat_rng;

/* Classic init_genrand seeding. */
ORDSTAT_API ordstat_rng *ordstat_rng_new_classic(uint32_t seed);
/* Base-R compatible seeding (69069 LCG burn-in, R state layout). */
ORDSTAT_API ordstat_rng *ordstat_rng_new_r(int32_t seed);
/* Build a generator from a raw 626-integer R state vector. */
ORDSTAT_API ordstat_rng *ordstat_rng_new_from_r_state(const int32_t codes[626]);
ORDSTAT_API void ordstat_rng_free(ordstat_rng *rng);

/* The 626-integer R-style seed state for a given seed
 * (codes[0]=403 generator tag, codes[1]=624 cursor, then 624 words). */
ORDSTAT_API int ordstat_r_seed_state(int32_t seed, int32_t codes_out[626]);

/* 53-bit uniform in [0,1): (a*2^26 + b)/2^53 from two tempered words. */
ORDSTAT_API double ordstat_rng_uniform53(ordstat_rng *rng);
/* Base-R unif_rand: one tempered word / 2^32, clamped into (0,1). */
ORDSTAT_API double ordstat_rng_r_uniform(ordstat_rng *rng);
/* Phi^-1(uniform53); u == 0 is resampled. */
ORDSTAT_API double ordstat_rng_normal(ordstat_rng *rng);
/* Base-R inversion normal (two uniforms, 2^27 refinement). */
ORDSTAT_API double ordstat_rng_r_normal(ordstat_rng *rng);
/* ceil(u*n) on a uniform53 draw; result in [1,n]. */
ORDSTAT_API int ordstat_rng_uniform_int(ordstat_rng *rng, uint64_t n, uint64_t *out);

/* Inverse standard normal cdf (rational approximation, |rel err| < 1e-15). */
ORDSTAT_API double ordstat_inverse_normal_cdf(double u);

/* ------------------------------------------------------------------ */
/* Selection                                                           */
/* ------------------------------------------------------------------ */

typedef struct ordstat_counts {
    uint64_t exit_tests;          /* outer-loop admission tests  */
    uint64_t data_comparisons;    /* element-vs-pivot comparisons */
    uint64_t branch_tests;        /* cursor-update branch tests  */
    uint64_t position_increments; /* pivot-position advances     */
} ordstat_counts;

/* k-th smallest of data[0..n), buffer permuted around rank k.
 * oracle: 1-based hint position, 0 for none. If shuffle is nonzero an rng
 * must be supplied and the buffer is backward-shuffled first. */
ORDSTAT_API int ordstat_select_kth(double *data, size_t n, size_t k,
                                   size_t oracle, int shuffle,
                                   ordstat_rng *rng, double *out);
ORDSTAT_API int ordstat_select_kth_counted(double *data, size_t n, size_t k,
                                           size_t oracle, int shuffle,
                                           ordstat_rng *rng, double *out,
                                           ordstat_counts *counts);
/* One partition pass on [left,right] (1-based, inclusive) with pivot
 * taken from position k; returns the pivot's final position. */
ORDSTAT_API int ordstat_partition_step(double *data, size_t n, size_t left,
                                       size_t right, size_t k,
                                       size_t *position_out);
ORDSTAT_API int ordstat_backward_shuffle(double *data, size_t n,
                                         ordstat_rng *rng);

/* ------------------------------------------------------------------ */
/* Weighted percentiles                                                */
/* ------------------------------------------------------------------ */

/* Weighted percentile of (values,weights) rows, permuted as pairs in
 * place. Weights must be non-negative with positive total; they are
 * normalized internally. Returns the lower-percentile row: the smallest
 * kstar whose running weight crosses p. kstar_out is 1-based. */
ORDSTAT_API int ordstat_weighted_percentile(double *values, double *weights,
                                            size_t n, double p,
                                            double *value_out,
                                            double *weight_out,
                                            size_t *kstar_out);
/* Lower weighted median (p = 1/2); inputs are not modified. */
ORDSTAT_API int ordstat_weighted_median(const double *values,
                                        const double *weights, size_t n,
                                        double *out);
/* Sort-based reference: value at the smallest sorted rank whose running
 * normalized weight sum reaches p. */
ORDSTAT_API int ordstat_weighted_percentile_sorted(const double *values,
                                                   const double *weights,
                                                   size_t n, double p,
                                                   double *out);

/* ------------------------------------------------------------------ */
/* Medcouple                                                           */
/* ------------------------------------------------------------------ */

/* Robust skewness in [-1,1]. method: 0 = fast (weighted-median based),
 * 1 = naive O(n^2) kernel enumeration. */
ORDSTAT_API int ordstat_medcouple(const double *x, size_t n, int method,
                                  double *out);
/* Pairwise kernel; xi <= m <= xj required. pi/qj are tie ranks used when
 * xi == xj == m. */
ORDSTAT_API int ordstat_medcouple_kernel(double xi, double xj, double m,
                                         size_t pi, size_t qj, double *out);

/* ------------------------------------------------------------------ */
/* Vervaat perpetuities (Dickman at beta = 1)                          */
/* ------------------------------------------------------------------ */

/* Series pdf/cdf at the points xs[0..count) (all > 0). Either of f_out /
 * cdf_out may be NULL. n_terms <= 0 selects the default order (100). */
ORDSTAT_API int ordstat_vervaat_pdf_cdf(double beta, int n_terms,
                                        const double *xs, size_t count,
                                        double *f_out, double *cdf_out);
ORDSTAT_API int ordstat_dickman_cdf(const double *xs, size_t count,
                                    double *cdf_out);
/* Truncated-perpetuity sampler: partial sums of W1 + W1*W2 + ... with
 * W ~ U^(1/beta), truncated when the running product drops below eps. */
ORDSTAT_API int ordstat_vervaat_rnd(double beta, size_t count, double eps,
                                    ordstat_rng *rng, double *out);

/* ------------------------------------------------------------------ */
/* Robust estimation steps (MCD / Forward Search)                      */
/* ------------------------------------------------------------------ */

typedef enum ordstat_backend {
    ORDSTAT_BACKEND_SORT = 0,
    ORDSTAT_BACKEND_SELECT = 1,
    ORDSTAT_BACKEND_SELECT_ORACLE = 2
} ordstat_backend;

/* Squared Mahalanobis distances of the n rows of X (row-major n x p). */
ORDSTAT_API int ordstat_mahalanobis_sq(const double *X, size_t n, size_t p,
                                       const double *mu, const double *sigma,
                                       double *d2_out);

/* One concentration step: replaces subset (0-based indices, h_in entries)
 * by the h observations with smallest squared distances under the subset's
 * fit. subset_out must hold h entries. */
ORDSTAT_API int ordstat_cstep(const double *X, size_t n, size_t p,
                              const size_t *subset, size_t h_in, size_t h,
                              int backend, ordstat_rng *rng,
                              size_t *subset_out, double *det_out,
                              ordstat_counts *counts);

/* Approximate MCD: n_starts random (p+1)-subsets iterated to convergence,
 * minimum-determinant fit returned. mu_out: p, sigma_out: p*p,
 * subset_out: h 0-based indices. counts may be NULL. */
ORDSTAT_API int ordstat_mcd(const double *X, size_t n, size_t p, size_t h,
                            size_t n_starts, int backend, uint32_t seed,
                            double *mu_out, double *sigma_out,
                            double *det_out, size_t *subset_out,
                            ordstat_counts *counts);

/* Forward-Search progression from subset size m0 to n. For each of the
 * n-m0+1 steps writes the subset size and the selection counts. */
ORDSTAT_API int ordstat_fs(const double *X, size_t n, size_t p, size_t m0,
                           int backend, size_t *m_out,
                           ordstat_counts *step_counts, size_t *n_steps_out);

/* ------------------------------------------------------------------ */
/* Raster filtering (PNM)                                              */
/* ------------------------------------------------------------------ */

typedef struct ordstat_raster ordstat_raster;

ORDSTAT_API ordstat_raster *ordstat_raster_new(int width, int height,
                                               int channels);
ORDSTAT_API void ordstat_raster_free(ordstat_raster *r);
ORDSTAT_API int ordstat_raster_width(const ordstat_raster *r);
ORDSTAT_API int ordstat_raster_height(const ordstat_raster *r);
ORDSTAT_API int ordstat_raster_channels(const ordstat_raster *r);
/* Channel-planar samples, length width*height*channels. */
ORDSTAT_API uint8_t *ordstat_raster_samples(ordstat_raster *r);

ORDSTAT_API int ordstat_read_pnm_file(const char *path, ordstat_raster **out);
ORDSTAT_API int ordstat_read_pnm_mem(const uint8_t *bytes, size_t len,
                                     ordstat_raster **out);
ORDSTAT_API int ordstat_write_pnm_file(const ordstat_raster *r,
                                       const char *path, int binary);

ORDSTAT_API int ordstat_add_salt_pepper(ordstat_raster *r, double pnoise,
                                        ordstat_rng *rng);
/* 3x3 weighted-median filter; mask is row-major, normalized internally.
 * One-pixel border is copied unchanged. */
ORDSTAT_API int ordstat_weighted_median_filter(const ordstat_raster *in,
                                               const double mask[9],
                                               ordstat_raster **out);

/* ------------------------------------------------------------------ */
/* Benchmark harness                                                   */
/* ------------------------------------------------------------------ */

typedef enum ordstat_dist {
    ORDSTAT_DIST_UNIFORM = 0,
    ORDSTAT_DIST_BIRNBAUM_SAUNDERS = 1,
    ORDSTAT_DIST_LOGNORMAL = 2
} ordstat_dist;

typedef enum ordstat_bench_variant {
    ORDSTAT_VARIANT_SELECT = 0,
    ORDSTAT_VARIANT_SELECT_ORACLE = 1,
    ORDSTAT_VARIANT_SORT_BASELINE = 2
} ordstat_bench_variant;

/* Symbolic ranks for bench k sets. */
#define ORDSTAT_K_MEDIAN (-1)
#define ORDSTAT_K_MAX (-2)
#define ORDSTAT_K_MIN (-3)

typedef struct ordstat_bench_config {
    int dist;              /* ordstat_dist */
    double shape;          /* Birnbaum-Saunders shape */
    double mu, sigma;      /* lognormal parameters */
    const size_t *n_set;
    size_t n_count;
    const int64_t *k_set;  /* ranks or ORDSTAT_K_* codes */
    size_t k_count;
    size_t replicates;
    uint32_t seed;
    int variant;           /* ordstat_bench_variant */
    int wallclock;         /* nonzero: append a wall_us column */
} ordstat_bench_config;

/* Runs the harness and returns malloc'ed CSV text for the raw rows and
 * the grouped (n,k) summary. Free both with ordstat_free. Either output
 * pointer may be NULL if not wanted. */
ORDSTAT_API int ordstat_bench_csv(const ordstat_bench_config *cfg,
                                  char **rows_csv, char **summary_csv);
ORDSTAT_API void ordstat_free(void *ptr);

/* i.i.d. sample from a bench distribution. */
ORDSTAT_API int ordstat_sample(int dist, double shape, double mu,
                               double sigma, size_t n, ordstat_rng *rng,
                               double *out);

/* Kolmogorov-Smirnov distance between the empirical law of totals/n - 1
 * and the Dickman cdf. */
ORDSTAT_API int ordstat_dickman_fit(const double *totals, size_t count,
                                    size_t n, double *ks_out);

#ifdef __cplusplus
}
#endif

#endif /* ORDSTAT_H */
