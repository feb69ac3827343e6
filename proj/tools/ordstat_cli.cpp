// ordstat command line: selection, weighted percentiles, medcouple,
// Vervaat/Dickman utilities, reproducible RNG streams, robust-step
// benchmarks, raster filtering and the comparison-count harness.
//
// Talks to the shared library exclusively through the C API.
#include "ordstat.h"

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RngDeleter {
    void operator()(ordstat_rng *r) const { ordstat_rng_free(r); }
};
using RngPtr = std::unique_ptr<ordstat_rng, RngDeleter>;

struct RasterDeleter {
    void operator()(ordstat_raster *r) const { ordstat_raster_free(r); }
};
using RasterPtr = std::unique_ptr<ordstat_raster, RasterDeleter>;

[[noreturn]] void die(const std::string &msg) {
    std::cerr << "ordstat: " << msg << "\n";
    std::exit(1);
}

// malformed invocations (missing/ill-formed arguments) exit with 2
[[noreturn]] void usage_die(const std::string &msg) {
    std::cerr << "ordstat: " << msg << "\n";
    std::exit(2);
}

void check(int status) {
    if (status != ORDSTAT_OK)
        die(std::string(ordstat_strerror(status)) + ": " + ordstat_last_error());
}

std::vector<double> parse_doubles(const std::string &csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception &) {
            usage_die("cannot parse number '" + tok + "'");
        }
    }
    return out;
}

std::vector<double> read_values_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        die("cannot open '" + path + "'");
    std::vector<double> out;
    double v;
    while (in >> v)
        out.push_back(v);
    return out;
}

int parse_dist(const std::string &name) {
    if (name == "uniform")
        return ORDSTAT_DIST_UNIFORM;
    if (name == "bs" || name == "birnbaum-saunders")
        return ORDSTAT_DIST_BIRNBAUM_SAUNDERS;
    if (name == "lognormal")
        return ORDSTAT_DIST_LOGNORMAL;
    usage_die("unknown distribution '" + name + "'");
}

int parse_backend(const std::string &name) {
    if (name == "sort")
        return ORDSTAT_BACKEND_SORT;
    if (name == "select")
        return ORDSTAT_BACKEND_SELECT;
    if (name == "select-oracle")
        return ORDSTAT_BACKEND_SELECT_ORACLE;
    usage_die("unknown backend '" + name + "'");
}

int64_t parse_rank(const std::string &tok) {
    if (tok == "median")
        return ORDSTAT_K_MEDIAN;
    if (tok == "max")
        return ORDSTAT_K_MAX;
    if (tok == "min")
        return ORDSTAT_K_MIN;
    try {
        return std::stoll(tok);
    } catch (const std::exception &) {
        usage_die("cannot parse rank '" + tok + "'");
    }
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        die("cannot open '" + path + "' for writing");
    out << text;
}

void print_value(double v) { std::printf("%.17g\n", v); }

// p-variate standard normal with the first floor(frac*n) rows shifted by
// +4 in every coordinate
std::vector<double> contaminated_normal(std::size_t n, std::size_t p,
                                        double frac, ordstat_rng *rng) {
    std::vector<double> X(n * p);
    for (auto &v : X)
        v = ordstat_rng_normal(rng);
    const std::size_t ncont = static_cast<std::size_t>(frac * static_cast<double>(n));
    for (std::size_t i = 0; i < ncont; ++i)
        for (std::size_t j = 0; j < p; ++j)
            X[i * p + j] += 4.0;
    return X;
}

void print_counts_line(const ordstat_counts &c) {
    std::printf("exit=%" PRIu64 " data=%" PRIu64 " branch=%" PRIu64
                " incr=%" PRIu64 " total=%" PRIu64 "\n",
                c.exit_tests, c.data_comparisons, c.branch_tests,
                c.position_increments,
                c.exit_tests + c.data_comparisons + c.branch_tests);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"linear-time order statistics toolkit"};
    app.require_subcommand(1);

    // ---- select ----
    auto *sel = app.add_subcommand("select", "k-th order statistic");
    std::string sel_data, sel_file, sel_k = "median", sel_dist = "uniform";
    std::size_t sel_n = 0, sel_oracle = 0;
    unsigned sel_seed = 0;
    bool sel_shuffle = false, sel_counts = false;
    sel->add_option("--data", sel_data, "comma-separated values");
    sel->add_option("--file", sel_file, "whitespace-separated values file");
    sel->add_option("--n", sel_n, "generate n values instead of --data");
    sel->add_option("--dist", sel_dist, "uniform|bs|lognormal (with --n)");
    sel->add_option("--k", sel_k, "rank: integer, median, max or min");
    sel->add_option("--oracle", sel_oracle, "1-based oracle hint position");
    sel->add_flag("--shuffle", sel_shuffle, "backward-shuffle first");
    sel->add_flag("--counts", sel_counts, "print the comparison breakdown");
    sel->add_option("--seed", sel_seed, "rng seed");

    // ---- wselect ----
    auto *wsel = app.add_subcommand("wselect", "weighted percentile");
    std::string w_values, w_weights;
    double w_p = 0.5;
    wsel->add_option("--values", w_values, "comma-separated values")->required();
    wsel->add_option("--weights", w_weights, "comma-separated non-negative weights")
        ->required();
    wsel->add_option("--p", w_p, "percentile fraction in [0,1]");
    unsigned w_seed = 0;
    wsel->add_option("--seed", w_seed, "unused; accepted for uniformity");

    // ---- medcouple ----
    auto *mc = app.add_subcommand("medcouple", "robust skewness");
    std::string mc_data, mc_file, mc_method = "fast";
    unsigned mc_seed = 0;
    mc->add_option("--data", mc_data, "comma-separated values");
    mc->add_option("--file", mc_file, "whitespace-separated values file");
    mc->add_option("--method", mc_method, "fast|naive");
    mc->add_option("--seed", mc_seed, "unused; accepted for uniformity");

    // ---- vervaat ----
    auto *vv = app.add_subcommand("vervaat", "Vervaat pdf/cdf/random variates");
    std::string vv_mode, vv_x;
    double vv_beta = 1.0, vv_eps = 1e-12;
    std::size_t vv_count = 0;
    unsigned vv_seed = 0;
    vv->add_option("mode", vv_mode, "pdf|cdf|rnd")->required();
    vv->add_option("--beta", vv_beta, "shape parameter > 0");
    vv->add_option("--x", vv_x, "evaluation points (pdf/cdf)");
    vv->add_option("--count", vv_count, "number of variates (rnd)");
    vv->add_option("--eps", vv_eps, "perpetuity truncation tolerance (rnd)");
    vv->add_option("--seed", vv_seed, "rng seed (rnd)");

    // ---- rng ----
    auto *rng_cmd = app.add_subcommand("rng", "reproducible random streams");
    std::string rng_mode = "classic", rng_dist = "unif";
    std::size_t rng_count = 10;
    long long rng_seed = 0;
    rng_cmd->add_option("--mode", rng_mode, "classic|r");
    rng_cmd->add_option("--seed", rng_seed, "seed");
    rng_cmd->add_option("--count", rng_count, "number of values");
    rng_cmd->add_option("--dist", rng_dist, "unif|norm|int:N");

    // ---- robust ----
    auto *rob = app.add_subcommand("robust", "MCD / Forward-Search benchmarks");
    std::string rob_mode, rob_backend = "select", rob_out;
    std::size_t rob_n = 200, rob_p = 2, rob_reps = 10, rob_h = 0, rob_m0 = 0,
                rob_starts = 20;
    double rob_cont = 0.0;
    unsigned rob_seed = 0;
    rob->add_option("mode", rob_mode, "mcd|fs")->required();
    rob->add_option("--n", rob_n, "observations per dataset");
    rob->add_option("--p", rob_p, "dimension");
    rob->add_option("--contamination", rob_cont, "shifted fraction in [0,0.4]");
    rob->add_option("--backend", rob_backend, "sort|select|select-oracle");
    rob->add_option("--replicates", rob_reps, "datasets to run");
    rob->add_option("--hsize", rob_h, "MCD subset size (default (n+p+1)/2)");
    rob->add_option("--starts", rob_starts, "MCD random starts");
    rob->add_option("--m0", rob_m0, "FS initial subset size (default p+1)");
    rob->add_option("--out", rob_out, "CSV output path (default stdout)");
    rob->add_option("--seed", rob_seed, "base seed");

    // ---- filter ----
    auto *fl = app.add_subcommand("filter", "weighted-median raster denoiser");
    std::string fl_in, fl_out, fl_mask;
    double fl_noise = -1.0;
    unsigned fl_seed = 0;
    bool fl_plain = false;
    fl->add_option("--in", fl_in, "input PNM (P2/P3/P5/P6, maxval 255)")->required();
    fl->add_option("--out", fl_out, "output PNM")->required();
    fl->add_option("--noise", fl_noise, "salt-and-pepper fraction to inject first");
    fl->add_option("--mask", fl_mask, "9 comma-separated weights, row-major");
    fl->add_flag("--plain", fl_plain, "write plain (P2/P3) instead of binary");
    fl->add_option("--seed", fl_seed, "noise rng seed");

    // ---- bench ----
    auto *bn = app.add_subcommand("bench", "comparison-count harness");
    std::string bn_dist = "uniform", bn_n = "1000", bn_k = "median",
                bn_variant = "select", bn_out, bn_summary;
    double bn_shape = 0.5, bn_mu = 0.0, bn_sigma = 1.0;
    std::size_t bn_r = 100;
    unsigned bn_seed = 0;
    bool bn_wall = false, bn_dickman = false;
    bn->add_option("--dist", bn_dist, "uniform|bs|lognormal");
    bn->add_option("--shape", bn_shape, "Birnbaum-Saunders shape");
    bn->add_option("--mu", bn_mu, "lognormal mu");
    bn->add_option("--sigma", bn_sigma, "lognormal sigma");
    bn->add_option("--n", bn_n, "comma-separated sample sizes");
    bn->add_option("--k", bn_k, "comma-separated ranks (integer|median|max|min)");
    bn->add_option("--r", bn_r, "replicates per (n,k)");
    bn->add_option("--variant", bn_variant, "select|select-oracle|sort");
    bn->add_option("--out", bn_out, "raw rows CSV path (default stdout)");
    bn->add_option("--summary", bn_summary, "grouped summary CSV path");
    bn->add_flag("--wallclock", bn_wall, "append a wall_us column");
    bn->add_flag("--dickman", bn_dickman,
                 "print the KS distance of total/n - 1 to the Dickman cdf");
    bn->add_option("--seed", bn_seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) // --help
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    if (sel->parsed()) {
        RngPtr rng(ordstat_rng_new_classic(sel_seed));
        std::vector<double> data;
        if (!sel_data.empty())
            data = parse_doubles(sel_data);
        else if (!sel_file.empty())
            data = read_values_file(sel_file);
        else if (sel_n > 0)
            data.resize(sel_n);
        else
            usage_die("select: provide --data, --file or --n");
        if (sel_data.empty() && sel_file.empty())
            check(ordstat_sample(parse_dist(sel_dist), 0.5, 0.0, 1.0, data.size(),
                                 rng.get(), data.data()));
        const int64_t code = parse_rank(sel_k);
        std::size_t k;
        if (code == ORDSTAT_K_MEDIAN)
            k = (data.size() + 1) / 2;
        else if (code == ORDSTAT_K_MAX)
            k = data.size();
        else if (code == ORDSTAT_K_MIN)
            k = 1;
        else
            k = static_cast<std::size_t>(code);
        double out;
        if (sel_counts) {
            ordstat_counts counts;
            check(ordstat_select_kth_counted(data.data(), data.size(), k,
                                             sel_oracle, sel_shuffle, rng.get(),
                                             &out, &counts));
            print_value(out);
            print_counts_line(counts);
        } else {
            check(ordstat_select_kth(data.data(), data.size(), k, sel_oracle,
                                     sel_shuffle, rng.get(), &out));
            print_value(out);
        }
        return 0;
    }

    if (wsel->parsed()) {
        auto values = parse_doubles(w_values);
        auto weights = parse_doubles(w_weights);
        if (values.size() != weights.size())
            usage_die("wselect: values and weights must have equal length");
        double value, weight;
        std::size_t kstar;
        check(ordstat_weighted_percentile(values.data(), weights.data(),
                                          values.size(), w_p, &value, &weight,
                                          &kstar));
        std::printf("value=%.17g weight=%.17g kstar=%zu\n", value, weight, kstar);
        return 0;
    }

    if (mc->parsed()) {
        std::vector<double> data;
        if (!mc_data.empty())
            data = parse_doubles(mc_data);
        else if (!mc_file.empty())
            data = read_values_file(mc_file);
        else
            usage_die("medcouple: provide --data or --file");
        const int method = mc_method == "naive" ? 1 : 0;
        if (mc_method != "naive" && mc_method != "fast")
            usage_die("medcouple: method must be fast or naive");
        double out;
        check(ordstat_medcouple(data.data(), data.size(), method, &out));
        print_value(out);
        return 0;
    }

    if (vv->parsed()) {
        if (vv_mode == "pdf" || vv_mode == "cdf") {
            if (vv_x.empty())
                usage_die("vervaat: " + vv_mode + " needs --x");
            const auto xs = parse_doubles(vv_x);
            std::vector<double> f(xs.size()), F(xs.size());
            check(ordstat_vervaat_pdf_cdf(vv_beta, 0, xs.data(), xs.size(),
                                          f.data(), F.data()));
            for (std::size_t i = 0; i < xs.size(); ++i)
                print_value(vv_mode == "pdf" ? f[i] : F[i]);
        } else if (vv_mode == "rnd") {
            RngPtr rng(ordstat_rng_new_classic(vv_seed));
            std::vector<double> out(vv_count);
            check(ordstat_vervaat_rnd(vv_beta, vv_count, vv_eps, rng.get(),
                                      out.data()));
            for (double v : out)
                print_value(v);
        } else {
            usage_die("vervaat: mode must be pdf, cdf or rnd");
        }
        return 0;
    }

    if (rng_cmd->parsed()) {
        RngPtr rng;
        if (rng_mode == "classic")
            rng.reset(ordstat_rng_new_classic(static_cast<uint32_t>(rng_seed)));
        else if (rng_mode == "r")
            rng.reset(ordstat_rng_new_r(static_cast<int32_t>(rng_seed)));
        else
            usage_die("rng: mode must be classic or r");
        if (!rng)
            die("rng: cannot create generator");
        const bool r_mode = rng_mode == "r";
        if (rng_dist == "unif") {
            for (std::size_t i = 0; i < rng_count; ++i)
                print_value(r_mode ? ordstat_rng_r_uniform(rng.get())
                                   : ordstat_rng_uniform53(rng.get()));
        } else if (rng_dist == "norm") {
            for (std::size_t i = 0; i < rng_count; ++i)
                print_value(r_mode ? ordstat_rng_r_normal(rng.get())
                                   : ordstat_rng_normal(rng.get()));
        } else if (rng_dist.rfind("int:", 0) == 0) {
            unsigned long long nmax = 0;
            try {
                nmax = std::stoull(rng_dist.substr(4));
            } catch (const std::exception &) {
                usage_die("rng: bad int:N spec '" + rng_dist + "'");
            }
            for (std::size_t i = 0; i < rng_count; ++i) {
                uint64_t v;
                if (r_mode) {
                    // ceil(u*N) on the R uniform stream
                    const double u = ordstat_rng_r_uniform(rng.get());
                    v = static_cast<uint64_t>(
                        std::max(1.0, std::ceil(u * static_cast<double>(nmax))));
                    if (v > nmax)
                        v = nmax;
                } else {
                    check(ordstat_rng_uniform_int(rng.get(), nmax, &v));
                }
                std::printf("%" PRIu64 "\n", v);
            }
        } else {
            usage_die("rng: dist must be unif, norm or int:N");
        }
        return 0;
    }

    if (rob->parsed()) {
        const int backend = parse_backend(rob_backend);
        std::string csv;
        if (rob_mode == "mcd") {
            const std::size_t h = rob_h ? rob_h : (rob_n + rob_p + 1) / 2;
            csv = "rep,n,p,h,backend,det,exit,data,branch,incr,total\n";
            for (std::size_t rep = 0; rep < rob_reps; ++rep) {
                RngPtr rng(ordstat_rng_new_classic(rob_seed + static_cast<unsigned>(rep)));
                const auto X = contaminated_normal(rob_n, rob_p, rob_cont, rng.get());
                std::vector<std::size_t> subset(h);
                std::vector<double> mu(rob_p), sigma(rob_p * rob_p);
                double det;
                ordstat_counts counts{};
                check(ordstat_mcd(X.data(), rob_n, rob_p, h, rob_starts, backend,
                                  rob_seed + static_cast<unsigned>(rep), mu.data(),
                                  sigma.data(), &det, subset.data(), &counts));
                char line[256];
                std::snprintf(line, sizeof line,
                              "%zu,%zu,%zu,%zu,%s,%.17g,%" PRIu64 ",%" PRIu64
                              ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 "\n",
                              rep, rob_n, rob_p, h, rob_backend.c_str(), det,
                              counts.exit_tests, counts.data_comparisons,
                              counts.branch_tests, counts.position_increments,
                              counts.exit_tests + counts.data_comparisons +
                                  counts.branch_tests);
                csv += line;
            }
        } else if (rob_mode == "fs") {
            const std::size_t m0 = rob_m0 ? rob_m0 : rob_p + 1;
            csv = "rep,n,p,m0,backend,steps,exit,data,branch,incr,total\n";
            for (std::size_t rep = 0; rep < rob_reps; ++rep) {
                RngPtr rng(ordstat_rng_new_classic(rob_seed + static_cast<unsigned>(rep)));
                const auto X = contaminated_normal(rob_n, rob_p, rob_cont, rng.get());
                std::vector<std::size_t> ms(rob_n - m0 + 1);
                std::vector<ordstat_counts> step_counts(rob_n - m0 + 1);
                std::size_t n_steps;
                check(ordstat_fs(X.data(), rob_n, rob_p, m0, backend, ms.data(),
                                 step_counts.data(), &n_steps));
                ordstat_counts tot{};
                for (std::size_t s = 0; s < n_steps; ++s) {
                    tot.exit_tests += step_counts[s].exit_tests;
                    tot.data_comparisons += step_counts[s].data_comparisons;
                    tot.branch_tests += step_counts[s].branch_tests;
                    tot.position_increments += step_counts[s].position_increments;
                }
                char line[256];
                std::snprintf(line, sizeof line,
                              "%zu,%zu,%zu,%zu,%s,%zu,%" PRIu64 ",%" PRIu64
                              ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 "\n",
                              rep, rob_n, rob_p, m0, rob_backend.c_str(), n_steps,
                              tot.exit_tests, tot.data_comparisons,
                              tot.branch_tests, tot.position_increments,
                              tot.exit_tests + tot.data_comparisons +
                                  tot.branch_tests);
                csv += line;
            }
        } else {
            usage_die("robust: mode must be mcd or fs");
        }
        write_text(rob_out, csv);
        return 0;
    }

    if (fl->parsed()) {
        ordstat_raster *in = nullptr;
        check(ordstat_read_pnm_file(fl_in.c_str(), &in));
        RasterPtr input(in);
        if (fl_noise >= 0.0) {
            RngPtr rng(ordstat_rng_new_classic(fl_seed));
            check(ordstat_add_salt_pepper(input.get(), fl_noise, rng.get()));
        }
        std::vector<double> mask;
        if (!fl_mask.empty()) {
            mask = parse_doubles(fl_mask);
            if (mask.size() != 9)
                usage_die("filter: --mask needs exactly 9 weights");
        }
        ordstat_raster *out = nullptr;
        check(ordstat_weighted_median_filter(input.get(),
                                             mask.empty() ? nullptr : mask.data(),
                                             &out));
        RasterPtr output(out);
        check(ordstat_write_pnm_file(output.get(), fl_out.c_str(), !fl_plain));
        return 0;
    }

    if (bn->parsed()) {
        std::vector<std::size_t> n_set;
        for (double v : parse_doubles(bn_n))
            n_set.push_back(static_cast<std::size_t>(v));
        std::vector<int64_t> k_set;
        {
            std::stringstream ss(bn_k);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty())
                    k_set.push_back(parse_rank(tok));
        }
        int variant = ORDSTAT_VARIANT_SELECT;
        if (bn_variant == "select-oracle")
            variant = ORDSTAT_VARIANT_SELECT_ORACLE;
        else if (bn_variant == "sort")
            variant = ORDSTAT_VARIANT_SORT_BASELINE;
        else if (bn_variant != "select")
            usage_die("bench: variant must be select, select-oracle or sort");

        ordstat_bench_config cfg{};
        cfg.dist = parse_dist(bn_dist);
        cfg.shape = bn_shape;
        cfg.mu = bn_mu;
        cfg.sigma = bn_sigma;
        cfg.n_set = n_set.data();
        cfg.n_count = n_set.size();
        cfg.k_set = k_set.data();
        cfg.k_count = k_set.size();
        cfg.replicates = bn_r;
        cfg.seed = bn_seed;
        cfg.variant = variant;
        cfg.wallclock = bn_wall;

        char *rows = nullptr;
        char *summary = nullptr;
        check(ordstat_bench_csv(&cfg, &rows,
                                bn_summary.empty() ? nullptr : &summary));
        write_text(bn_out, rows ? rows : "");
        if (!bn_summary.empty() && summary)
            write_text(bn_summary, summary);
        if (bn_dickman) {
            if (n_set.size() != 1)
                usage_die("bench: --dickman expects a single n");
            // totals live in column 8 of the raw rows
            std::vector<double> totals;
            std::stringstream ss(rows);
            std::string line;
            std::getline(ss, line); // header
            while (std::getline(ss, line)) {
                std::stringstream ls(line);
                std::string field;
                for (int col = 0; col < 8 && std::getline(ls, field, ','); ++col) {
                }
                totals.push_back(std::stod(field));
            }
            double ks;
            check(ordstat_dickman_fit(totals.data(), totals.size(), n_set[0], &ks));
            std::printf("dickman_ks=%.6f\n", ks);
        }
        ordstat_free(rows);
        ordstat_free(summary);
        return 0;
    }

    return 0;
}
