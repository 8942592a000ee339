#pragma once

#include "netnorm/errors.hpp"
#include "netnorm/network.hpp"
#include "netnorm/opnorm.hpp"
#include "netnorm/randomization.hpp"
#include "netnorm/rng.hpp"
#include "netnorm/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace netnorm {

/** A finite-support edge-weight distribution (one matrix cell's marginal) */
struct edge_distribution {
    // (value, probability), sorted by value; probabilities sum to 1
    std::vector<std::pair<scalar_t, scalar_t>> support;

    /** P(weight <= s) */
    scalar_t cdf(scalar_t s) const {
        scalar_t total = 0;
        for (const auto &[value, prob] : support) {
            if (value <= s) total += prob;
            else break;
        }
        return total;
    }

    /** Inverse-CDF draw from one uniform */
    scalar_t sample(scalar_t u) const {
        scalar_t cum = 0;
        for (const auto &[value, prob] : support) {
            cum += prob;
            if (u < cum) return value;
        }
        return support.back().first;
    }
};

inline edge_distribution make_distribution(std::vector<std::pair<scalar_t, scalar_t>> support) {
    std::sort(support.begin(), support.end());
    scalar_t total = 0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const auto &[value, prob] = support[i];
        if (!std::isfinite(value)) throw nonfinite_entry_error(static_cast<long>(i), 0);
        if (prob < 0) throw invalid_probability_error(prob);
        if (i > 0 && value == support[i - 1].first)
            throw invalid_params_error("duplicate support value in edge distribution");
        total += prob;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw invalid_params_error("edge distribution probabilities sum to " + std::to_string(total));
    return edge_distribution{std::move(support)};
}

inline edge_distribution bernoulli_cell(scalar_t p) {
    if (!(p >= 0.0 && p <= 1.0)) throw invalid_probability_error(p);
    if (p == 0.0) return make_distribution({{0.0, 1.0}});
    if (p == 1.0) return make_distribution({{1.0, 1.0}});
    return make_distribution({{0.0, 1.0 - p}, {1.0, p}});
}

inline edge_distribution degenerate_cell(scalar_t value) {
    return make_distribution({{value, 1.0}});
}

/** A matrix of per-edge marginals with independent upper-triangle entries */
struct random_graph_model {
    index_t n = 0;
    std::vector<edge_distribution> cells;  // row-major n*n; symmetric; diagonal at 0

    const edge_distribution &cell(index_t i, index_t j) const {
        return cells[static_cast<std::size_t>(i * n + j)];
    }
    edge_distribution &cell(index_t i, index_t j) {
        return cells[static_cast<std::size_t>(i * n + j)];
    }
};

inline random_graph_model uniform_cell_model(index_t n, const edge_distribution &off_diagonal) {
    random_graph_model model;
    model.n = n;
    model.cells.assign(static_cast<std::size_t>(n * n), off_diagonal);
    for (index_t i = 0; i < n; ++i) model.cell(i, i) = degenerate_cell(0.0);
    return model;
}

/** Erdos-Renyi: every off-diagonal cell is Bernoulli(p) */
inline random_graph_model er_model(index_t n, scalar_t p) {
    return uniform_cell_model(n, bernoulli_cell(p));
}

/** One high-degree hub: cells touching node 1 are Bernoulli(p_star), the rest Bernoulli(p_rest) */
inline random_graph_model star_block_model(index_t n, scalar_t p_star, scalar_t p_rest) {
    random_graph_model model = uniform_cell_model(n, bernoulli_cell(p_rest));
    const edge_distribution star = bernoulli_cell(p_star);
    for (index_t j = 1; j < n; ++j) {
        model.cell(0, j) = star;
        model.cell(j, 0) = star;
    }
    return model;
}

/** One network draw: an independent inverse-CDF draw per upper-triangle cell */
inline network sample_network(const random_graph_model &model, rng_stream stream) {
    const index_t n = model.n;
    matrix_t w = matrix_t::Zero(n, n);
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = i + 1; j < n; ++j) {
            const scalar_t value = model.cell(i, j).sample(stream.next_uniform());
            w(i, j) = value;
            w(j, i) = value;
        }
    }
    return make_network(std::move(w));
}

/** The population-level quantities that govern the two tests' power */
struct population_diagnostics_t {
    scalar_t tau = 0;       // max_s max_i root row variance of Delta(s)
    scalar_t sigma = 0;     // max_s sum_i root row variance of Delta(s)
    scalar_t t22_pop = 0;   // max_s spectral norm of F1(s) - F2(s)
    scalar_t t_inf1_pop = 0;
    bool t_inf1_is_sdp = false;  // true when n exceeded the exact-enumeration cap
    std::vector<scalar_t> grid;
};

/**
 * tau, sigma, and the two population statistics of the model pair, evaluated
 * on the finite grid of all support values (the CDF differences are constant
 * between them).
 */
inline population_diagnostics_t population_diagnostics(const random_graph_model &f1,
                                                       const random_graph_model &f2,
                                                       index_t exact_cap = 22) {
    if (f1.n != f2.n) throw size_mismatch_error(f1.n, f2.n);
    const index_t n = f1.n;
    population_diagnostics_t out;
    for (const auto *model : {&f1, &f2})
        for (const auto &cell : model->cells)
            for (const auto &[value, prob] : cell.support) out.grid.push_back(value);
    std::sort(out.grid.begin(), out.grid.end());
    out.grid.erase(std::unique(out.grid.begin(), out.grid.end()), out.grid.end());

    matrix_t diff(n, n), nu(n, n);
    for (scalar_t s : out.grid) {
        for (index_t i = 0; i < n; ++i) {
            for (index_t j = 0; j < n; ++j) {
                if (i == j) {
                    diff(i, j) = 0;
                    nu(i, j) = 0;
                    continue;
                }
                const scalar_t c1 = f1.cell(i, j).cdf(s);
                const scalar_t c2 = f2.cell(i, j).cdf(s);
                diff(i, j) = c1 - c2;
                nu(i, j) = c1 + c2 - 2.0 * c1 * c2;
            }
        }
        const vector_t root_row_var = nu.rowwise().sum().cwiseSqrt();
        out.tau = std::max(out.tau, root_row_var.maxCoeff());
        out.sigma = std::max(out.sigma, root_row_var.sum());
        out.t22_pop = std::max(out.t22_pop, spectral_norm(diff));
        if (n <= exact_cap) {
            out.t_inf1_pop = std::max(out.t_inf1_pop, t_inf1_exact(diff, exact_cap));
        } else {
            out.t_inf1_pop = std::max(out.t_inf1_pop, sdp_inf1(diff).value);
            out.t_inf1_is_sdp = true;
        }
    }
    return out;
}

/** One row of a power study: a statistic's outcome on one simulated pair */
struct study_row {
    long trial = 0;
    statistic_id statistic = statistic_id::t22;
    scalar_t observed = 0;
    scalar_t p_value = 1;
    bool reject = false;
};

/** Per-statistic Monte Carlo summary */
struct study_summary {
    statistic_id statistic = statistic_id::t22;
    scalar_t mean_p = 0;
    scalar_t se_mean_p = 0;  // sd of p across trials / sqrt(trials)
    scalar_t rejection_rate = 0;
    scalar_t se_rejection = 0;
    long trials = 0;
};

struct study_table {
    std::vector<study_row> rows;
    std::vector<study_summary> summaries;
};

/**
 * Monte Carlo power study: per trial, draw one network from each model and
 * run the shared-mask battery. Trial t uses substream t of the seed, so the
 * study is reproducible for any thread count.
 */
inline study_table power_study(const random_graph_model &f1, const random_graph_model &f2,
                               long trials, long R, scalar_t alpha,
                               const std::vector<statistic_id> &statistics, u64 seed,
                               const statistic_context &ctx = {}, int threads = 0) {
    if (f1.n != f2.n) throw size_mismatch_error(f1.n, f2.n);
    if (trials < 1) throw invalid_params_error("trials must be at least 1");
    study_table table;
    table.rows.resize(static_cast<std::size_t>(trials) * statistics.size());
    const rng_stream root = seed_stream(seed);
    for (long t = 0; t < trials; ++t) {
        const rng_stream trial_stream = root.substream(static_cast<u64>(t) + 1);
        network_pair pair{sample_network(f1, trial_stream.substream(1)),
                          sample_network(f2, trial_stream.substream(2))};
        pair.b.labels = pair.a.labels;
        const std::vector<test_report> reports =
            run_battery(pair, statistics, R, alpha, trial_stream.substream(3).key(), ctx, threads);
        for (std::size_t k = 0; k < statistics.size(); ++k) {
            study_row &row = table.rows[static_cast<std::size_t>(t) * statistics.size() + k];
            row.trial = t + 1;
            row.statistic = statistics[k];
            row.observed = reports[k].observed;
            row.p_value = reports[k].p_value;
            row.reject = reports[k].reject;
        }
    }
    for (std::size_t k = 0; k < statistics.size(); ++k) {
        study_summary s;
        s.statistic = statistics[k];
        s.trials = trials;
        scalar_t sum = 0, sum_sq = 0, rejections = 0;
        for (long t = 0; t < trials; ++t) {
            const study_row &row = table.rows[static_cast<std::size_t>(t) * statistics.size() + k];
            sum += row.p_value;
            sum_sq += row.p_value * row.p_value;
            rejections += row.reject ? 1 : 0;
        }
        const scalar_t mean = sum / static_cast<scalar_t>(trials);
        const scalar_t var = std::max<scalar_t>(0, sum_sq / static_cast<scalar_t>(trials) - mean * mean);
        s.mean_p = mean;
        s.se_mean_p = std::sqrt(var / static_cast<scalar_t>(trials));
        s.rejection_rate = rejections / static_cast<scalar_t>(trials);
        s.se_rejection =
            std::sqrt(s.rejection_rate * (1.0 - s.rejection_rate) / static_cast<scalar_t>(trials));
        table.summaries.push_back(s);
    }
    return table;
}

/** The two simulation presets studied in the power analysis */
inline std::pair<random_graph_model, random_graph_model> preset_models(const std::string &name,
                                                                       index_t n) {
    if (name == "sparse-er")
        return {er_model(n, 8.0 / static_cast<scalar_t>(n)), er_model(n, 5.0 / static_cast<scalar_t>(n))};
    if (name == "degree-het")
        return {star_block_model(n, 0.5, 0.02), star_block_model(n, 0.5, 0.08)};
    throw invalid_params_error("unknown preset '" + name + "' (expected sparse-er or degree-het)");
}

}  // namespace netnorm
