#pragma once

#include "netnorm/errors.hpp"
#include "netnorm/network.hpp"
#include "netnorm/opnorm.hpp"
#include "netnorm/parallel.hpp"
#include "netnorm/rng.hpp"
#include "netnorm/statistics.hpp"
#include "netnorm/types.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace netnorm {

/** Everything a statistic evaluator may need beyond the pair itself */
struct statistic_context {
    sdp_options sdp{};
    clustering_mode clustering = clustering_mode::standard;
    scalar_t centrality_tol = 1e-10;
    long centrality_max_iter = 10000;
    // node-statistic C for the rms_custom combinator ||C(a) - C(b)||_2
    std::function<vector_t(const network &)> custom_c;
};

/** Evaluate one test statistic on a pair of networks */
inline scalar_t evaluate_statistic(statistic_id id, const network_pair &pair,
                                   const statistic_context &ctx = {}) {
    switch (id) {
        case statistic_id::avg_degree_absdiff:
            return std::abs(degree_sequence(pair.a).mean() - degree_sequence(pair.b).mean());
        case statistic_id::degree_msd: {
            const vector_t d = degree_sequence(pair.a) - degree_sequence(pair.b);
            return d.squaredNorm() / static_cast<scalar_t>(pair.n());
        }
        case statistic_id::eigcentrality_msd: {
            const vector_t d =
                eigenvector_centrality(pair.a, ctx.centrality_tol, ctx.centrality_max_iter) -
                eigenvector_centrality(pair.b, ctx.centrality_tol, ctx.centrality_max_iter);
            return d.squaredNorm() / static_cast<scalar_t>(pair.n());
        }
        case statistic_id::clustering_absdiff:
            return std::abs(clustering_coefficient(pair.a, ctx.clustering) -
                            clustering_coefficient(pair.b, ctx.clustering));
        case statistic_id::diameter_absdiff:
            return std::abs(static_cast<scalar_t>(diameter_largest_component(pair.a)) -
                            static_cast<scalar_t>(diameter_largest_component(pair.b)));
        case statistic_id::t22:
            return t22(pair);
        case statistic_id::s_inf1:
            return s_inf1(pair, ctx.sdp);
        case statistic_id::rms_custom: {
            if (!ctx.custom_c)
                throw invalid_params_error("rms_custom requires a node-statistic function");
            return (ctx.custom_c(pair.a) - ctx.custom_c(pair.b)).norm();
        }
    }
    throw invalid_params_error("unknown statistic id");
}

/** Symmetric fair-coin mask deciding which entries stay with their network */
struct swap_mask {
    Eigen::Matrix<unsigned char, Eigen::Dynamic, Eigen::Dynamic> bits;

    index_t n() const { return bits.rows(); }
};

/** Independent fair coin per upper-triangle slot, mirrored below */
inline swap_mask draw_swap_mask(index_t n, rng_stream stream) {
    swap_mask mask;
    mask.bits.setZero(n, n);
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = i + 1; j < n; ++j) {
            const unsigned char bit = stream.next_bool() ? 1 : 0;
            mask.bits(i, j) = bit;
            mask.bits(j, i) = bit;
        }
    }
    return mask;
}

/**
 * Randomized pair: where bit = 1 the entries keep their networks, where
 * bit = 0 the (i,j) entries of the two networks are exchanged. Either
 * convention matches the fair-coin distribution; this one is pinned so runs
 * are reproducible.
 */
inline network_pair apply_swap(const network_pair &pair, const swap_mask &mask) {
    if (mask.n() != pair.n()) throw size_mismatch_error(mask.n(), pair.n());
    network_pair out = pair;
    const index_t n = pair.n();
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = i + 1; j < n; ++j) {
            if (!mask.bits(i, j)) {
                out.a.weights(i, j) = pair.b.weights(i, j);
                out.a.weights(j, i) = pair.b.weights(j, i);
                out.b.weights(i, j) = pair.a.weights(i, j);
                out.b.weights(j, i) = pair.a.weights(j, i);
            }
        }
    }
    return out;
}

/** Outcome of one randomization test */
struct test_report {
    statistic_id statistic = statistic_id::t22;
    scalar_t observed = 0;
    std::vector<scalar_t> reference;  // R values on randomized pairs
    scalar_t p_value = 1;
    scalar_t alpha = 0.05;
    bool reject = false;
    long R = 0;
    u64 seed = 0;
    // Assumption 2 requires alpha*(R+1) >= 1; otherwise the test cannot reject
    bool assumption2_ok = true;
};

/**
 * Multi-statistic battery on a shared sequence of swap masks: mask r is drawn
 * from substream r of the seed, and every statistic is evaluated on the same
 * randomized pair, so the report rows describe the same randomization draw.
 */
inline std::vector<test_report> run_battery(const network_pair &pair,
                                            const std::vector<statistic_id> &statistics, long R,
                                            scalar_t alpha, u64 seed,
                                            const statistic_context &ctx = {}, int threads = 0) {
    validate(pair);
    if (R < 1) throw invalid_params_error("R must be at least 1");
    if (!(alpha > 0 && alpha <= 1)) throw invalid_params_error("alpha must lie in (0, 1]");
    const std::size_t n_stats = statistics.size();
    const rng_stream root = seed_stream(seed);

    std::vector<scalar_t> observed(n_stats);
    for (std::size_t k = 0; k < n_stats; ++k)
        observed[k] = evaluate_statistic(statistics[k], pair, ctx);

    // reference[r*n_stats + k]; each slot is a pure function of (seed, r)
    std::vector<scalar_t> reference(static_cast<std::size_t>(R) * n_stats);
    parallel_for(R, threads, [&](long r) {
        const swap_mask mask = draw_swap_mask(pair.n(), root.substream(static_cast<u64>(r) + 1));
        const network_pair randomized = apply_swap(pair, mask);
        for (std::size_t k = 0; k < n_stats; ++k)
            reference[static_cast<std::size_t>(r) * n_stats + k] =
                evaluate_statistic(statistics[k], randomized, ctx);
    });

    std::vector<test_report> reports(n_stats);
    for (std::size_t k = 0; k < n_stats; ++k) {
        test_report &report = reports[k];
        report.statistic = statistics[k];
        report.observed = observed[k];
        report.reference.resize(static_cast<std::size_t>(R));
        long exceed = 0;
        for (long r = 0; r < R; ++r) {
            const scalar_t value = reference[static_cast<std::size_t>(r) * n_stats + k];
            report.reference[static_cast<std::size_t>(r)] = value;
            if (value >= observed[k]) ++exceed;
        }
        report.p_value = static_cast<scalar_t>(1 + exceed) / static_cast<scalar_t>(R + 1);
        report.alpha = alpha;
        report.reject = report.p_value <= alpha;
        report.R = R;
        report.seed = seed;
        report.assumption2_ok = alpha * static_cast<scalar_t>(R + 1) >= 1.0;
    }
    return reports;
}

/** Single-statistic randomization test (a one-column battery) */
inline test_report run_test(const network_pair &pair, statistic_id statistic, long R,
                            scalar_t alpha, u64 seed, const statistic_context &ctx = {},
                            int threads = 0) {
    return run_battery(pair, {statistic}, R, alpha, seed, ctx, threads)[0];
}

}  // namespace netnorm
