#pragma once

#include "netnorm/errors.hpp"
#include "netnorm/network.hpp"
#include "netnorm/types.hpp"

#include <cmath>
#include <deque>
#include <functional>
#include <string>
#include <vector>

namespace netnorm {

/** Row sums of the weight matrix */
inline vector_t degree_sequence(const network &net) { return net.weights.rowwise().sum(); }

inline void require_nonnegative(const matrix_t &w) {
    for (index_t j = 0; j < w.cols(); ++j)
        for (index_t i = 0; i < w.rows(); ++i)
            if (w(i, j) < 0.0) throw negative_weight_error(i, j);
}

/**
 * Unit-2-norm nonnegative eigenvector for the largest eigenvalue of W + I,
 * computed by power iteration from the uniform vector. The identity shift
 * keeps the iteration away from sign oscillation on bipartite components and
 * leaves the eigenvectors of W unchanged.
 */
inline vector_t eigenvector_centrality(const network &net, scalar_t tol = 1e-10,
                                       long max_iter = 10000) {
    if (tol <= 0) throw invalid_params_error("eigenvector_centrality: tol must be positive");
    require_nonnegative(net.weights);
    const index_t n = net.n();
    if (n == 0) return vector_t();
    vector_t v = vector_t::Constant(n, 1.0 / std::sqrt(static_cast<scalar_t>(n)));
    vector_t next(n);
    for (long it = 0; it < max_iter; ++it) {
        next.noalias() = net.weights * v;
        next += v;  // the +I shift
        next /= next.norm();
        if ((next - v).norm() < tol) return next;
        v.swap(next);
    }
    throw no_convergence_error(max_iter);
}

enum class clustering_mode { standard, literal };

/**
 * Global clustering coefficient: closed ordered two-paths over all ordered
 * two-paths. literal mode keeps the degenerate j==k two-paths in the
 * denominator (numerator terms vanish there because the diagonal is zero);
 * standard mode excludes them, giving the classical transitivity ratio.
 * Returns 0 when the denominator is 0.
 */
inline scalar_t clustering_coefficient(const network &net, clustering_mode mode) {
    require_nonnegative(net.weights);
    const matrix_t &w = net.weights;
    // closed triples: sum_{i,j,k} w_ij w_ik w_jk = trace(W^3)
    const scalar_t closed = (w * w).cwiseProduct(w).sum();
    const vector_t deg = w.rowwise().sum();
    scalar_t open = deg.squaredNorm();  // sum_i (sum_j w_ij)(sum_k w_ik)
    if (mode == clustering_mode::standard) open -= w.squaredNorm();  // drop j == k terms
    if (open == 0.0) return 0.0;
    return closed / open;
}

/**
 * Diameter of a largest connected component (edges are nonzero weights,
 * paths are unweighted). Ties between largest components go to the one
 * containing the smallest node index. Single-node components have diameter 0.
 */
inline index_t diameter_largest_component(const network &net) {
    const index_t n = net.n();
    if (n == 0) return 0;
    std::vector<index_t> component(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<index_t>> adjacency(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j)
            if (i != j && net.weights(i, j) != 0.0) adjacency[static_cast<std::size_t>(i)].push_back(j);

    std::vector<index_t> best_nodes;
    index_t n_components = 0;
    for (index_t start = 0; start < n; ++start) {
        if (component[static_cast<std::size_t>(start)] >= 0) continue;
        std::vector<index_t> nodes;
        std::deque<index_t> queue{start};
        component[static_cast<std::size_t>(start)] = n_components;
        while (!queue.empty()) {
            const index_t u = queue.front();
            queue.pop_front();
            nodes.push_back(u);
            for (index_t v : adjacency[static_cast<std::size_t>(u)]) {
                if (component[static_cast<std::size_t>(v)] < 0) {
                    component[static_cast<std::size_t>(v)] = n_components;
                    queue.push_back(v);
                }
            }
        }
        // strictly larger wins; scanning from node 0 keeps the smallest-index tie
        if (nodes.size() > best_nodes.size()) best_nodes = std::move(nodes);
        ++n_components;
    }

    index_t diameter = 0;
    std::vector<index_t> dist(static_cast<std::size_t>(n));
    for (index_t source : best_nodes) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<index_t> queue{source};
        dist[static_cast<std::size_t>(source)] = 0;
        while (!queue.empty()) {
            const index_t u = queue.front();
            queue.pop_front();
            diameter = std::max(diameter, dist[static_cast<std::size_t>(u)]);
            for (index_t v : adjacency[static_cast<std::size_t>(u)]) {
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return diameter;
}

/** The four descriptive measures; SDs are population SDs */
struct descriptive_summary {
    scalar_t mean_degree = 0;
    scalar_t sd_degree = 0;
    scalar_t mean_eigcentrality = 0;
    scalar_t sd_eigcentrality = 0;
    scalar_t clustering = 0;
    index_t diameter = 0;
};

inline scalar_t population_sd(const vector_t &v) {
    if (v.size() == 0) return 0;
    const scalar_t mean = v.mean();
    return std::sqrt((v.array() - mean).square().sum() / static_cast<scalar_t>(v.size()));
}

inline descriptive_summary describe(const network &net,
                                    clustering_mode mode = clustering_mode::standard) {
    descriptive_summary s;
    const vector_t deg = degree_sequence(net);
    const vector_t cent = eigenvector_centrality(net);
    s.mean_degree = deg.size() ? deg.mean() : 0;
    s.sd_degree = population_sd(deg);
    s.mean_eigcentrality = cent.size() ? cent.mean() : 0;
    s.sd_eigcentrality = population_sd(cent);
    s.clustering = clustering_coefficient(net, mode);
    s.diameter = diameter_largest_component(net);
    return s;
}

/** The closed set of test statistics */
enum class statistic_id {
    avg_degree_absdiff,
    degree_msd,
    eigcentrality_msd,
    clustering_absdiff,
    diameter_absdiff,
    t22,
    s_inf1,
    rms_custom,
};

/** The seven-column battery in report order */
inline std::vector<statistic_id> default_battery() {
    return {statistic_id::avg_degree_absdiff, statistic_id::degree_msd,
            statistic_id::eigcentrality_msd,  statistic_id::clustering_absdiff,
            statistic_id::diameter_absdiff,   statistic_id::t22,
            statistic_id::s_inf1};
}

inline std::string statistic_name(statistic_id id) {
    switch (id) {
        case statistic_id::avg_degree_absdiff: return "avg_degree_absdiff";
        case statistic_id::degree_msd: return "degree_msd";
        case statistic_id::eigcentrality_msd: return "eigcentrality_msd";
        case statistic_id::clustering_absdiff: return "clustering_absdiff";
        case statistic_id::diameter_absdiff: return "diameter_absdiff";
        case statistic_id::t22: return "t22";
        case statistic_id::s_inf1: return "s_inf1";
        case statistic_id::rms_custom: return "rms_custom";
    }
    return "unknown";
}

inline statistic_id statistic_from_name(const std::string &name) {
    for (statistic_id id :
         {statistic_id::avg_degree_absdiff, statistic_id::degree_msd,
          statistic_id::eigcentrality_msd, statistic_id::clustering_absdiff,
          statistic_id::diameter_absdiff, statistic_id::t22, statistic_id::s_inf1,
          statistic_id::rms_custom}) {
        if (statistic_name(id) == name) return id;
    }
    throw invalid_params_error("unknown statistic '" + name + "'");
}

}  // namespace netnorm
