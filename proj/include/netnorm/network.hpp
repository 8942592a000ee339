#pragma once

#include "netnorm/errors.hpp"
#include "netnorm/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace netnorm {

/**
 * An undirected weighted network on n labeled nodes.
 *
 * Invariants (checked by validate): weights is exactly symmetric with a zero
 * diagonal, every entry is finite, and labels are n pairwise distinct strings.
 */
struct network {
    matrix_t weights;
    std::vector<std::string> labels;

    index_t n() const { return weights.rows(); }
};

/** Two networks on the same ordered node set; index i is the same agent in both */
struct network_pair {
    network a;
    network b;

    index_t n() const { return a.n(); }
};

/** A directed/bipartite relationship matrix between two node sets */
struct rectangular_network {
    matrix_t weights;  // n1 x n2
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    index_t n1() const { return weights.rows(); }
    index_t n2() const { return weights.cols(); }
};

/** Sorted distinct off-diagonal entries of a pair; the candidate thresholds s */
struct threshold_grid_t {
    std::vector<scalar_t> values;
};

/**
 * Entrywise difference of the two threshold indicator matrices at level s.
 * Entries lie in {-1,0,1}; symmetric with a zero diagonal.
 */
struct signed_indicator_diff {
    matrix_t entries;

    index_t n() const { return entries.rows(); }
};

/** "1".."n" */
inline std::vector<std::string> default_labels(index_t n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    return labels;
}

/** Throws the first invariant violation found; returns normally when valid */
inline void validate(const network &net) {
    const matrix_t &w = net.weights;
    if (w.rows() != w.cols()) throw size_mismatch_error(w.rows(), w.cols());
    const index_t n = w.rows();
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = 0; j < n; ++j) {
            if (!std::isfinite(w(i, j))) throw nonfinite_entry_error(i, j);
        }
    }
    for (index_t i = 0; i < n; ++i) {
        if (w(i, i) != 0.0) throw nonzero_diagonal_error(i);
        for (index_t j = i + 1; j < n; ++j) {
            if (w(i, j) != w(j, i)) throw asymmetric_matrix_error(i, j);
        }
    }
    if (static_cast<index_t>(net.labels.size()) != n)
        throw duplicate_label_error("(label count " + std::to_string(net.labels.size()) +
                                    " != node count " + std::to_string(n) + ")");
    std::unordered_set<std::string> seen;
    for (const auto &label : net.labels) {
        if (!seen.insert(label).second) throw duplicate_label_error(label);
    }
}

/** Validates both networks and their shared label map */
inline void validate(const network_pair &pair) {
    validate(pair.a);
    validate(pair.b);
    if (pair.a.n() != pair.b.n()) throw size_mismatch_error(pair.a.n(), pair.b.n());
    for (std::size_t i = 0; i < pair.a.labels.size(); ++i) {
        if (pair.a.labels[i] != pair.b.labels[i])
            throw label_mismatch_error("'" + pair.a.labels[i] + "' vs '" + pair.b.labels[i] +
                                       "' at index " + std::to_string(i));
    }
}

/** Network from a weight matrix; labels default to "1".."n"; validates */
inline network make_network(matrix_t weights, std::vector<std::string> labels = {}) {
    network net{std::move(weights), std::move(labels)};
    if (net.labels.empty()) net.labels = default_labels(net.n());
    validate(net);
    return net;
}

/** Pair from two weight matrices on the same node set */
inline network_pair make_pair(matrix_t a, matrix_t b, std::vector<std::string> labels = {}) {
    if (labels.empty()) labels = default_labels(a.rows());
    network_pair pair{make_network(std::move(a), labels), make_network(std::move(b), labels)};
    validate(pair);
    return pair;
}

/**
 * Embed a rectangular network as the symmetric block matrix
 * [[0, W],[W^T, 0]]. Row labels come first; labels are prefixed with the side
 * so the combined list is distinct even when both sides name the same agents.
 */
inline network embed_rectangular(const rectangular_network &rect) {
    const index_t n1 = rect.n1(), n2 = rect.n2();
    matrix_t w = matrix_t::Zero(n1 + n2, n1 + n2);
    w.topRightCorner(n1, n2) = rect.weights;
    w.bottomLeftCorner(n2, n1) = rect.weights.transpose();
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n1 + n2));
    for (index_t i = 0; i < n1; ++i)
        labels.push_back("r:" + (i < static_cast<index_t>(rect.row_labels.size())
                                     ? rect.row_labels[static_cast<std::size_t>(i)]
                                     : std::to_string(i + 1)));
    for (index_t j = 0; j < n2; ++j)
        labels.push_back("c:" + (j < static_cast<index_t>(rect.col_labels.size())
                                     ? rect.col_labels[static_cast<std::size_t>(j)]
                                     : std::to_string(j + 1)));
    return make_network(std::move(w), std::move(labels));
}

/** Sorted distinct off-diagonal entries of both matrices */
inline threshold_grid_t threshold_grid(const network_pair &pair) {
    const index_t n = pair.n();
    std::vector<scalar_t> values;
    values.reserve(static_cast<std::size_t>(2 * n * (n - 1)));
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = 0; j < n; ++j) {
            if (i == j) continue;
            values.push_back(pair.a.weights(i, j));
            values.push_back(pair.b.weights(i, j));
        }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return threshold_grid_t{std::move(values)};
}

/** Delta(s): 1{a <= s} - 1{b <= s} entrywise, zero diagonal */
inline signed_indicator_diff indicator_diff(const network_pair &pair, scalar_t s) {
    const index_t n = pair.n();
    matrix_t d(n, n);
    for (index_t j = 0; j < n; ++j) {
        for (index_t i = 0; i < n; ++i) {
            const scalar_t ia = pair.a.weights(i, j) <= s ? 1.0 : 0.0;
            const scalar_t ib = pair.b.weights(i, j) <= s ? 1.0 : 0.0;
            d(i, j) = ia - ib;
        }
        d(j, j) = 0.0;
    }
    return signed_indicator_diff{std::move(d)};
}

}  // namespace netnorm
