#pragma once

#include "netnorm/errors.hpp"
#include "netnorm/network.hpp"
#include "netnorm/rng.hpp"
#include "netnorm/types.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace netnorm {

/** Best known factor between the semidefinite value and the true inf->1 norm */
inline scalar_t grothendieck_k() { return M_PI / (2.0 * std::log(1.0 + std::sqrt(2.0))); }

namespace detail {

/**
 * Power iteration for the top eigenvalue of the positive-shifted matrix
 * m + shift*I (all eigenvalues nonnegative once shift >= spectral radius).
 * Returns the converged Rayleigh-quotient estimate.
 */
inline scalar_t shifted_power_value(const matrix_t &m, scalar_t shift, scalar_t sign, scalar_t tol,
                                    long max_iter, long &iterations) {
    const index_t n = m.rows();
    rng_stream stream(0x9a1ec0de5eedULL);  // fixed start; determinism over surprise
    vector_t x(n);
    for (index_t i = 0; i < n; ++i) x(i) = stream.next_uniform() + 0.5;
    x /= x.norm();
    vector_t y(n);
    scalar_t value = 0;
    int stable = 0;
    for (long it = 0; it < max_iter; ++it) {
        // y = (sign*m + shift*I) x
        y.noalias() = m * x;
        y *= sign;
        y += shift * x;
        const scalar_t next = y.norm();  // Rayleigh estimate for a PSD operator
        if (next == 0.0) return 0.0;     // x in the kernel: top shifted eigenvalue is 0
        x = y / next;
        const scalar_t change = std::abs(next - value);
        value = next;
        if (change <= tol * std::max<scalar_t>(1.0, value)) {
            if (++stable >= 3) {
                iterations += it + 1;
                return value;
            }
        } else {
            stable = 0;
        }
    }
    iterations += max_iter;
    throw no_convergence_error(max_iter);
}

}  // namespace detail

/**
 * Largest absolute eigenvalue of a symmetric matrix by power iteration.
 *
 * Two shifted runs are used: one on m + cI and one on cI - m with c the
 * Gershgorin row-sum bound. Each run has a one-signed spectrum, so the pair
 * resolves the +lambda/-lambda tie that plain power iteration cannot.
 * Throws no_convergence_error when either run stalls past max_iter.
 */
inline scalar_t spectral_norm_power(const matrix_t &m, scalar_t tol = 1e-10,
                                    long max_iter = 50000) {
    if (m.rows() != m.cols()) throw size_mismatch_error(m.rows(), m.cols());
    if (tol <= 0) throw invalid_params_error("spectral_norm: tol must be positive");
    const scalar_t bound = m.cwiseAbs().rowwise().sum().maxCoeff();
    if (bound == 0.0) return 0.0;
    long iterations = 0;
    const long per_run = max_iter / 2;
    // stop each run a few digits tighter than the requested relative accuracy;
    // the Rayleigh value converges quadratically in the eigenvector error, so
    // the settled value is well inside tol
    const scalar_t run_tol = tol * 1e-3;
    try {
        const scalar_t hi =
            detail::shifted_power_value(m, bound, +1.0, run_tol, per_run, iterations);
        const scalar_t lo =
            detail::shifted_power_value(m, bound, -1.0, run_tol, per_run, iterations);
        return std::max(hi, lo) - bound;
    } catch (const no_convergence_error &) {
        throw no_convergence_error(max_iter);
    }
}

/** spectral_norm_power with a dense eigendecomposition fallback on stall */
inline scalar_t spectral_norm(const matrix_t &m, scalar_t tol = 1e-10) {
    try {
        return spectral_norm_power(m, tol);
    } catch (const no_convergence_error &) {
        Eigen::SelfAdjointEigenSolver<matrix_t> solver(m, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
}

/** T_2->2: max over the threshold grid of the spectral norm of Delta(s) */
inline scalar_t t22(const network_pair &pair) {
    scalar_t best = 0;
    for (scalar_t s : threshold_grid(pair).values) {
        best = std::max(best, spectral_norm(indicator_diff(pair, s).entries));
    }
    return best;
}

/**
 * Exact inf->1 norm, max over sign vectors phi of ||m phi||_1, by Gray-code
 * enumeration with phi_1 fixed to +1 (negating phi preserves the value).
 */
inline scalar_t t_inf1_exact(const matrix_t &m, index_t cap = 22) {
    if (m.rows() != m.cols()) throw size_mismatch_error(m.rows(), m.cols());
    const index_t n = m.rows();
    if (n > cap) throw too_large_error(n, cap);
    if (n == 0) return 0.0;
    vector_t y = m.rowwise().sum();  // m * ones
    vector_t phi = vector_t::Ones(n);
    scalar_t best = y.cwiseAbs().sum();
    const u64 states = n > 1 ? (u64{1} << (n - 1)) : 1;
    u64 prev_gray = 0;
    for (u64 k = 1; k < states; ++k) {
        const u64 gray = k ^ (k >> 1);
        const u64 changed = gray ^ prev_gray;
        prev_gray = gray;
        index_t j = 1;  // phi_1 is pinned; bit b toggles phi_{b+2}
        u64 bit = changed;
        while ((bit >>= 1) != 0) ++j;
        phi(j) = -phi(j);
        y += (2.0 * phi(j)) * m.col(j);
        best = std::max(best, y.cwiseAbs().sum());
    }
    return best;
}

/** Options for the low-rank semidefinite solver */
struct sdp_options {
    int restarts = 5;
    index_t rank = 0;  // 0: automatic ceil(sqrt(4n)) + 1
    scalar_t tol = 1e-7;
    long max_iter = 2000;
    int roundings = 100;
    u64 seed = 0x5d9e1ab2c4f7ULL;
    enum class ascent { gradient, row_update };
    // gradient follows the classical projected-ascent recipe; row_update
    // applies the same objective via per-row closed-form maximization, which
    // typically converges in far fewer passes on sparse sign matrices
    ascent method = ascent::gradient;
};

/** Result of the semidefinite relaxation of the inf->1 norm */
struct sdp_solution {
    matrix_t factor;             // 2n x k, unit-norm rows; X = factor factor^T
    scalar_t value = 0;          // best certified objective (1/2)<B, X>
    vector_t rounded_phi;        // best sign vectors from hyperplane rounding
    vector_t rounded_psi;
    scalar_t best_rounded = 0;   // bilinear objective phi^T m psi of the best cut
    int restarts_used = 0;
    long iterations = 0;
};

namespace detail {

/** Objective (1/2)<[[0,m],[m,0]], V V^T> = sum_ij m_ij <vtop_i, vbot_j> */
inline scalar_t bilinear_objective(const matrix_t &m, const matrix_t &v) {
    const index_t n = m.rows();
    return (m * v.bottomRows(n)).cwiseProduct(v.topRows(n)).sum();
}

inline void renormalize_rows(matrix_t &v) {
    for (index_t i = 0; i < v.rows(); ++i) {
        const scalar_t norm = v.row(i).norm();
        if (norm > 0) v.row(i) /= norm;
    }
}

/** ||m phi||_1: the bilinear value after the optimal psi = sign(m phi) */
inline scalar_t polish_value(const matrix_t &m, const vector_t &phi) {
    return (m * phi).cwiseAbs().sum();
}

struct sparse_rows {
    std::vector<std::vector<std::pair<index_t, scalar_t>>> cells;

    explicit sparse_rows(const matrix_t &m) : cells(static_cast<std::size_t>(m.rows())) {
        for (index_t i = 0; i < m.rows(); ++i)
            for (index_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0.0) cells[static_cast<std::size_t>(i)].push_back({j, m(i, j)});
    }
};

}  // namespace detail

/**
 * Burer-Monteiro solver for (1/2) max <[[0,m],[m,0]], X> over positive
 * semidefinite X with unit diagonal. The factor V has unit-norm rows so
 * X = V V^T is always feasible; hyperplane rounding extracts sign vectors
 * whose bilinear value is a certified lower bound. The reported value is the
 * best feasible objective seen (ascent stationary value or rounded lift).
 */
inline sdp_solution sdp_inf1(const matrix_t &m, const sdp_options &opts = {}) {
    if (m.rows() != m.cols()) throw size_mismatch_error(m.rows(), m.cols());
    const index_t n = m.rows();
    sdp_solution best;
    if (n == 0) return best;
    const index_t k =
        opts.rank > 0 ? opts.rank
                      : static_cast<index_t>(std::ceil(std::sqrt(4.0 * static_cast<scalar_t>(n)))) + 1;
    // row 1-norms of B = [[0,m],[m,0]] equal the row 1-norms of m
    const scalar_t row_sum_max = m.cwiseAbs().rowwise().sum().maxCoeff();
    if (row_sum_max == 0.0) {
        best.factor = matrix_t::Zero(2 * n, k);
        best.factor.col(0).setOnes();
        best.rounded_phi = vector_t::Ones(n);
        best.rounded_psi = vector_t::Ones(n);
        return best;
    }
    const scalar_t step = 1.0 / (2.0 * row_sum_max);
    const rng_stream root(opts.seed);
    const detail::sparse_rows rows(m);

    best.value = -1;
    for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
        rng_stream stream = root.substream(static_cast<u64>(restart));
        matrix_t v(2 * n, k);
        for (index_t j = 0; j < k; ++j)
            for (index_t i = 0; i < 2 * n; ++i) v(i, j) = stream.next_normal();
        detail::renormalize_rows(v);

        scalar_t objective = detail::bilinear_objective(m, v);
        long iterations = 0;
        if (opts.method == sdp_options::ascent::gradient) {
            matrix_t grad(2 * n, k);
            for (; iterations < opts.max_iter; ++iterations) {
                grad.topRows(n).noalias() = m * v.bottomRows(n);
                grad.bottomRows(n).noalias() = m * v.topRows(n);
                v += step * grad;
                detail::renormalize_rows(v);
                const scalar_t next = detail::bilinear_objective(m, v);
                const scalar_t gain = next - objective;
                objective = next;
                if (gain < opts.tol * std::max<scalar_t>(1.0, std::abs(objective))) {
                    ++iterations;
                    break;
                }
            }
        } else {
            // Gauss-Seidel over rows: each row's optimum given the others is
            // the normalized in-row gradient, so every update is monotone
            vector_t g(k);
            for (; iterations < opts.max_iter; ++iterations) {
                for (index_t i = 0; i < 2 * n; ++i) {
                    const bool top = i < n;
                    const auto &row = rows.cells[static_cast<std::size_t>(top ? i : i - n)];
                    if (row.empty()) continue;
                    g.setZero();
                    for (const auto &[j, w] : row)
                        g += w * v.row(top ? n + j : j).transpose();
                    const scalar_t norm = g.norm();
                    if (norm > 0) v.row(i) = g.transpose() / norm;
                }
                const scalar_t next = detail::bilinear_objective(m, v);
                const scalar_t gain = next - objective;
                objective = next;
                if (gain < opts.tol * std::max<scalar_t>(1.0, std::abs(objective))) {
                    ++iterations;
                    break;
                }
            }
        }
        best.iterations += iterations;
        if (objective > best.value) {
            best.value = objective;
            best.factor = std::move(v);
        }
        best.restarts_used = restart + 1;
    }

    // hyperplane rounding on the best factor, polished by the closed-form
    // psi = sign(m phi) response on each side
    rng_stream cut_stream = root.substream(0x10adedULL);
    vector_t g(k), phi(n), psi(n);
    best.best_rounded = -1;
    for (int cut = 0; cut < std::max(1, opts.roundings); ++cut) {
        for (index_t j = 0; j < k; ++j) g(j) = cut_stream.next_normal();
        for (index_t i = 0; i < n; ++i) {
            phi(i) = best.factor.row(i).dot(g) >= 0 ? 1.0 : -1.0;
            psi(i) = best.factor.row(n + i).dot(g) >= 0 ? 1.0 : -1.0;
        }
        const scalar_t from_phi = detail::polish_value(m, phi);
        const scalar_t from_psi = detail::polish_value(m, psi);
        const scalar_t value = std::max(from_phi, from_psi);
        if (value > best.best_rounded) {
            best.best_rounded = value;
            const vector_t winner = from_phi >= from_psi ? phi : psi;
            const vector_t response = m * winner;
            best.rounded_phi = winner;
            best.rounded_psi =
                response.unaryExpr([](scalar_t x) { return x >= 0 ? scalar_t(1) : scalar_t(-1); });
        }
    }
    // a rounded sign pair lifts to a feasible rank-1 X, so its value is also
    // a valid objective; report the best feasible point found
    best.value = std::max(best.value, best.best_rounded);
    return best;
}

/** S_inf->1: max over the threshold grid of the semidefinite value */
inline scalar_t s_inf1(const network_pair &pair, const sdp_options &opts = {}) {
    scalar_t best = 0;
    for (scalar_t s : threshold_grid(pair).values) {
        const signed_indicator_diff diff = indicator_diff(pair, s);
        if ((diff.entries.array() != 0.0).any())
            best = std::max(best, sdp_inf1(diff.entries, opts).value);
    }
    return best;
}

/** Row 2-norm extremes: max lower-bounds the spectral norm, sum the inf->1 norm scale */
struct row_norms {
    scalar_t max = 0;
    scalar_t sum = 0;
};

inline row_norms row_norm_stats(const matrix_t &m) {
    if (m.rows() == 0) return {};
    const vector_t norms = m.rowwise().norm();
    return {norms.maxCoeff(), norms.sum()};
}

}  // namespace netnorm
