#include "netnorm/network.hpp"
#include "netnorm/opnorm.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace netnorm;

TEST_CASE("Grothendieck constant bound") {
    CHECK(grothendieck_k() == doctest::Approx(1.78221).epsilon(1e-5));
}

TEST_CASE("spectral norm of small known matrices") {
    matrix_t swap2(2, 2);
    swap2 << 0, 3, 3, 0;
    CHECK(spectral_norm(swap2) == doctest::Approx(3.0).epsilon(1e-12));

    matrix_t scaled(2, 2);
    scaled << 0, -2, -2, 0;
    CHECK(spectral_norm(scaled) == doctest::Approx(2.0).epsilon(1e-12));

    matrix_t hollow_ones(3, 3);  // eigenvalues {2, -1, -1}
    hollow_ones << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    CHECK(spectral_norm(hollow_ones) == doctest::Approx(2.0).epsilon(1e-10));

    CHECK(spectral_norm(matrix_t::Zero(4, 4)) == 0.0);
}

TEST_CASE("norms are absolutely homogeneous") {
    std::mt19937_64 rng(2026);
    const matrix_t m = oracles::random_hollow_symmetric(8, rng, {-1.0, 0.0, 1.0});
    // power-of-two scales keep the arithmetic exact
    CHECK(spectral_norm(2.0 * m) == 2.0 * spectral_norm(m));
    CHECK(spectral_norm(-0.5 * m) == 0.5 * spectral_norm(m));
    CHECK(t_inf1_exact(2.0 * m) == 2.0 * t_inf1_exact(m));
    CHECK(t_inf1_exact(-0.5 * m) == 0.5 * t_inf1_exact(m));
}

TEST_CASE("spectral norm matches the dense eigensolver on random input") {
    std::mt19937_64 rng(12345);
    for (int rep = 0; rep < 10; ++rep) {
        const matrix_t m = oracles::random_hollow_gaussian(15, rng);
        const scalar_t expected = oracles::dense_spectral_norm(m);
        CHECK(spectral_norm(m) == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("spectral norm sees dominant negative eigenvalues") {
    // -vv' has one negative eigenvalue -|v|^2 and zeros elsewhere
    vector_t v(5);
    v << 1, -2, 3, 0.5, -1;
    const matrix_t m = -(v * v.transpose());
    CHECK(spectral_norm(m) == doctest::Approx(v.squaredNorm()).epsilon(1e-9));
}

TEST_CASE("spectral norm resolves near-ties between +lambda and -lambda") {
    // block diag(+A, -A) has perfectly paired spectra
    std::mt19937_64 rng(99);
    const matrix_t a = oracles::random_hollow_gaussian(6, rng);
    matrix_t m = matrix_t::Zero(12, 12);
    m.topLeftCorner(6, 6) = a;
    m.bottomRightCorner(6, 6) = -a;
    CHECK(spectral_norm(m) == doctest::Approx(oracles::dense_spectral_norm(a)).epsilon(1e-8));
}

TEST_CASE("exact infinity-to-one norm agrees with full enumeration") {
    std::mt19937_64 rng(777);
    for (int rep = 0; rep < 10; ++rep) {
        const matrix_t m = oracles::random_hollow_symmetric(7, rng, {-1.0, 0.0, 1.0});
        CHECK(t_inf1_exact(m) == oracles::enumerate_inf1(m));
    }
}

TEST_CASE("exact infinity-to-one norm of the hollow all-ones matrix") {
    matrix_t m = matrix_t::Ones(4, 4);
    m.diagonal().setZero();
    CHECK(t_inf1_exact(m) == 12.0);  // phi = psi = ones
}

TEST_CASE("exact infinity-to-one norm refuses oversized input") {
    CHECK_THROWS_AS(t_inf1_exact(matrix_t::Zero(23, 23)), too_large_error);
}

TEST_CASE("known values on the three-node hollow all-ones matrix") {
    matrix_t m(3, 3);
    m << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    CHECK(t_inf1_exact(m) == 6.0);
    const sdp_solution sol = sdp_inf1(m);
    CHECK(sol.value >= 6.0 - 1e-4);
    CHECK(sol.value <= grothendieck_k() * 6.0 + 1e-4);
    const auto rows = row_norm_stats(m);
    CHECK(rows.max == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rows.sum == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("the semidefinite value sandwiches the exact norm") {
    std::mt19937_64 rng(4242);
    const scalar_t k = grothendieck_k();
    for (int rep = 0; rep < 6; ++rep) {
        const matrix_t m = oracles::random_hollow_symmetric(6 + rep, rng, {-1.0, 0.0, 1.0});
        const scalar_t exact = t_inf1_exact(m);
        sdp_options options;
        options.seed = 1000 + static_cast<u64>(rep);
        const sdp_solution sol = sdp_inf1(m, options);
        const scalar_t slack = 1e-4 * std::max(1.0, exact);
        CHECK(exact <= sol.value + slack);
        CHECK(sol.value <= k * exact + slack);
        CHECK(sol.best_rounded <= sol.value + 1e-12);
        // the rounded signs witness a feasible bilinear value
        const scalar_t witness = sol.rounded_phi.dot(m * sol.rounded_psi);
        CHECK(witness <= exact + 1e-9);
    }
}

TEST_CASE("row-update ascent reaches the same value as gradient ascent") {
    std::mt19937_64 rng(555);
    for (int rep = 0; rep < 4; ++rep) {
        const matrix_t m = oracles::random_hollow_symmetric(8, rng, {-1.0, 0.0, 1.0});
        sdp_options gradient;
        sdp_options row;
        row.method = sdp_options::ascent::row_update;
        const scalar_t vg = sdp_inf1(m, gradient).value;
        const scalar_t vr = sdp_inf1(m, row).value;
        CHECK(vr == doctest::Approx(vg).epsilon(5e-3));
    }
}

TEST_CASE("semidefinite solver handles the zero matrix") {
    const sdp_solution sol = sdp_inf1(matrix_t::Zero(5, 5));
    CHECK(sol.value == 0.0);
    CHECK(sol.best_rounded == 0.0);
    CHECK(sol.rounded_phi.size() == 5);
}

TEST_CASE("semidefinite solver is deterministic in its seed") {
    std::mt19937_64 rng(31);
    const matrix_t m = oracles::random_hollow_symmetric(9, rng, {-1.0, 0.0, 1.0});
    sdp_options options;
    options.seed = 77;
    const sdp_solution a = sdp_inf1(m, options);
    const sdp_solution b = sdp_inf1(m, options);
    CHECK(a.value == b.value);
    CHECK(a.best_rounded == b.best_rounded);
    CHECK(a.rounded_phi == b.rounded_phi);
}

TEST_CASE("t22 of a binary pair is the spectral norm of the difference") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 5; ++rep) {
        const matrix_t wa = oracles::random_hollow_symmetric(12, rng, {0.0, 1.0});
        const matrix_t wb = oracles::random_hollow_symmetric(12, rng, {0.0, 1.0});
        const network_pair pair{make_network(wa), make_network(wb)};
        CHECK(t22(pair) == doctest::Approx(spectral_norm(wb - wa)).epsilon(1e-10));
    }
}

TEST_CASE("t22 and s_inf1 are symmetric in the pair order") {
    std::mt19937_64 rng(8);
    const matrix_t wa = oracles::random_hollow_symmetric(10, rng, {0.0, 1.0, 2.0});
    const matrix_t wb = oracles::random_hollow_symmetric(10, rng, {0.0, 1.0, 2.0});
    const network_pair ab{make_network(wa), make_network(wb)};
    const network_pair ba{make_network(wb), make_network(wa)};
    CHECK(t22(ab) == doctest::Approx(t22(ba)).epsilon(1e-9));
    CHECK(s_inf1(ab) == doctest::Approx(s_inf1(ba)).epsilon(1e-6));
}

TEST_CASE("t22 of identical networks is zero") {
    std::mt19937_64 rng(64);
    const matrix_t w = oracles::random_hollow_symmetric(8, rng, {0.0, 1.0, 3.0});
    const network_pair pair{make_network(w), make_network(w)};
    CHECK(t22(pair) == 0.0);
    CHECK(s_inf1(pair) == 0.0);
}

TEST_CASE("triangle versus empty network has known norms") {
    matrix_t full(3, 3);
    full << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    const network_pair pair{make_network(full), make_network(matrix_t::Zero(3, 3))};
    CHECK(t22(pair) == doctest::Approx(2.0).epsilon(1e-10));
    const scalar_t s = s_inf1(pair);
    CHECK(s >= 6.0 - 1e-4);
    CHECK(s <= grothendieck_k() * 6.0 + 1e-4);
}

TEST_CASE("norm statistics are invariant under simultaneous relabeling") {
    std::mt19937_64 rng(717);
    const matrix_t wa = oracles::random_hollow_symmetric(9, rng, {0.0, 1.0, 2.0});
    const matrix_t wb = oracles::random_hollow_symmetric(9, rng, {0.0, 1.0, 2.0});
    std::vector<index_t> perm{3, 1, 7, 0, 8, 5, 2, 6, 4};
    matrix_t pa(9, 9), pb(9, 9);
    for (index_t i = 0; i < 9; ++i)
        for (index_t j = 0; j < 9; ++j) {
            pa(i, j) = wa(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
            pb(i, j) = wb(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
    const network_pair original{make_network(wa), make_network(wb)};
    const network_pair relabeled{make_network(pa), make_network(pb)};
    CHECK(t22(relabeled) == doctest::Approx(t22(original)).epsilon(1e-9));
    CHECK(s_inf1(relabeled) == doctest::Approx(s_inf1(original)).epsilon(1e-4));
}

TEST_CASE("embedding a rectangular matrix preserves the largest singular value") {
    std::mt19937_64 rng(900);
    std::normal_distribution<scalar_t> normal(0.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        matrix_t r(5, 3);
        for (index_t i = 0; i < 5; ++i)
            for (index_t j = 0; j < 3; ++j) r(i, j) = normal(rng);
        const network net = embed_rectangular(
            rectangular_network{r, {"a", "b", "c", "d", "e"}, {"x", "y", "z"}});
        CHECK(spectral_norm(net.weights) ==
              doctest::Approx(oracles::largest_singular_value(r)).epsilon(1e-10));
    }
}

TEST_CASE("row norm statistics") {
    matrix_t m(2, 2);
    m << 3, 4, 0, 5;
    const auto stats = row_norm_stats(m);
    CHECK(stats.max == doctest::Approx(5.0));
    CHECK(stats.sum == doctest::Approx(10.0));
}

TEST_CASE("max row norm lower-bounds the spectral norm") {
    std::mt19937_64 rng(1500);
    for (int rep = 0; rep < 10; ++rep) {
        const matrix_t m = oracles::random_hollow_gaussian(10, rng);
        CHECK(row_norm_stats(m).max <= spectral_norm(m) + 1e-10);
    }
}
