#include <multiequ/network.hpp>
#include <multiequ/spectral.hpp>

#include <doctest.h>

#include "test_helpers.hpp"

using namespace multiequ;
using namespace multiequ::testing;

TEST_CASE("study matrix loads and derives inertia and normalized adjacency") {
    const WeightedNetwork net = load_network(example1_matrix());
    CHECK(net.n == 6);
    // Row sums, addable by hand from the matrix.
    const double expected[] = {0.331, 1.0489, 0.8549, 0.7033, 0.494, 0.7562};
    for (Index i = 0; i < 6; ++i) CHECK(net.inertia[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    // Every row of the normalized adjacency sums to 1.
    const Vector row_sums = net.norm_adjacency.rowwise().sum();
    for (Index i = 0; i < 6; ++i) CHECK(std::abs(row_sums[i] - 1.0) < 1e-12);
    CHECK(net.symmetrizer.has_value());
}

TEST_CASE("two-cycle network") {
    const WeightedNetwork net = load_network(two_cycle());
    CHECK(net.inertia[0] == 1.0);
    CHECK(net.inertia[1] == 1.0);
    CHECK(net.norm_adjacency(0, 1) == 1.0);
    CHECK(net.norm_adjacency(1, 0) == 1.0);
    REQUIRE(net.symmetrizer.has_value());
    CHECK((*net.symmetrizer)[0] == 1.0);
    CHECK((*net.symmetrizer)[1] == doctest::Approx(1.0));
}

TEST_CASE("load rejections name the offending entry") {
    Matrix a = two_cycle();
    a(0, 1) = -0.5;
    try {
        load_network(a);
        FAIL("negative entry accepted");
    } catch (const ModelError& e) {
        CHECK(e.kind == ModelError::Kind::negative_entry);
        CHECK(e.row == 0);
        CHECK(e.col == 1);
    }

    a = two_cycle();
    a(1, 1) = 0.25;
    try {
        load_network(a);
        FAIL("nonzero diagonal accepted");
    } catch (const ModelError& e) {
        CHECK(e.kind == ModelError::Kind::nonzero_diagonal);
        CHECK(e.row == 1);
    }

    a = Matrix::Zero(2, 2);
    a(0, 1) = 1.0;  // upper-triangular, reducible
    CHECK_THROWS_AS(load_network(a), ModelError);
    try {
        load_network(a);
    } catch (const ModelError& e) {
        CHECK(e.kind == ModelError::Kind::not_irreducible);
    }

    CHECK_THROWS_AS(load_network(Matrix::Zero(1, 1)), ModelError);
    CHECK_THROWS_AS(load_network(Matrix::Zero(3, 2)), ModelError);
}

TEST_CASE("irreducibility matches BFS reachability oracle") {
    CHECK(check_irreducible(example1_matrix()));
    CHECK(check_irreducible(two_cycle()));

    // Block diagonal of two 2-cycles is disconnected.
    Matrix blocks = Matrix::Zero(4, 4);
    blocks(0, 1) = blocks(1, 0) = 1.0;
    blocks(2, 3) = blocks(3, 2) = 1.0;
    CHECK_FALSE(check_irreducible(blocks));
    CHECK_FALSE(strongly_connected_bfs(blocks));

    // Random sparse digraphs agree with the oracle.
    Rng rng(999);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 2 + static_cast<Index>(rng.next_u64() % 5);
        Matrix a = Matrix::Zero(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (i != j && rng.next_double() < 0.35) a(i, j) = rng.uniform(0.1, 1.0);
        CHECK(check_irreducible(a) == strongly_connected_bfs(a));
    }
}

TEST_CASE("isolated row is rejected before any division by inertia") {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;  // node 2 isolated
    try {
        load_network(a);
        FAIL("isolated row accepted");
    } catch (const ModelError& e) {
        CHECK(e.kind == ModelError::Kind::not_irreducible);
    }
}

TEST_CASE("symmetrizer of a symmetric matrix is all ones") {
    const auto sym = find_symmetrizer(complete_graph(4));
    for (Index i = 0; i < 4; ++i) CHECK(sym.d[i] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sym.residual < 1e-14);
}

TEST_CASE("symmetrizer forced by a single asymmetric pair") {
    Matrix a(2, 2);
    a << 0, 2, 1, 0;
    const auto sym = find_symmetrizer(a);
    CHECK(sym.d[0] == 1.0);
    CHECK(sym.d[1] == doctest::Approx(2.0).epsilon(1e-14));
    // diag(1,2) * a = [[0,2],[2,0]] is symmetric.
    Matrix da = sym.d.asDiagonal() * a;
    CHECK((da - da.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("study matrix symmetrizer verified directly against its residual") {
    const Matrix a = example1_matrix();
    const auto sym = find_symmetrizer(a);
    CHECK(sym.d[0] == 1.0);
    CHECK((sym.d.array() > 0.0).all());
    // Direct residual check. The printed matrix carries 4 decimals, so the
    // residual sits near 1e-3 relative rather than machine precision.
    Matrix da = sym.d.asDiagonal() * a;
    const double resid = (da - da.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
    const double scale = a.cwiseAbs().rowwise().sum().maxCoeff();
    CHECK(resid / scale < 5e-3);
    CHECK(resid / scale == doctest::Approx(sym.residual).epsilon(1e-12));
}

TEST_CASE("sign asymmetry and cycle violations are rejected with witnesses") {
    Matrix a(3, 3);
    a << 0, 1, 0,
        0, 0, 1,
        1, 0, 0;  // directed 3-cycle: a_12 > 0 but a_21 = 0
    CHECK_THROWS_AS(find_symmetrizer(a), ModelError);

    // Sign-symmetric but inconsistent cycle products: 1*1*1 != 2*2*2.
    Matrix b(3, 3);
    b << 0, 1, 2,
        2, 0, 1,
        1, 2, 0;
    try {
        find_symmetrizer(b);
        FAIL("cycle violation accepted");
    } catch (const ModelError& e) {
        CHECK(e.kind == ModelError::Kind::not_symmetrizable);
        CHECK(e.row >= 0);  // witness edge present
    }
}

TEST_CASE("symmetrizer is unique up to scale") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        // Build diag(1/g) * S with S symmetric: g itself is a symmetrizer.
        const Index n = 4 + static_cast<Index>(rng.next_u64() % 4);
        Matrix s = random_symmetrizable(n, rng, false);
        Vector g(n);
        for (Index i = 0; i < n; ++i) g[i] = rng.uniform(0.5, 2.0);
        Matrix a = g.cwiseInverse().asDiagonal() * s;

        const auto sym = find_symmetrizer(a, 1e-10);
        // d and g must be proportional: normalize both at index 0.
        for (Index i = 0; i < n; ++i) {
            CHECK(sym.d[i] / sym.d[0] == doctest::Approx(g[i] / g[0]).epsilon(1e-9));
        }
    }
}

TEST_CASE("symmetrizable implies a real spectrum") {
    Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix a = random_symmetrizable(5, rng, true);
        const double scale = a.cwiseAbs().maxCoeff();
        for (const auto& z : general_spectrum(a)) {
            CHECK(std::abs(z.imag()) < 1e-8 * std::max(scale, 1.0));
        }
    }
}

TEST_CASE("laplacian set identities") {
    const WeightedNetwork cyc = load_network(two_cycle());
    const LaplacianSet lap_cyc = laplacians(cyc);
    CHECK(lap_cyc.normalized(0, 0) == 1.0);
    CHECK(lap_cyc.normalized(0, 1) == -1.0);
    CHECK(lap_cyc.normalized(1, 0) == -1.0);
    CHECK(lap_cyc.normalized(1, 1) == 1.0);

    const WeightedNetwork net = load_network(example1_matrix());
    const LaplacianSet lap = laplacians(net);
    const Vector ones = Vector::Ones(net.n);
    CHECK((lap.normalized * ones).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((lap.standard * ones).cwiseAbs().maxCoeff() < 1e-12 * net.inertia_max());
    // scaled_at(1) is the plain laplacian.
    CHECK((lap.scaled_at(1.0) - lap.standard).cwiseAbs().maxCoeff() < 1e-15);
    // scaled form keeps the inertia diagonal and scales the coupling.
    const Matrix scaled = lap.scaled_at(1.838);
    CHECK(scaled(0, 0) == doctest::Approx(net.inertia[0]));
    CHECK(scaled(0, 1) == doctest::Approx(-1.838 * net.adjacency(0, 1)));
}

TEST_CASE("lenient load keeps a non-symmetrizable network usable") {
    Matrix b(3, 3);
    b << 0, 1, 2,
        2, 0, 1,
        1, 2, 0;
    LoadOptions opts;
    opts.require_symmetrizable = false;
    const WeightedNetwork net = load_network(b, opts);
    CHECK_FALSE(net.symmetrizer.has_value());
    CHECK(net.inertia[0] == doctest::Approx(3.0));
}
