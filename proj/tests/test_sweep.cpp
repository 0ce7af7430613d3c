#include <multiequ/sweep.hpp>

#include <doctest.h>

#include "test_helpers.hpp"

using namespace multiequ;
using namespace multiequ::testing;

TEST_CASE("random network generation") {
    const WeightedNetwork net = random_network(20, 0.1, 0.1, 1.0, 42);
    CHECK(net.n == 20);
    CHECK((net.adjacency - net.adjacency.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(check_irreducible(net.adjacency));
    REQUIRE(net.symmetrizer.has_value());
    CHECK(net.symmetrizer_residual < 1e-14);
    for (Index i = 0; i < 20; ++i) {
        for (Index j = 0; j < 20; ++j) {
            const double w = net.adjacency(i, j);
            CHECK((w == 0.0 || (w >= 0.1 && w <= 1.0)));
        }
    }

    // Same seed reproduces the same graph.
    const WeightedNetwork again = random_network(20, 0.1, 0.1, 1.0, 42);
    CHECK((net.adjacency - again.adjacency).cwiseAbs().maxCoeff() == 0.0);

    // Full edge probability gives the complete graph.
    const WeightedNetwork complete = random_network(5, 1.0, 0.5, 0.5, 7);
    Index edges = 0;
    for (Index i = 0; i < 5; ++i)
        for (Index j = 0; j < 5; ++j)
            if (complete.adjacency(i, j) > 0.0) ++edges;
    CHECK(edges == 20);

    // Two nodes with certain edge = the 2-cycle.
    const WeightedNetwork pair = random_network(2, 1.0, 1.0, 1.0, 3);
    CHECK(pair.adjacency(0, 1) == 1.0);
    CHECK(pair.adjacency(1, 0) == 1.0);
}

TEST_CASE("grid helper") {
    CHECK(linear_grid(0.0, 1.0, 0).empty());
    const auto g = linear_grid(1.0, 3.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == 3.0);
    CHECK(g[2] == doctest::Approx(2.0));
}

TEST_CASE("effort sweep across both thresholds") {
    const WeightedNetwork net = load_network(example1_matrix());
    const SigmoidFamily psi = SigmoidFamily::builtin(SigmoidKind::boltzmann);

    SweepOptions opts;
    opts.starts_per_effort = 300;
    opts.seed = 5;
    const SweepResult sweep = pi_sweep(net, psi, {0.5, 1.1, 1.5}, opts);

    REQUIRE(sweep.per_effort.size() == 3);
    CHECK(sweep.per_effort[0].equilibrium_count == 1);
    CHECK(sweep.per_effort[1].equilibrium_count == 3);
    CHECK(sweep.per_effort[2].equilibrium_count > 3);
    CHECK(sweep.threshold_first == 1.0);
    CHECK(sweep.threshold_second == doctest::Approx(1.216).epsilon(2e-3));

    // Empty grid gives an empty result.
    CHECK(pi_sweep(net, psi, {}, opts).per_effort.empty());
}

TEST_CASE("origin linearization eigenvalues follow the affine fan") {
    const WeightedNetwork net = load_network(example1_matrix());
    const SigmoidFamily psi = SigmoidFamily::builtin(SigmoidKind::boltzmann);
    SweepOptions opts;
    opts.starts_per_effort = 50;
    const SweepResult sweep = pi_sweep(net, psi, {0.9, 1.216, 1.5}, opts);

    const Vector sym = net.symmetrizer->cwiseProduct(net.inertia);
    for (size_t k = 0; k < sweep.efforts.size(); ++k) {
        const double effort = sweep.efforts[k];
        const Matrix lin = Matrix::Identity(net.n, net.n) - effort * net.norm_adjacency;
        const Vector direct = real_spectrum(-lin, sym).values;
        CHECK((sweep.per_effort[k].origin_linearization - direct).cwiseAbs().maxCoeff() <
              1e-10);
    }

    // The top non-consensus eigenvalue crosses zero exactly at the second
    // threshold.
    const SpectralSummary summary = spectral_summary(net);
    const double pi2 = summary.critical_effort;
    const double just_below = (pi2 - 1e-6) * summary.norm_adjacency_second - 1.0;
    const double just_above = (pi2 + 1e-6) * summary.norm_adjacency_second - 1.0;
    CHECK(just_below < 0.0);
    CHECK(just_above > 0.0);
}

TEST_CASE("census count jumps by at least two right above the second threshold") {
    const WeightedNetwork net = load_network(example1_matrix());
    const SigmoidFamily psi = SigmoidFamily::builtin(SigmoidKind::boltzmann);
    const double pi2 = spectral_summary(net).critical_effort;
    SweepOptions opts;
    opts.starts_per_effort = 600;
    opts.seed = 9;
    const SweepResult sweep = pi_sweep(net, psi, {pi2 * 1.02}, opts);
    CHECK(sweep.per_effort[0].equilibrium_count >= 5);
}

TEST_CASE("warm starts carry branches across the grid") {
    const WeightedNetwork net = load_network(example1_matrix());
    const SigmoidFamily psi = SigmoidFamily::builtin(SigmoidKind::boltzmann);
    SweepOptions warm;
    warm.starts_per_effort = 150;
    warm.seed = 31;
    warm.warm_start = true;
    const auto grid = linear_grid(1.25, 1.9, 6);
    const SweepResult with_warm = pi_sweep(net, psi, grid, warm);
    SweepOptions cold = warm;
    cold.warm_start = false;
    const SweepResult without = pi_sweep(net, psi, grid, cold);
    for (size_t k = 0; k < grid.size(); ++k) {
        CHECK(with_warm.per_effort[k].equilibrium_count >=
              without.per_effort[k].equilibrium_count);
    }
}

TEST_CASE("bundled study report") {
    Example1Options opts;
    opts.census_starts = 500;
    opts.ensemble_starts = 20;
    opts.seed = 2;
    const Example1Report report = example1_report(example1_matrix(), opts);

    CHECK(std::abs(report.summary.spectral_radius - 0.706) < 1.5e-3);
    CHECK(std::abs(report.summary.critical_effort - 1.216) < 1.5e-3);
    CHECK(std::abs(report.lambda2_scaled - (-0.302)) < 1.5e-3);
    REQUIRE(report.panels.size() == 4);
    for (const auto& panel : report.panels) {
        for (const auto& z : panel.eigenvalues) {
            CHECK(disk_union_distance(panel.disks, z) < 1e-9);
        }
    }
    Index in_pattern = 0;
    for (const auto& r : report.censuses.front().records) {
        if (r.orthant_string() == "--+-++") ++in_pattern;
    }
    CHECK(in_pattern >= 3);
    CHECK(report.bifurcation_efforts.size() == report.bifurcation_eigs.size());
}

TEST_CASE("random census study at reduced scale") {
    Example2Options opts;
    opts.nodes = 12;
    opts.edge_prob = 0.25;
    opts.starts_per_effort = 150;
    opts.seed = 8;
    opts.effort_grid = {2.0, 5.0};
    const Example2Report report = example2_report(opts);

    REQUIRE(report.sweep.per_effort.size() == 2);
    for (const auto& point : report.polar) {
        CHECK(point.norm_ratio <= 1.0 + 1e-8);
        CHECK(point.negative_fraction >= 0.0);
        CHECK(point.negative_fraction <= 1.0);
    }
    // Agreement states dominate the high end of the norm-ratio scale.
    double stable_sum = 0.0, unstable_sum = 0.0;
    Index stable_count = 0, unstable_count = 0;
    for (const auto& point : report.polar) {
        if (point.stable) {
            stable_sum += point.norm_ratio;
            ++stable_count;
        } else {
            unstable_sum += point.norm_ratio;
            ++unstable_count;
        }
    }
    REQUIRE(stable_count > 0);
    REQUIRE(unstable_count > 0);
    CHECK(stable_sum / stable_count > unstable_sum / unstable_count);
}
