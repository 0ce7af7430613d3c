#include <multiequ/sweep.hpp>

#include <multiequ/rng.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace multiequ {

WeightedNetwork random_network(Index n, double edge_prob, double weight_lo, double weight_hi,
                               std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("need at least 2 nodes");
    if (edge_prob <= 0.0 || edge_prob > 1.0) throw std::invalid_argument("edge_prob in (0, 1]");

    constexpr int max_attempts = 1000;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(attempt));
        Matrix a = Matrix::Zero(n, n);
        for (Index i = 0; i < n; ++i) {
            for (Index j = i + 1; j < n; ++j) {
                if (rng.next_double() < edge_prob) {
                    const double w = rng.uniform(weight_lo, weight_hi);
                    a(i, j) = w;
                    a(j, i) = w;
                }
            }
        }
        if (check_irreducible(a)) return load_network(a);
    }
    throw InfeasibleAfterRetries("no connected graph in " + std::to_string(max_attempts) +
                                 " attempts; raise edge_prob or n");
}

std::vector<double> linear_grid(double lo, double hi, Index count) {
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(std::max<Index>(count, 0)));
    if (count == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (Index k = 0; k < count; ++k) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
    }
    return grid;
}

namespace {

PerEffortSummary summarize_census(double effort, const CensusResult& census,
                                  const Vector& norm_adjacency_eigs) {
    PerEffortSummary s;
    s.effort = effort;
    s.equilibrium_count = static_cast<Index>(census.records.size());
    std::set<std::string> orthants;
    for (const auto& r : census.records) {
        orthants.insert(r.orthant_string());
        if (r.stability == Stability::stable) ++s.stable_count;
        if (r.norm_ratio) s.norm_ratios.push_back(*r.norm_ratio);
    }
    s.orthant_count = static_cast<Index>(orthants.size());
    s.origin_linearization = effort * norm_adjacency_eigs.array() - 1.0;
    return s;
}

} // namespace

SweepResult pi_sweep(const WeightedNetwork& net, const SigmoidFamily& psi,
                     const std::vector<double>& effort_grid, const SweepOptions& opts) {
    SweepResult result;
    result.efforts = effort_grid;
    const SpectralSummary summary = spectral_summary(net);
    result.threshold_second = summary.critical_effort;

    std::vector<Vector> warm;
    for (size_t k = 0; k < effort_grid.size(); ++k) {
        SystemInstance sys(net, psi, effort_grid[k]);
        CensusOptions copts;
        copts.starts = opts.starts_per_effort;
        copts.box_scale = opts.box_scale;
        // Distinct random starts per grid point, still keyed by one seed.
        copts.seed = opts.seed + 0x9e3779b9u * static_cast<std::uint64_t>(k + 1);
        copts.threads = opts.threads;
        copts.newton = opts.newton;
        if (opts.warm_start) copts.extra_seeds = warm;

        CensusResult census = multistart_census(sys, copts);
        if (opts.warm_start) {
            warm.clear();
            for (const auto& r : census.records) warm.push_back(r.x);
        }
        result.per_effort.push_back(
            summarize_census(effort_grid[k], census, summary.norm_adjacency_eigs));
        result.censuses.push_back(std::move(census));
    }
    return result;
}

Example1Report example1_report(const Matrix& adjacency, const Example1Options& opts) {
    Example1Report report;
    report.net = load_network(adjacency);
    report.summary = spectral_summary(report.net);
    report.fiedler = fiedler_pair(report.net);
    report.effort_main = opts.effort_main;

    const LaplacianSet lap = laplacians(report.net);
    const Matrix scaled = lap.scaled_at(opts.effort_main);
    const Vector jac_symmetrizer = *report.net.symmetrizer;  // same symmetrizer as A
    report.scaled_laplacian_eigs = real_spectrum(scaled, jac_symmetrizer).values;
    report.lambda2_scaled = report.scaled_laplacian_eigs[1];

    const Index n = report.net.n;
    const Matrix identity = Matrix::Identity(n, n);
    const auto add_panel = [&report](std::string name, std::string label, const Matrix& m) {
        report.panels.push_back({std::move(name), std::move(label), gersgorin_disks(m),
                                 general_spectrum(m)});
    };
    add_panel("a", "normalized laplacian", lap.normalized);
    add_panel("b", "origin linearization", identity - opts.effort_main * report.net.norm_adjacency);
    add_panel("c", "laplacian", lap.standard);
    add_panel("d", "scaled laplacian", scaled);

    const SigmoidFamily psi = SigmoidFamily::builtin(SigmoidKind::boltzmann);
    report.census_efforts =
        opts.census_efforts.empty() ? std::vector<double>{opts.effort_main} : opts.census_efforts;
    for (double effort : report.census_efforts) {
        SystemInstance sys(report.net, psi, effort);
        CensusOptions copts;
        copts.starts = opts.census_starts;
        copts.seed = opts.seed;
        copts.threads = opts.threads;
        report.censuses.push_back(multistart_census(sys, copts));
    }

    // Ensemble convergence table at the main effort value.
    SystemInstance sys_main(report.net, psi, opts.effort_main);
    const CensusResult& census_main = report.censuses.front();
    for (const auto& r : census_main.records) report.attractors.push_back(r.x);
    EnsembleOptions eopts;
    eopts.threads = opts.threads;
    report.ensemble = ensemble_run(sys_main, opts.ensemble_starts, opts.seed,
                                   report.attractors, eopts);

    // Origin-linearization eigenvalue fan for the bifurcation picture.
    report.bifurcation_efforts = linear_grid(0.0, 2.0, 201);
    for (double effort : report.bifurcation_efforts) {
        report.bifurcation_eigs.push_back(
            Vector(effort * report.summary.norm_adjacency_eigs.array() - 1.0));
    }
    return report;
}

Example2Report example2_report(const Example2Options& opts) {
    Example2Report report;
    report.net = random_network(opts.nodes, opts.edge_prob, opts.weight_lo, opts.weight_hi,
                                opts.seed);
    report.summary = spectral_summary(report.net);

    std::vector<double> grid = opts.effort_grid;
    if (grid.empty()) {
        grid = linear_grid(1.0, 20.0, 51);
        grid.erase(grid.begin());  // open at 1
    }

    SweepOptions sopts;
    sopts.starts_per_effort = opts.starts_per_effort;
    sopts.seed = opts.seed;
    sopts.threads = opts.threads;
    const SigmoidFamily psi = SigmoidFamily::builtin(SigmoidKind::boltzmann);
    report.sweep = pi_sweep(report.net, psi, grid, sopts);

    for (size_t k = 0; k < report.sweep.censuses.size(); ++k) {
        const double effort = report.sweep.efforts[k];
        for (const auto& r : report.sweep.censuses[k].records) {
            if (!r.norm_ratio) continue;
            Index positive_eigs = 0;
            for (Index i = 0; i < r.jac_real_parts.size(); ++i) {
                if (r.jac_real_parts[i] > 1e-8) ++positive_eigs;
            }
            Index negative_components = 0;
            for (Index i = 0; i < r.x.size(); ++i) {
                if (r.x[i] < 0.0) ++negative_components;
            }
            report.polar.push_back({effort, *r.norm_ratio, positive_eigs,
                                    static_cast<double>(negative_components) /
                                        static_cast<double>(r.x.size()),
                                    r.stability == Stability::stable});
        }
    }
    return report;
}

} // namespace multiequ
