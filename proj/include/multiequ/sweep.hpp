// Effort-parameter sweeps, random test networks, and the two canned
// numerical studies (the 6-node fixture and the 20-node random census).
#pragma once

#include <multiequ/equilibria.hpp>

namespace multiequ {

class InfeasibleAfterRetries : public NumericalError {
public:
    explicit InfeasibleAfterRetries(std::string msg) : NumericalError(std::move(msg)) {}
};

/// Undirected Erdos-Renyi graph with one uniform weight per kept edge,
/// assigned to both directions (symmetric, so the identity symmetrizes it).
/// Resamples until the graph is connected; deterministic under seed.
WeightedNetwork random_network(Index n, double edge_prob, double weight_lo, double weight_hi,
                               std::uint64_t seed);

struct PerEffortSummary {
    double effort = 0.0;
    Index equilibrium_count = 0;
    Index orthant_count = 0;  // distinct orthant signatures
    Index stable_count = 0;
    std::vector<double> norm_ratios;
    Vector origin_linearization;  // effort * lambda_i(norm adjacency) - 1, ascending
};

struct SweepResult {
    std::vector<double> efforts;
    std::vector<PerEffortSummary> per_effort;
    std::vector<CensusResult> censuses;  // full records, same order as efforts
    double threshold_first = 1.0;        // agreement pitchfork
    double threshold_second = 0.0;       // mixed-sign threshold (may be +inf)
};

struct SweepOptions {
    Index starts_per_effort = 1000;
    std::uint64_t seed = 1;
    bool warm_start = true;  // seed each census with the previous equilibria
    int threads = 0;
    double box_scale = 1.5;
    NewtonOptions newton;
};

SweepResult pi_sweep(const WeightedNetwork& net, const SigmoidFamily& psi,
                     const std::vector<double>& effort_grid, const SweepOptions& opts = {});

/// Evenly spaced grid helper: count points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, Index count);

/// Canned study on the bundled 6-node fixture: spectral numbers,
/// disk geometry for the four standard matrices, censuses at the requested
/// efforts, and an ensemble convergence table at the main effort value.
struct Example1Report {
    WeightedNetwork net;
    SpectralSummary summary;
    FiedlerPair fiedler;
    double effort_main = 0.0;
    Vector scaled_laplacian_eigs;  // spectrum of diag(inertia) - effort * A
    double lambda2_scaled = 0.0;   // its second-smallest eigenvalue

    struct DiskPanel {
        std::string name;  // "a".."d"
        std::string matrix;
        std::vector<GersgorinDisk> disks;
        std::vector<std::complex<double>> eigenvalues;
    };
    std::vector<DiskPanel> panels;

    std::vector<double> census_efforts;
    std::vector<CensusResult> censuses;

    std::vector<EnsembleEntry> ensemble;
    std::vector<Vector> attractors;  // census states, ensemble matches into this list

    std::vector<double> bifurcation_efforts;  // dense grid for the origin linearization
    std::vector<Vector> bifurcation_eigs;
};

struct Example1Options {
    double effort_main = 1.838;
    std::vector<double> census_efforts;  // defaults to {effort_main}
    Index census_starts = 1000;
    Index ensemble_starts = 100;
    std::uint64_t seed = 1;
    int threads = 0;
};

Example1Report example1_report(const Matrix& adjacency, const Example1Options& opts = {});

/// Canned random-network census study: per-effort equilibrium and orthant
/// counts, norm-ratio scatter, and per-equilibrium polar tuples.
struct Example2Report {
    WeightedNetwork net;
    SpectralSummary summary;
    SweepResult sweep;

    struct PolarPoint {
        double effort;
        double norm_ratio;
        Index positive_jac_eigs;
        double negative_fraction;  // fraction of strictly negative components
        bool stable;
    };
    std::vector<PolarPoint> polar;
};

struct Example2Options {
    Index nodes = 20;
    double edge_prob = 0.1;
    double weight_lo = 0.1;
    double weight_hi = 1.0;
    std::vector<double> effort_grid;  // defaults to 50 points on (1, 20]
    Index starts_per_effort = 1000;
    std::uint64_t seed = 1;
    int threads = 0;
};

Example2Report example2_report(const Example2Options& opts = {});

} // namespace multiequ
