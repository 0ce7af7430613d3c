// The dynamical system itself: vector field, Jacobian, trajectory
// integration, and deterministic ensemble simulation.
#pragma once

#include <multiequ/network.hpp>
#include <multiequ/sigmoid.hpp>

#include <cstdint>
#include <vector>

namespace multiequ {

/// A concrete system: network + saturation family + social effort gain.
/// The state of node i decays at its inertia rate and is driven by the
/// saturated opinions of its neighbors scaled by the effort parameter.
struct SystemInstance {
    WeightedNetwork net;
    SigmoidFamily psi;
    double effort;  // > 0

    SystemInstance(WeightedNetwork network, SigmoidFamily family, double effort_param)
        : net(std::move(network)), psi(std::move(family)), effort(effort_param) {
        if (effort <= 0.0) throw std::invalid_argument("effort parameter must be positive");
        if (!psi.identical() && psi.node_count() != net.n) {
            throw std::invalid_argument("per-node saturation list does not match node count");
        }
    }
};

/// f(x) = -diag(inertia) x + effort * A psi(x).
Vector vector_field(const SystemInstance& sys, const Vector& x);

/// J(x) = -diag(inertia) + effort * A diag(psi'(x)). Metzler for every x.
Matrix jacobian(const SystemInstance& sys, const Vector& x);

enum class TerminalReason { converged, max_time, step_failure };

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    TerminalReason reason = TerminalReason::max_time;
};

struct IntegrationControls {
    double step = 0.0;       // 0 = 0.01 * min(1/inertia_max, 1)
    double t_max = 500.0;
    double field_tol = 1e-10;  // stop when ||f(x)||_inf drops below
    Index stride = 10;         // record every stride-th step
};

/// Fixed-step classical Runge-Kutta. Deterministic; stops early once the
/// field norm certifies convergence.
Trajectory integrate(const SystemInstance& sys, const Vector& x0,
                     const IntegrationControls& controls = {});

struct EnsembleEntry {
    Vector start;
    Vector terminal;
    TerminalReason reason;
    int attractor;  // index into the attractor list, -1 = unresolved
};

struct EnsembleOptions {
    double box_lo = -2.0;
    double box_hi = 2.0;
    IntegrationControls controls;
    double match_tol = 1e-4;  // inf-norm distance to claim an attractor
    int threads = 0;          // 0 = default parallelism, 1 = serial reference
};

/// Integrate n_starts random initial conditions and match each terminal
/// state against the attractor list. Start i draws from substream(seed, i),
/// so output is identical for any thread count.
std::vector<EnsembleEntry> ensemble_run(const SystemInstance& sys, Index n_starts,
                                        std::uint64_t seed,
                                        const std::vector<Vector>& attractors,
                                        const EnsembleOptions& opts = {});

} // namespace multiequ
