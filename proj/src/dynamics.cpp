#include <multiequ/dynamics.hpp>

#include <multiequ/parallel.hpp>
#include <multiequ/rng.hpp>

#include <cassert>
#include <cmath>

namespace multiequ {

Vector vector_field(const SystemInstance& sys, const Vector& x) {
    return -sys.net.inertia.cwiseProduct(x) + sys.effort * (sys.net.adjacency * sys.psi.value(x));
}

Matrix jacobian(const SystemInstance& sys, const Vector& x) {
    Matrix j = sys.effort * sys.net.adjacency * sys.psi.d1(x).asDiagonal();
    j.diagonal() -= sys.net.inertia;
#ifndef NDEBUG
    for (Index r = 0; r < j.rows(); ++r)
        for (Index c = 0; c < j.cols(); ++c) assert(r == c || j(r, c) >= 0.0);
#endif
    return j;
}

namespace {

double default_step(const SystemInstance& sys) {
    return 0.01 * std::min(1.0 / sys.net.inertia_max(), 1.0);
}

} // namespace

Trajectory integrate(const SystemInstance& sys, const Vector& x0,
                     const IntegrationControls& controls) {
    const double h = controls.step > 0.0 ? controls.step : default_step(sys);
    const Index stride = std::max<Index>(controls.stride, 1);
    const auto steps = static_cast<std::int64_t>(std::ceil(controls.t_max / h));

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    traj.reason = TerminalReason::max_time;

    Vector x = x0;
    double t = 0.0;
    for (std::int64_t k = 0; k < steps; ++k) {
        const Vector k1 = vector_field(sys, x);
        if (k1.cwiseAbs().maxCoeff() < controls.field_tol) {
            traj.reason = TerminalReason::converged;
            break;
        }
        const Vector k2 = vector_field(sys, x + 0.5 * h * k1);
        const Vector k3 = vector_field(sys, x + 0.5 * h * k2);
        const Vector k4 = vector_field(sys, x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (!x.allFinite()) {
            traj.reason = TerminalReason::step_failure;
            break;
        }
        if ((k + 1) % stride == 0) {
            traj.times.push_back(t);
            traj.states.push_back(x);
        }
    }
    if (traj.times.back() != t) {
        traj.times.push_back(t);
        traj.states.push_back(x);
    }
    return traj;
}

std::vector<EnsembleEntry> ensemble_run(const SystemInstance& sys, Index n_starts,
                                        std::uint64_t seed,
                                        const std::vector<Vector>& attractors,
                                        const EnsembleOptions& opts) {
    std::vector<EnsembleEntry> entries(static_cast<size_t>(n_starts));
    const Index n = sys.net.n;

    const auto run_one = [&](std::int64_t i) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
        Vector x0(n);
        for (Index k = 0; k < n; ++k) x0[k] = rng.uniform(opts.box_lo, opts.box_hi);
        Trajectory traj = integrate(sys, x0, opts.controls);
        const Vector& terminal = traj.states.back();

        int match = -1;
        if (traj.reason == TerminalReason::converged) {
            double best = opts.match_tol;
            for (size_t a = 0; a < attractors.size(); ++a) {
                const double dist = (terminal - attractors[a]).cwiseAbs().maxCoeff();
                if (dist <= best) {
                    best = dist;
                    match = static_cast<int>(a);
                }
            }
        }
        entries[static_cast<size_t>(i)] = {x0, terminal, traj.reason, match};
    };

    if (opts.threads == 1) {
        for_each_serial(n_starts, run_one);
    } else {
        for_each_parallel(n_starts, run_one, opts.threads);
    }
    return entries;
}

} // namespace multiequ
