#include <multiequ/equilibria.hpp>

#include <multiequ/parallel.hpp>
#include <multiequ/rng.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace multiequ {

namespace {

constexpr double kDegenerateTol = 1e-8;
constexpr double kMarginalBand = 1e-8;

double record_tolerance(const SystemInstance& sys) {
    return 1e-9 * std::max(1.0, sys.net.inertia_max());
}

double newton_tolerance(const SystemInstance& sys, const NewtonOptions& opts) {
    return opts.tol_scale * std::max(1.0, sys.net.inertia_max());
}

} // namespace

const char* stability_name(Stability s) {
    switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::marginal: return "marginal";
    }
    return "?";
}

bool EquilibriumRecord::mixed_sign() const {
    if (x.cwiseAbs().maxCoeff() < kDegenerateTol) return false;  // origin
    const bool all_nonneg = (x.array() >= -kDegenerateTol).all();
    const bool all_nonpos = (x.array() <= kDegenerateTol).all();
    return !all_nonneg && !all_nonpos;
}

std::string EquilibriumRecord::orthant_string() const {
    std::string s;
    s.reserve(static_cast<size_t>(x.size()));
    for (Index i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) < kDegenerateTol) {
            s.push_back('0');
        } else {
            s.push_back(x[i] > 0.0 ? '+' : '-');
        }
    }
    return s;
}

NewtonOutcome newton_solve(const SystemInstance& sys, const Vector& x0,
                           const NewtonOptions& opts) {
    const double tol = newton_tolerance(sys, opts);
    NewtonOutcome out;
    out.x = x0;

    Vector f = vector_field(sys, out.x);
    out.residual = f.cwiseAbs().maxCoeff();
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (out.residual < tol) {
            out.status = NewtonStatus::converged;
            out.iterations = iter;
            return out;
        }
        Matrix j = jacobian(sys, out.x);
        Eigen::FullPivLU<Matrix> lu(j);
        if (!lu.isInvertible()) {
            // Tikhonov-damped retry.
            j.diagonal().array() -= 1e-8;
            lu.compute(j);
            if (!lu.isInvertible()) {
                out.status = NewtonStatus::singular_jacobian;
                out.iterations = iter;
                return out;
            }
        }
        const Vector step = lu.solve(-f);

        // Armijo backtracking on the 2-norm of the field.
        const double f_norm = f.norm();
        double t = 1.0;
        Vector x_next;
        Vector f_next;
        bool accepted = false;
        while (t >= 0x1p-20) {
            x_next = out.x + t * step;
            f_next = vector_field(sys, x_next);
            if (f_next.allFinite() && f_next.norm() <= (1.0 - 1e-4 * t) * f_norm) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // No decrease along the Newton direction; take the smallest step
            // and let the iteration cap decide.
            x_next = out.x + 0x1p-20 * step;
            f_next = vector_field(sys, x_next);
            if (!f_next.allFinite()) {
                out.status = NewtonStatus::no_convergence;
                out.iterations = iter;
                return out;
            }
        }
        out.x = x_next;
        f = f_next;
        out.residual = f.cwiseAbs().maxCoeff();
    }
    out.status = out.residual < tol ? NewtonStatus::converged : NewtonStatus::no_convergence;
    out.iterations = opts.max_iter;
    return out;
}

double positive_level(const SystemInstance& sys) {
    if (!sys.psi.identical()) throw NotIdenticalPsi("positive level needs identical psi");
    if (sys.effort <= 1.0) return 0.0;

    const auto& f = sys.psi.node(0);
    const auto gap = [&](double a) { return f.value(a) - a / sys.effort; };

    double lo = 0.0;                       // gap > 0 just right of 0 (slope 1 > 1/effort)
    double hi = sys.effort * sys.psi.mu(); // saturation forces gap < 0 here
    for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PositiveEquilibrium positive_equilibrium(const SystemInstance& sys) {
    PositiveEquilibrium out;
    if (sys.psi.identical()) {
        out.level = positive_level(sys);
        const Vector x = Vector::Constant(sys.net.n, out.level);
        out.record = classify(sys, x, x.norm());
        out.analytic = true;
        return out;
    }
    // Heterogeneous saturation: no closed form, polish a positive start.
    out.analytic = false;
    if (sys.effort <= 1.0) {
        out.record = classify(sys, Vector::Zero(sys.net.n));
        return out;
    }
    const NewtonOutcome sol = newton_solve(sys, Vector::Constant(sys.net.n, sys.effort));
    if (sol.status != NewtonStatus::converged) {
        throw NumericalError("positive-orthant equilibrium solve did not converge");
    }
    out.level = sol.x.maxCoeff();
    out.record = classify(sys, sol.x);
    return out;
}

void classify_stability(const SystemInstance& sys, EquilibriumRecord& record) {
    const Matrix j = jacobian(sys, record.x);
    Eigen::EigenSolver<Matrix> solver(j, /*computeEigenvectors=*/false);
    Vector re(j.rows());
    for (Index i = 0; i < j.rows(); ++i) re[i] = solver.eigenvalues()[i].real();
    std::sort(re.begin(), re.end());
    record.jac_real_parts = std::move(re);

    const double max_re = record.max_real_part();
    if (max_re < -kMarginalBand) {
        record.stability = Stability::stable;
    } else if (max_re > kMarginalBand) {
        record.stability = Stability::unstable;
    } else {
        record.stability = Stability::marginal;
    }

    double slope_min = std::numeric_limits<double>::infinity();
    double slope_max = 0.0;
    for (Index i = 0; i < sys.net.n; ++i) {
        const double s = sys.psi.d1(i, record.x[i]);
        slope_min = std::min(slope_min, s);
        slope_max = std::max(slope_max, s);
    }
    record.sufficient_stable = sys.effort * slope_max < 1.0;
    record.sufficient_unstable = sys.effort * slope_min > 1.0;
}

EquilibriumRecord classify(const SystemInstance& sys, const Vector& x,
                           std::optional<double> positive_norm) {
    EquilibriumRecord record;
    record.x = x;
    record.residual = vector_field(sys, x).cwiseAbs().maxCoeff();
    record.orthant.resize(static_cast<size_t>(x.size()));
    record.degenerate_orthant = false;
    for (Index i = 0; i < x.size(); ++i) {
        record.orthant[static_cast<size_t>(i)] = x[i] >= 0.0 ? 1 : -1;
        if (std::abs(x[i]) < kDegenerateTol) record.degenerate_orthant = true;
    }
    classify_stability(sys, record);
    if (positive_norm && *positive_norm > 0.0) {
        record.norm_ratio = x.norm() / *positive_norm;
    }
    return record;
}

CensusResult multistart_census(const SystemInstance& sys, const CensusOptions& opts) {
    CensusResult result;
    const Index n = sys.net.n;
    const double tol = record_tolerance(sys);

    // Sampling box. Identical psi: scaled agreement level (every equilibrium
    // lies componentwise inside |x_i| <= alpha). Otherwise fall back on the
    // saturation bound |x_i| <= effort.
    std::optional<double> positive_norm;
    double alpha = 0.0;
    bool analytic = true;
    Vector agree;
    if (sys.psi.identical()) {
        alpha = positive_level(sys);
        agree = Vector::Constant(n, alpha);
        if (alpha > 0.0 && sys.psi.sigmoidal()) positive_norm = agree.norm();
    } else {
        try {
            auto pos = positive_equilibrium(sys);
            agree = pos.record.x;
            alpha = pos.level;
            analytic = false;
        } catch (const NumericalError&) {
            agree = Vector::Zero(n);
            analytic = false;
        }
    }
    result.positive_level = alpha;
    result.positive_analytic = analytic;
    const double box =
        opts.box_scale * std::max(sys.psi.identical() ? alpha : sys.effort, 1.0);

    // Deterministic ordered start list: canonical seeds, warm starts, then
    // random starts from per-index substreams.
    std::vector<Vector> starts;
    starts.reserve(static_cast<size_t>(opts.starts) + opts.extra_seeds.size() + 3);
    starts.push_back(Vector::Zero(n));
    if (alpha > 0.0) {
        starts.push_back(agree);
        starts.push_back(-agree);
    }
    for (const auto& s : opts.extra_seeds) starts.push_back(s);
    const size_t random_offset = starts.size();
    starts.resize(random_offset + static_cast<size_t>(opts.starts));
    for (Index i = 0; i < opts.starts; ++i) {
        Rng rng = Rng::substream(opts.seed, static_cast<std::uint64_t>(i));
        Vector x0(n);
        for (Index k = 0; k < n; ++k) x0[k] = rng.uniform(-box, box);
        starts[random_offset + static_cast<size_t>(i)] = x0;
    }

    // Solve every start into its own slot; order of execution is irrelevant.
    std::vector<NewtonOutcome> outcomes(starts.size());
    const auto solve_one = [&](std::int64_t i) {
        outcomes[static_cast<size_t>(i)] =
            newton_solve(sys, starts[static_cast<size_t>(i)], opts.newton);
    };
    if (opts.threads == 1) {
        for_each_serial(static_cast<std::int64_t>(starts.size()), solve_one);
    } else {
        for_each_parallel(static_cast<std::int64_t>(starts.size()), solve_one, opts.threads);
    }

    // Sequential merge in slot order keeps the output deterministic.
    std::vector<Vector> found;
    const auto is_new = [&](const Vector& x) {
        for (const auto& y : found) {
            if ((x - y).cwiseAbs().maxCoeff() <= opts.dedup_tol) return false;
        }
        return true;
    };
    for (const auto& out : outcomes) {
        if (out.status != NewtonStatus::converged) {
            ++result.failed_starts;
            continue;
        }
        ++result.converged_starts;
        if (out.residual < tol && is_new(out.x)) found.push_back(out.x);
    }

    // Closure under negation: the field is odd, so -x solves whenever x does.
    const size_t found_before_closure = found.size();
    for (size_t i = 0; i < found_before_closure; ++i) {
        Vector neg = -found[i];
        if (!is_new(neg)) continue;
        if (vector_field(sys, neg).cwiseAbs().maxCoeff() >= tol) {
            // Rounding pushed the mirror off tolerance; polish it back.
            const NewtonOutcome polished = newton_solve(sys, neg, opts.newton);
            if (polished.status != NewtonStatus::converged || !is_new(polished.x)) continue;
            neg = polished.x;
        }
        found.push_back(std::move(neg));
    }

    result.records.reserve(found.size());
    for (const auto& x : found) result.records.push_back(classify(sys, x, positive_norm));
    return result;
}

bool necessary_condition_H(const SpectralSummary& summary, double effort) {
    return effort * summary.norm_adjacency_second > 1.0;
}

ConditionAResult necessary_condition_A(const Vector& adjacency_eigs, const Vector& inertia,
                                       double effort, double mu) {
    ConditionAResult out;
    const Index n = adjacency_eigs.size();
    const double inertia_min = inertia.minCoeff();
    const bool sigmoidal_form = mu <= 1.0 + 1e-12;
    // Scan below the Perron root (simple for irreducible input), largest first.
    for (Index k = n - 2; k >= 0; --k) {
        const double lambda = adjacency_eigs[k];
        if (lambda <= 0.0) break;  // sorted, no positive values remain
        const double gain = effort * lambda;
        const bool hit = sigmoidal_form ? gain > inertia_min : gain >= inertia_min / mu;
        if (hit) {
            out.holds = true;
            out.witness_eigenvalue = lambda;
            out.witness_index = k;
            return out;
        }
    }
    return out;
}

RatioCheck check_ratio_lemma(const SystemInstance& sys, const EquilibriumRecord& record) {
    RatioCheck out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    const double bound = 1.0 / sys.effort;
    for (Index i = 0; i < record.x.size(); ++i) {
        const double xi = record.x[i];
        // Degenerate components pass through the unit slope at the origin.
        const double ratio = std::abs(xi) > kDegenerateTol ? sys.psi.value(i, xi) / xi
                                                           : sys.psi.d1(i, 0.0);
        const double margin = ratio - bound;
        if (margin < out.worst_margin) {
            out.worst_margin = margin;
            out.worst_index = i;
        }
        if (margin < -1e-10) out.pass = false;
    }
    return out;
}

NormBoundCheck check_norm_bound(const std::vector<EquilibriumRecord>& records,
                                const Vector& positive) {
    NormBoundCheck out;
    out.worst_excess = -std::numeric_limits<double>::infinity();
    for (const auto& record : records) {
        double excess = -std::numeric_limits<double>::infinity();
        for (Index i = 0; i < record.x.size(); ++i) {
            excess = std::max(excess, std::abs(record.x[i]) - positive[i] * (1.0 + 1e-8));
        }
        out.worst_excess = std::max(out.worst_excess, excess);
        if (excess > 0.0) {
            ++out.violations;
            out.pass = false;
        }
    }
    return out;
}

} // namespace multiequ
