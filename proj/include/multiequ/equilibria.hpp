// Locating, deduplicating and classifying fixed points, plus the
// theorem-level predicates on when and where mixed-sign equilibria exist.
#pragma once

#include <multiequ/dynamics.hpp>
#include <multiequ/spectral.hpp>

#include <optional>

namespace multiequ {

enum class Stability { stable, unstable, marginal };

const char* stability_name(Stability s);

struct EquilibriumRecord {
    Vector x;
    double residual = 0.0;            // ||f(x)||_inf
    std::vector<int> orthant;         // +-1 per component
    bool degenerate_orthant = false;  // some |x_i| < 1e-8
    Vector jac_real_parts;            // sorted ascending
    Stability stability = Stability::marginal;
    bool sufficient_stable = false;   // effort * max_j psi_j'(x_j) < 1
    bool sufficient_unstable = false; // effort * min_j psi_j'(x_j) > 1
    std::optional<double> norm_ratio; // ||x||_2 / ||x+||_2 when x+ is analytic

    double max_real_part() const { return jac_real_parts[jac_real_parts.size() - 1]; }
    bool mixed_sign() const;  // nonzero and outside both agreement orthants
    std::string orthant_string() const;  // e.g. "--+-++", '0' for degenerate
};

enum class NewtonStatus { converged, no_convergence, singular_jacobian };

struct NewtonOptions {
    // Converged when ||f(x)||_inf < tol_scale * max(1, ||inertia||_inf).
    double tol_scale = 1e-10;
    int max_iter = 100;
};

struct NewtonOutcome {
    NewtonStatus status = NewtonStatus::no_convergence;
    Vector x;
    double residual = 0.0;
    int iterations = 0;
};

/// Damped Newton iteration on f(x) = 0 with the analytic Jacobian and
/// Armijo backtracking on ||f||_2. A singular linear solve is retried once
/// per step with Tikhonov damping 1e-8 I.
NewtonOutcome newton_solve(const SystemInstance& sys, const Vector& x0,
                           const NewtonOptions& opts = {});

/// Level alpha of the agreement equilibrium alpha * ones: the unique
/// positive root of psi(alpha) = alpha / effort, by bisection on
/// (0, effort * mu]; 0 when effort <= 1. Requires identical psi.
double positive_level(const SystemInstance& sys);

class NotIdenticalPsi : public std::runtime_error {
public:
    explicit NotIdenticalPsi(std::string msg) : std::runtime_error(std::move(msg)) {}
};

struct PositiveEquilibrium {
    EquilibriumRecord record;
    double level = 0.0;  // alpha, 0 when effort <= 1
    bool analytic = true;  // false when psi differ and a Newton fallback ran
};

/// The equilibrium in the closed positive orthant. Identical psi: exact
/// scalar bisection. Heterogeneous psi: Newton from a positive start,
/// flagged as numerical.
PositiveEquilibrium positive_equilibrium(const SystemInstance& sys);

/// Build a fully classified record for a state already known to solve
/// f(x) = 0 within tolerance.
EquilibriumRecord classify(const SystemInstance& sys, const Vector& x,
                           std::optional<double> positive_norm = std::nullopt);

/// Fill Jacobian spectrum, stability class and the slope-based sufficient
/// flags in place.
void classify_stability(const SystemInstance& sys, EquilibriumRecord& record);

struct CensusOptions {
    Index starts = 1000;
    double box_scale = 1.5;
    std::uint64_t seed = 1;
    int threads = 0;  // 1 = serial reference loop
    NewtonOptions newton;
    double dedup_tol = 1e-6;  // inf-norm distance treated as the same point
    std::vector<Vector> extra_seeds;  // e.g. warm starts from a nearby effort
};

struct CensusResult {
    std::vector<EquilibriumRecord> records;
    Index converged_starts = 0;
    Index failed_starts = 0;
    double positive_level = 0.0;
    bool positive_analytic = true;
};

/// Multistart search: random starts in a box sized from the agreement
/// equilibrium, the origin and agreement seeds always included, results
/// deduplicated and closed under negation. Deterministic under a fixed
/// seed for any thread count.
CensusResult multistart_census(const SystemInstance& sys, const CensusOptions& opts = {});

/// Spectral gate for mixed-sign equilibria: effort times the second-largest
/// eigenvalue of the normalized adjacency exceeds 1. Necessary always;
/// also sufficient when that eigenvalue is simple.
bool necessary_condition_H(const SpectralSummary& summary, double effort);

/// Adjacency-side necessary condition. Sigmoidal families (mu == 1) need
/// effort * lambda > inertia_min for some positive non-Perron eigenvalue;
/// the relaxed form scales the bound by 1/mu.
struct ConditionAResult {
    bool holds = false;
    double witness_eigenvalue = 0.0;
    Index witness_index = -1;
};

ConditionAResult necessary_condition_A(const Vector& adjacency_eigs, const Vector& inertia,
                                       double effort, double mu);

/// Equilibrium component ratio bound: psi(x_i)/x_i >= 1/effort on every
/// non-degenerate component (degenerate ones pass through the unit slope
/// at the origin).
struct RatioCheck {
    bool pass = true;
    Index worst_index = -1;
    double worst_margin = 0.0;  // min over i of psi(x_i)/x_i - 1/effort
};

RatioCheck check_ratio_lemma(const SystemInstance& sys, const EquilibriumRecord& record);

/// Norm-cap check against the agreement equilibrium: componentwise
/// |x_i| <= x+_i (1 + 1e-8), which implies the 2-norm bound.
struct NormBoundCheck {
    bool pass = true;
    Index violations = 0;
    double worst_excess = 0.0;  // max over records of max_i (|x_i| - x+_i)
};

NormBoundCheck check_norm_bound(const std::vector<EquilibriumRecord>& records,
                                const Vector& positive);

} // namespace multiequ
