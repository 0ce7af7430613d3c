// Interaction network: validated adjacency matrix and the matrices derived
// from it (inertia diagonal, row-normalized adjacency, Laplacians).
#pragma once

#include <multiequ/types.hpp>

#include <optional>

namespace multiequ {

struct LoadOptions {
    // Relative tolerance on || diag(d)A - (diag(d)A)^T ||_inf / ||A||_inf.
    // Published matrices are typically printed with 4 decimals, which leaves
    // a residual around 1e-3 even for exactly symmetrizable data.
    double sym_tol = 5e-3;
    // When set, a failed symmetrizability check aborts the load instead of
    // leaving the symmetrizer empty.
    bool require_symmetrizable = true;
};

struct WeightedNetwork {
    Index n = 0;
    Matrix adjacency;       // nonnegative, zero diagonal, irreducible
    Vector inertia;         // row sums of adjacency, all > 0
    Matrix norm_adjacency;  // adjacency with each row scaled to sum 1
    std::optional<Vector> symmetrizer;  // d > 0, d[0] = 1, diag(d)*adjacency symmetric
    double symmetrizer_residual = 0.0;  // || dA - (dA)^T ||_inf / ||A||_inf

    double inertia_min() const { return inertia.minCoeff(); }
    double inertia_max() const { return inertia.maxCoeff(); }
};

struct LaplacianSet {
    Matrix normalized;  // I - norm_adjacency, rows sum to 0
    Matrix standard;    // diag(inertia) - adjacency

    // diag(inertia) - effort * adjacency
    Matrix scaled_at(double effort) const {
        return standard + (1.0 - effort) * adjacency_;
    }

    explicit LaplacianSet(const WeightedNetwork& net);

private:
    Matrix adjacency_;
};

struct SymmetrizerResult {
    Vector d;
    double residual;  // relative inf-norm residual of diag(d)*A
};

/// True iff the digraph with an edge (i -> j) for every a_ij > 0 is strongly
/// connected.
bool check_irreducible(const Matrix& a);

/// Positive vector d with d[0] = 1 such that diag(d)*A is symmetric within
/// rel_tol * ||A||_inf. Checks sign symmetry, propagates d along a spanning
/// tree of the undirected support graph, then verifies every edge (which
/// covers the cycle-product condition). Throws ModelError(not_symmetrizable)
/// with a witness pair on failure.
SymmetrizerResult find_symmetrizer(const Matrix& a, double rel_tol = 5e-3);

/// Validate a raw matrix and derive the attached network objects.
WeightedNetwork load_network(const Matrix& a, const LoadOptions& opts = {});

LaplacianSet laplacians(const WeightedNetwork& net);

} // namespace multiequ
