#include <multiequ/network.hpp>

#include <limits>
#include <sstream>
#include <vector>

namespace multiequ {

namespace {

// Reachability over the support digraph; transpose = follow edges backwards.
std::vector<bool> reachable_from(const Matrix& a, Index start, bool transpose) {
    const Index n = a.rows();
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<Index> stack{start};
    seen[static_cast<size_t>(start)] = true;
    while (!stack.empty()) {
        Index i = stack.back();
        stack.pop_back();
        for (Index j = 0; j < n; ++j) {
            double w = transpose ? a(j, i) : a(i, j);
            if (w > 0.0 && !seen[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = true;
                stack.push_back(j);
            }
        }
    }
    return seen;
}

} // namespace

bool check_irreducible(const Matrix& a) {
    const Index n = a.rows();
    if (n != a.cols() || n < 1) return false;
    if (n == 1) return false;  // hollow 1x1 is the zero matrix, reducible
    auto fwd = reachable_from(a, 0, false);
    auto bwd = reachable_from(a, 0, true);
    for (Index i = 0; i < n; ++i) {
        if (!fwd[static_cast<size_t>(i)] || !bwd[static_cast<size_t>(i)]) return false;
    }
    return true;
}

SymmetrizerResult find_symmetrizer(const Matrix& a, double rel_tol) {
    const Index n = a.rows();
    const double scale = a.cwiseAbs().rowwise().sum().maxCoeff();

    // Sign symmetry: a_ij > 0 iff a_ji > 0.
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if ((a(i, j) > 0.0) != (a(j, i) > 0.0)) {
                std::ostringstream msg;
                msg << "sign-asymmetric pair (" << i << "," << j << "): a_ij="
                    << a(i, j) << " a_ji=" << a(j, i);
                throw ModelError(ModelError::Kind::not_symmetrizable, msg.str(), i, j);
            }
        }
    }

    // Propagate d along a spanning tree of the undirected support graph.
    Vector d = Vector::Zero(n);
    d[0] = 1.0;
    std::vector<bool> seen(static_cast<size_t>(n), false);
    seen[0] = true;
    std::vector<Index> stack{0};
    while (!stack.empty()) {
        Index i = stack.back();
        stack.pop_back();
        for (Index j = 0; j < n; ++j) {
            if (a(i, j) > 0.0 && !seen[static_cast<size_t>(j)]) {
                d[j] = d[i] * a(i, j) / a(j, i);
                seen[static_cast<size_t>(j)] = true;
                stack.push_back(j);
            }
        }
    }
    // Irreducible input means the support graph is connected, so the tree
    // reaches every node. Guard anyway.
    for (Index i = 0; i < n; ++i) {
        if (!seen[static_cast<size_t>(i)]) {
            throw ModelError(ModelError::Kind::not_symmetrizable,
                             "support graph is disconnected", i, -1);
        }
    }

    // Verify every edge; non-tree edges encode the cycle-product condition.
    double worst = 0.0;
    Index wi = -1, wj = -1;
    Matrix da = d.asDiagonal() * a;
    Matrix res = (da - da.transpose()).cwiseAbs();
    double residual = res.rowwise().sum().maxCoeff() / scale;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (res(i, j) > worst) {
                worst = res(i, j);
                wi = i;
                wj = j;
            }
        }
    }
    if (residual > rel_tol) {
        std::ostringstream msg;
        msg << "cycle-product condition fails at edge (" << wi << "," << wj
            << "): |d_i a_ij - d_j a_ji| = " << worst << ", relative residual "
            << residual << " > " << rel_tol;
        throw ModelError(ModelError::Kind::not_symmetrizable, msg.str(), wi, wj);
    }
    return {d, residual};
}

WeightedNetwork load_network(const Matrix& a, const LoadOptions& opts) {
    const Index n = a.rows();
    if (n != a.cols()) {
        throw ModelError(ModelError::Kind::invalid_shape, "matrix is not square");
    }
    if (n < 2) {
        throw ModelError(ModelError::Kind::invalid_shape, "need at least 2 nodes");
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (a(i, j) < 0.0) {
                std::ostringstream msg;
                msg << "negative weight a(" << i << "," << j << ") = " << a(i, j);
                throw ModelError(ModelError::Kind::negative_entry, msg.str(), i, j);
            }
        }
        if (a(i, i) != 0.0) {
            std::ostringstream msg;
            msg << "nonzero diagonal a(" << i << "," << i << ") = " << a(i, i);
            throw ModelError(ModelError::Kind::nonzero_diagonal, msg.str(), i, i);
        }
    }
    if (!check_irreducible(a)) {
        throw ModelError(ModelError::Kind::not_irreducible,
                         "support digraph is not strongly connected");
    }

    WeightedNetwork net;
    net.n = n;
    net.adjacency = a;
    net.inertia = a.rowwise().sum();
    net.norm_adjacency = net.inertia.cwiseInverse().asDiagonal() * a;

    try {
        auto sym = find_symmetrizer(a, opts.sym_tol);
        net.symmetrizer = std::move(sym.d);
        net.symmetrizer_residual = sym.residual;
    } catch (const ModelError&) {
        if (opts.require_symmetrizable) throw;
        net.symmetrizer.reset();
        net.symmetrizer_residual = std::numeric_limits<double>::infinity();
    }
    return net;
}

LaplacianSet::LaplacianSet(const WeightedNetwork& net)
    : normalized(Matrix::Identity(net.n, net.n) - net.norm_adjacency),
      standard(Matrix(net.inertia.asDiagonal()) - net.adjacency),
      adjacency_(net.adjacency) {}

LaplacianSet laplacians(const WeightedNetwork& net) { return LaplacianSet(net); }

} // namespace multiequ
