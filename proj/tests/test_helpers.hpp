// Shared fixtures and independent oracles for the test suite.
#pragma once

#include <multiequ/network.hpp>
#include <multiequ/rng.hpp>

#include <cmath>
#include <functional>
#include <vector>

namespace multiequ::testing {

// The 6-node study matrix (identical to fixtures/example1_n6.csv).
inline Matrix example1_matrix() {
    Matrix a(6, 6);
    a << 0, 0.1477, 0, 0.1698, 0, 0.0135,
        0.4242, 0, 0.2626, 0.3621, 0, 0,
        0, 0.1889, 0, 0, 0.2502, 0.4158,
        0.4036, 0.2997, 0, 0, 0, 0,
        0, 0, 0.2427, 0, 0, 0.2513,
        0.0301, 0, 0.4474, 0, 0.2787, 0;
    return a;
}

inline Matrix two_cycle() {
    Matrix a(2, 2);
    a << 0, 1, 1, 0;
    return a;
}

inline Matrix complete_graph(Index n) {
    Matrix a = Matrix::Ones(n, n);
    a.diagonal().setZero();
    return a;
}

// Oracle: pairwise reachability by explicit breadth-first search, written
// against adjacency lists rather than the matrix walk used by the library.
inline bool strongly_connected_bfs(const Matrix& a) {
    const Index n = a.rows();
    std::vector<std::vector<Index>> out_edges(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (a(i, j) > 0.0) out_edges[static_cast<size_t>(i)].push_back(j);

    for (Index s = 0; s < n; ++s) {
        std::vector<bool> seen(static_cast<size_t>(n), false);
        std::vector<Index> queue{s};
        seen[static_cast<size_t>(s)] = true;
        for (size_t head = 0; head < queue.size(); ++head) {
            for (Index j : out_edges[static_cast<size_t>(queue[head])]) {
                if (!seen[static_cast<size_t>(j)]) {
                    seen[static_cast<size_t>(j)] = true;
                    queue.push_back(j);
                }
            }
        }
        for (bool b : seen)
            if (!b) return false;
    }
    return true;
}

// Oracle: scalar bisection for the root of g on [lo, hi], assuming one sign
// change. Independent of the library's root finding.
inline double bisect_oracle(const std::function<double(double)>& g, double lo, double hi,
                            double tol = 1e-14) {
    double glo = g(lo);
    for (int iter = 0; iter < 300 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = g(mid);
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Oracle: golden-section maximization of h on [lo, hi].
inline double golden_max_oracle(const std::function<double(double)>& h, double lo, double hi,
                                double tol = 1e-12) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double hc = h(c), hd = h(d);
    while (b - a > tol) {
        if (hc > hd) {
            b = d;
            d = c;
            hd = hc;
            c = b - inv_phi * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + inv_phi * (b - a);
            hd = h(d);
        }
    }
    return std::max(hc, hd);
}

// Random symmetrizable test network: a symmetric connected weight pattern,
// optionally row-scaled by a positive diagonal (still symmetrizable).
inline Matrix random_symmetrizable(Index n, Rng& rng, bool scale_rows) {
    while (true) {
        Matrix a = Matrix::Zero(n, n);
        for (Index i = 0; i < n; ++i) {
            for (Index j = i + 1; j < n; ++j) {
                if (rng.next_double() < 0.7) {
                    const double w = rng.uniform(0.1, 1.0);
                    a(i, j) = w;
                    a(j, i) = w;
                }
            }
        }
        if (!strongly_connected_bfs(a)) continue;
        if (scale_rows) {
            for (Index i = 0; i < n; ++i) {
                const double g = rng.uniform(0.5, 2.0);
                a.row(i) *= g;
            }
        }
        return a;
    }
}

} // namespace multiequ::testing
