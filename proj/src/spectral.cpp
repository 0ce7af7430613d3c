#include <multiequ/spectral.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace multiequ {

EigenPairs real_spectrum(const Matrix& m, const Vector& symmetrizer) {
    const Index n = m.rows();
    if (symmetrizer.size() != n || (symmetrizer.array() <= 0.0).any()) {
        throw ModelError(ModelError::Kind::not_symmetrizable,
                         "missing or nonpositive symmetrizer");
    }
    const Vector root = symmetrizer.cwiseSqrt();
    const Vector inv_root = root.cwiseInverse();

    Matrix sym = root.asDiagonal() * m * inv_root.asDiagonal();
    sym = 0.5 * (sym + sym.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symmetric eigensolver failed to converge");
    }

    EigenPairs out;
    out.values = solver.eigenvalues();  // already nondecreasing
    out.right.resize(n, n);
    out.left.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        Vector q = solver.eigenvectors().col(k);
        Vector v = inv_root.asDiagonal() * q;
        Vector w = root.asDiagonal() * q;  // w^T v = q^T q = 1
        const double norm = v.norm();
        Index imax;
        v.cwiseAbs().maxCoeff(&imax);
        const double sign = v[imax] >= 0.0 ? 1.0 : -1.0;
        out.right.col(k) = (sign / norm) * v;
        out.left.col(k) = (sign * norm) * w;
    }
    return out;
}

std::vector<std::complex<double>> general_spectrum(const Matrix& m) {
    Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("general eigensolver failed to converge");
    }
    std::vector<std::complex<double>> eigs(static_cast<size_t>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i) eigs[static_cast<size_t>(i)] = solver.eigenvalues()[i];
    std::sort(eigs.begin(), eigs.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return eigs;
}

namespace {

const Vector& require_symmetrizer(const WeightedNetwork& net) {
    if (!net.symmetrizer) {
        throw ModelError(ModelError::Kind::not_symmetrizable,
                         "network has no symmetrizer");
    }
    return *net.symmetrizer;
}

// diag(d)A symmetric implies diag(d * inertia) * (Delta^{-1} A) symmetric,
// so the normalized adjacency shares a symmetrizer up to the inertia weights.
Vector norm_adjacency_symmetrizer(const WeightedNetwork& net) {
    return require_symmetrizer(net).cwiseProduct(net.inertia);
}

} // namespace

SpectralSummary spectral_summary(const WeightedNetwork& net) {
    const Index n = net.n;
    SpectralSummary s;
    s.adjacency_eigs = real_spectrum(net.adjacency, require_symmetrizer(net)).values;
    s.norm_adjacency_eigs =
        real_spectrum(net.norm_adjacency, norm_adjacency_symmetrizer(net)).values;
    s.spectral_radius = s.adjacency_eigs[n - 1];
    s.adjacency_second = s.adjacency_eigs[n - 2];
    s.norm_adjacency_second = s.norm_adjacency_eigs[n - 2];
    s.critical_effort = s.norm_adjacency_second > 0.0
                            ? 1.0 / s.norm_adjacency_second
                            : std::numeric_limits<double>::infinity();
    s.algebraic_connectivity = 1.0 - s.norm_adjacency_second;

    constexpr double gap_tol = 1e-8;
    const double top_gap = s.norm_adjacency_eigs[n - 1] - s.norm_adjacency_eigs[n - 2];
    const double lower_gap =
        n >= 3 ? s.norm_adjacency_eigs[n - 2] - s.norm_adjacency_eigs[n - 3]
               : std::numeric_limits<double>::infinity();
    s.second_simple = top_gap > gap_tol && lower_gap > gap_tol;
    return s;
}

FiedlerPair fiedler_pair(const WeightedNetwork& net) {
    const auto summary = spectral_summary(net);
    if (!summary.second_simple) {
        throw NotSimple("second-largest eigenvalue of the normalized adjacency is not simple");
    }
    auto pairs = real_spectrum(net.norm_adjacency, norm_adjacency_symmetrizer(net));
    const Index k = net.n - 2;
    return {pairs.right.col(k), pairs.left.col(k), pairs.values[k]};
}

std::vector<GersgorinDisk> gersgorin_disks(const Matrix& m) {
    const Index n = m.rows();
    std::vector<GersgorinDisk> disks;
    disks.reserve(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) {
        double radius = 0.0;
        for (Index j = 0; j < n; ++j) {
            if (j != i) radius += std::abs(m(i, j));
        }
        disks.push_back({m(i, i), radius, i});
    }
    return disks;
}

double disk_union_distance(const std::vector<GersgorinDisk>& disks, std::complex<double> z) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& d : disks) {
        const double dist = std::abs(z - std::complex<double>(d.center, 0.0)) - d.radius;
        best = std::min(best, std::max(dist, 0.0));
    }
    return best;
}

} // namespace multiequ
