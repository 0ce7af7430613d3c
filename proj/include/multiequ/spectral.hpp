// Eigenstructure of the network matrices: real spectra through the
// symmetrizer transform, bifurcation thresholds, Fiedler pair, and
// Gersgorin disk geometry.
#pragma once

#include <multiequ/network.hpp>

#include <complex>
#include <vector>

namespace multiequ {

/// Thrown when an operation needs a simple second-largest eigenvalue and the
/// gap test fails.
class NotSimple : public std::runtime_error {
public:
    explicit NotSimple(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// Real eigendecomposition of a symmetrizable matrix.
/// values sorted nondecreasing; right/left eigenvectors in matching columns.
/// Right columns have unit 2-norm and the largest-magnitude entry positive;
/// left columns are scaled so left_i^T right_i = 1.
struct EigenPairs {
    Vector values;
    Matrix right;
    Matrix left;
};

/// Eigendecomposition of a matrix m with known positive symmetrizer d
/// (diag(d)*m symmetric). Conjugating by diag(d)^{1/2} turns m into a
/// symmetric matrix with the same spectrum; a symmetric solver then
/// guarantees a real result. The residual asymmetry of the transform
/// (nonzero when the input is only symmetrizable up to rounding) is
/// averaged away, which perturbs eigenvalues at second order only.
EigenPairs real_spectrum(const Matrix& m, const Vector& symmetrizer);

/// Spectrum via the general (complex-capable) solver. Independent of the
/// symmetrizer route; used for cross-checks and disk containment.
std::vector<std::complex<double>> general_spectrum(const Matrix& m);

struct SpectralSummary {
    Vector adjacency_eigs;          // eigenvalues of the adjacency, nondecreasing
    Vector norm_adjacency_eigs;     // eigenvalues of the row-normalized adjacency
    double spectral_radius = 0;     // top adjacency eigenvalue
    double adjacency_second = 0;    // second-largest adjacency eigenvalue
    double norm_adjacency_second = 0;
    double critical_effort = 0;     // 1/norm_adjacency_second if positive, else +inf
    double algebraic_connectivity = 0;  // 1 - norm_adjacency_second
    bool second_simple = false;     // gap to both neighbors > 1e-8
};

SpectralSummary spectral_summary(const WeightedNetwork& net);

/// Right and left eigenvectors for the second-largest eigenvalue of the
/// row-normalized adjacency, normalized so left^T right = 1. Requires the
/// eigenvalue to be simple.
struct FiedlerPair {
    Vector right;
    Vector left;
    double eigenvalue;
};

FiedlerPair fiedler_pair(const WeightedNetwork& net);

struct GersgorinDisk {
    double center;
    double radius;
    Index row;
};

std::vector<GersgorinDisk> gersgorin_disks(const Matrix& m);

/// Distance from z to the union of disks (0 when inside some disk).
double disk_union_distance(const std::vector<GersgorinDisk>& disks, std::complex<double> z);

} // namespace multiequ
