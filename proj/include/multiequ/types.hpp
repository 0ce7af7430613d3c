// Common aliases and error types shared by all modules.
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace multiequ {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Input data violates the network model (nonnegative, hollow,
/// irreducible, symmetrizable). Carries the offending indices when known.
class ModelError : public std::runtime_error {
public:
    enum class Kind {
        negative_entry,
        nonzero_diagonal,
        not_irreducible,
        not_symmetrizable,
        invalid_shape,
    };

    ModelError(Kind kind, std::string msg, Index i = -1, Index j = -1)
        : std::runtime_error(std::move(msg)), kind(kind), row(i), col(j) {}

    Kind kind;
    Index row;
    Index col;

    const char* kind_name() const {
        switch (kind) {
        case Kind::negative_entry: return "NegativeEntry";
        case Kind::nonzero_diagonal: return "NonzeroDiagonal";
        case Kind::not_irreducible: return "NotIrreducible";
        case Kind::not_symmetrizable: return "NotSymmetrizable";
        case Kind::invalid_shape: return "InvalidShape";
        }
        return "ModelError";
    }
};

/// Numerical procedure failed (solver breakdown, infeasible sampling, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

} // namespace multiequ
