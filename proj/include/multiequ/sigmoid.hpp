// Per-node saturation functions with derivatives up to third order,
// assumption verification, and the worst-case gain coefficient
// mu = max_x psi(x)/x.
#pragma once

#include <multiequ/types.hpp>

#include <functional>
#include <string>
#include <vector>

namespace multiequ {

enum class SigmoidKind { boltzmann, michaelis_menten, cubic_tanh, custom };

class UnknownKind : public std::runtime_error {
public:
    explicit UnknownKind(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// One node's saturation function. Built-in kinds evaluate closed forms;
/// custom supplies four callables (value and three derivatives).
struct ScalarSigmoid {
    SigmoidKind kind = SigmoidKind::custom;
    std::function<double(double)> f0, f1, f2, f3;
    bool sigmoidal = true;  // odd, monotone, saturated AND concave on x > 0

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    double d3(double x) const;
};

ScalarSigmoid make_builtin(SigmoidKind kind);
SigmoidKind parse_kind(const std::string& name);  // boltzmann | mm | cubic-tanh
const char* kind_name(SigmoidKind kind);

/// Largest value of psi(x)/x over x > 0 for a single function. Coarse grid
/// on (0, 50] followed by golden-section refinement; the x -> 0 limit
/// psi'(0) = 1 enters as a candidate, so sigmoidal functions give exactly 1.
double compute_mu(const ScalarSigmoid& f);

/// The family used by a system: one shared function or one per node.
class SigmoidFamily {
public:
    static SigmoidFamily builtin(SigmoidKind kind);
    static SigmoidFamily builtin(const std::string& name);
    static SigmoidFamily custom(ScalarSigmoid f);
    static SigmoidFamily from_nodes(std::vector<ScalarSigmoid> nodes);

    bool identical() const { return nodes_.size() == 1; }
    bool sigmoidal() const { return sigmoidal_; }
    double mu() const { return mu_; }
    SigmoidKind kind() const { return nodes_.front().kind; }
    Index node_count() const { return static_cast<Index>(nodes_.size()); }
    const ScalarSigmoid& node(Index i) const {
        return nodes_[identical() ? 0 : static_cast<size_t>(i)];
    }

    double value(Index i, double x) const { return node(i).value(x); }
    double d1(Index i, double x) const { return node(i).d1(x); }
    double d2(Index i, double x) const { return node(i).d2(x); }
    double d3(Index i, double x) const { return node(i).d3(x); }

    Vector value(const Vector& x) const;
    Vector d1(const Vector& x) const;

private:
    explicit SigmoidFamily(std::vector<ScalarSigmoid> nodes);
    std::vector<ScalarSigmoid> nodes_;
    bool sigmoidal_ = true;
    double mu_ = 1.0;
};

/// Grid-based assumption check: odd (A1), monotone with unit slope at the
/// origin (A2), saturated at +-1 (A3), concave for x > 0 (A4). A sanity
/// gate over sampled points, not a proof.
enum : unsigned {
    kAssumptionOdd = 1u << 0,
    kAssumptionMonotone = 1u << 1,
    kAssumptionSaturated = 1u << 2,
    kAssumptionSigmoidal = 1u << 3,
    kAssumptionAll = 0xF,
};

struct AssumptionViolation {
    unsigned assumption;
    Index node;
    double x;
    std::string detail;
};

struct AssumptionReport {
    unsigned checked = 0;
    unsigned passed = 0;  // subset of checked
    std::vector<AssumptionViolation> violations;

    bool pass(unsigned which) const { return (checked & which) && (passed & which); }
    bool all_pass() const { return passed == checked; }
};

AssumptionReport verify_assumptions(const SigmoidFamily& family, unsigned which = kAssumptionAll);

} // namespace multiequ
