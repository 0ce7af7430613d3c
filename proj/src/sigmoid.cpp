#include <multiequ/sigmoid.hpp>

#include <algorithm>
#include <cmath>

namespace multiequ {

namespace {

// Boltzmann function (1 - e^{-2x}) / (1 + e^{-2x}); algebraically identical
// to tanh(x), so the closed forms below are the tanh derivative chain.
inline double boltzmann_value(double x) { return std::tanh(x); }
inline double boltzmann_d1(double x) {
    const double t = std::tanh(x);
    return 1.0 - t * t;
}
inline double boltzmann_d2(double x) {
    const double t = std::tanh(x);
    return -2.0 * t * (1.0 - t * t);
}
inline double boltzmann_d3(double x) {
    const double t = std::tanh(x);
    const double s = 1.0 - t * t;
    return s * (6.0 * t * t - 2.0);
}

// x / (1 + |x|). C^1 only: the second derivative jumps across the origin,
// where the odd-symmetric value 0 is used; the third derivative takes its
// two-sided limit 6.
inline double mm_value(double x) { return x / (1.0 + std::abs(x)); }
inline double mm_d1(double x) {
    const double s = 1.0 + std::abs(x);
    return 1.0 / (s * s);
}
inline double mm_d2(double x) {
    if (x == 0.0) return 0.0;
    const double s = 1.0 + std::abs(x);
    const double sign = x > 0.0 ? 1.0 : -1.0;
    return -2.0 * sign / (s * s * s);
}
inline double mm_d3(double x) {
    const double s = 1.0 + std::abs(x);
    return 6.0 / (s * s * s * s);
}

// tanh(x + x^3): odd, strictly monotone, saturated, unit slope at 0, but
// convex on an interval of x > 0, so it fails the sigmoidal assumption and
// has worst-case gain mu > 1.
inline double cubic_value(double x) { return std::tanh(x + x * x * x); }
inline double cubic_d1(double x) {
    const double u1 = 1.0 + 3.0 * x * x;
    const double t = std::tanh(x + x * x * x);
    return (1.0 - t * t) * u1;
}
inline double cubic_d2(double x) {
    const double u1 = 1.0 + 3.0 * x * x;
    const double u2 = 6.0 * x;
    const double t = std::tanh(x + x * x * x);
    const double s = 1.0 - t * t;
    return s * (u2 - 2.0 * t * u1 * u1);
}
inline double cubic_d3(double x) {
    const double u1 = 1.0 + 3.0 * x * x;
    const double u2 = 6.0 * x;
    const double t = std::tanh(x + x * x * x);
    const double s = 1.0 - t * t;
    return s * ((4.0 * t * t - 2.0 * s) * u1 * u1 * u1 - 6.0 * t * u1 * u2 + 6.0);
}

} // namespace

double ScalarSigmoid::value(double x) const {
    switch (kind) {
    case SigmoidKind::boltzmann: return boltzmann_value(x);
    case SigmoidKind::michaelis_menten: return mm_value(x);
    case SigmoidKind::cubic_tanh: return cubic_value(x);
    case SigmoidKind::custom: return f0(x);
    }
    return 0.0;
}

double ScalarSigmoid::d1(double x) const {
    switch (kind) {
    case SigmoidKind::boltzmann: return boltzmann_d1(x);
    case SigmoidKind::michaelis_menten: return mm_d1(x);
    case SigmoidKind::cubic_tanh: return cubic_d1(x);
    case SigmoidKind::custom: return f1(x);
    }
    return 0.0;
}

double ScalarSigmoid::d2(double x) const {
    switch (kind) {
    case SigmoidKind::boltzmann: return boltzmann_d2(x);
    case SigmoidKind::michaelis_menten: return mm_d2(x);
    case SigmoidKind::cubic_tanh: return cubic_d2(x);
    case SigmoidKind::custom: return f2(x);
    }
    return 0.0;
}

double ScalarSigmoid::d3(double x) const {
    switch (kind) {
    case SigmoidKind::boltzmann: return boltzmann_d3(x);
    case SigmoidKind::michaelis_menten: return mm_d3(x);
    case SigmoidKind::cubic_tanh: return cubic_d3(x);
    case SigmoidKind::custom: return f3(x);
    }
    return 0.0;
}

ScalarSigmoid make_builtin(SigmoidKind kind) {
    ScalarSigmoid f;
    f.kind = kind;
    switch (kind) {
    case SigmoidKind::boltzmann:
    case SigmoidKind::michaelis_menten:
        f.sigmoidal = true;
        break;
    case SigmoidKind::cubic_tanh:
        f.sigmoidal = false;
        break;
    case SigmoidKind::custom:
        throw UnknownKind("custom is not a built-in kind");
    }
    return f;
}

SigmoidKind parse_kind(const std::string& name) {
    if (name == "boltzmann" || name == "tanh") return SigmoidKind::boltzmann;
    if (name == "mm" || name == "michaelis-menten") return SigmoidKind::michaelis_menten;
    if (name == "cubic-tanh") return SigmoidKind::cubic_tanh;
    throw UnknownKind("unknown saturation function '" + name + "'");
}

const char* kind_name(SigmoidKind kind) {
    switch (kind) {
    case SigmoidKind::boltzmann: return "boltzmann";
    case SigmoidKind::michaelis_menten: return "mm";
    case SigmoidKind::cubic_tanh: return "cubic-tanh";
    case SigmoidKind::custom: return "custom";
    }
    return "?";
}

double compute_mu(const ScalarSigmoid& f) {
    const auto ratio = [&f](double x) { return f.value(x) / x; };

    // Limit candidate at x -> 0 (the ratio tends to the unit slope).
    double best_x = 0.0;
    double best = 1.0;

    constexpr int grid_points = 10000;
    constexpr double hi = 50.0;
    double prev_x = 0.0;
    for (int k = 1; k <= grid_points; ++k) {
        const double x = hi * static_cast<double>(k) / grid_points;
        const double r = ratio(x);
        if (r > best) {
            best = r;
            best_x = x;
        }
        prev_x = x;
    }
    (void)prev_x;
    if (best_x == 0.0) return 1.0;

    // Golden-section refinement on the bracketing grid cells.
    const double step = hi / grid_points;
    double a = std::max(best_x - step, step * 1e-6);
    double b = best_x + step;
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = ratio(c), fd = ratio(d);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ratio(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ratio(d);
        }
    }
    return std::max(best, std::max(fc, fd));
}

SigmoidFamily::SigmoidFamily(std::vector<ScalarSigmoid> nodes) : nodes_(std::move(nodes)) {
    sigmoidal_ = true;
    mu_ = 1.0;
    for (const auto& f : nodes_) {
        sigmoidal_ = sigmoidal_ && f.sigmoidal;
        mu_ = std::max(mu_, compute_mu(f));
    }
}

SigmoidFamily SigmoidFamily::builtin(SigmoidKind kind) {
    return SigmoidFamily({make_builtin(kind)});
}

SigmoidFamily SigmoidFamily::builtin(const std::string& name) {
    return builtin(parse_kind(name));
}

SigmoidFamily SigmoidFamily::custom(ScalarSigmoid f) {
    f.kind = SigmoidKind::custom;
    return SigmoidFamily({std::move(f)});
}

SigmoidFamily SigmoidFamily::from_nodes(std::vector<ScalarSigmoid> nodes) {
    if (nodes.empty()) throw UnknownKind("empty node list");
    return SigmoidFamily(std::move(nodes));
}

Vector SigmoidFamily::value(const Vector& x) const {
    Vector out(x.size());
    for (Index i = 0; i < x.size(); ++i) out[i] = value(i, x[i]);
    return out;
}

Vector SigmoidFamily::d1(const Vector& x) const {
    Vector out(x.size());
    for (Index i = 0; i < x.size(); ++i) out[i] = d1(i, x[i]);
    return out;
}

namespace {

std::vector<double> assumption_grid() {
    std::vector<double> grid;
    grid.reserve(1203);
    // Symmetric coarse grid over the saturation range.
    for (int k = 0; k <= 1000; ++k) grid.push_back(-20.0 + 40.0 * k / 1000.0);
    // Dense points near the origin where the slope and symmetry matter most.
    for (int k = 1; k <= 100; ++k) {
        const double x = 0.1 * k / 100.0;
        grid.push_back(x);
        grid.push_back(-x);
    }
    return grid;
}

} // namespace

AssumptionReport verify_assumptions(const SigmoidFamily& family, unsigned which) {
    AssumptionReport report;
    report.checked = which & kAssumptionAll;
    report.passed = report.checked;
    const auto grid = assumption_grid();

    const auto fail = [&report](unsigned a, Index node, double x, std::string detail) {
        report.passed &= ~a;
        report.violations.push_back({a, node, x, std::move(detail)});
    };

    for (Index i = 0; i < family.node_count(); ++i) {
        const auto& f = family.node(i);
        if (which & kAssumptionOdd) {
            if (std::abs(f.value(0.0)) > 1e-12) fail(kAssumptionOdd, i, 0.0, "psi(0) != 0");
            for (double x : grid) {
                if (x <= 0.0) continue;
                const double err = std::abs(f.value(-x) + f.value(x));
                if (err > 1e-12 * std::max(1.0, std::abs(f.value(x)))) {
                    fail(kAssumptionOdd, i, x, "psi(-x) != -psi(x)");
                    break;
                }
            }
        }
        if (which & kAssumptionMonotone) {
            if (std::abs(f.d1(0.0) - 1.0) > 1e-12) {
                fail(kAssumptionMonotone, i, 0.0, "slope at origin is not 1");
            }
            for (double x : grid) {
                const double slope = f.d1(x);
                if (slope < 0.0) {
                    fail(kAssumptionMonotone, i, x, "negative slope");
                    break;
                }
                // A slope that underflows to zero on the saturated plateau is
                // fine; a zero slope in the interior is a real violation.
                if (slope == 0.0 && std::abs(f.value(x)) < 1.0 - 1e-9) {
                    fail(kAssumptionMonotone, i, x, "zero slope before saturation");
                    break;
                }
            }
        }
        if (which & kAssumptionSaturated) {
            // In doubles the plateau rounds to exactly +-1; only exceeding it
            // counts against saturation.
            for (double x : grid) {
                if (std::abs(f.value(x)) > 1.0) {
                    fail(kAssumptionSaturated, i, x, "|psi| exceeds 1");
                    break;
                }
            }
            // Far-field probe; rationally saturating functions approach the
            // limit slowly, so the plateau is sampled well beyond the grid.
            const double far = 1e9;
            if (1.0 - f.value(far) > 1e-8 || 1.0 + f.value(-far) > 1e-8) {
                fail(kAssumptionSaturated, i, far, "limit at infinity is not +-1");
            }
        }
        if (which & kAssumptionSigmoidal) {
            for (double x : grid) {
                if (x <= 0.0) continue;
                const double curvature = f.d2(x);
                if (curvature > 0.0 ||
                    (curvature == 0.0 && std::abs(f.value(x)) < 1.0 - 1e-9)) {
                    fail(kAssumptionSigmoidal, i, x, "not concave for x > 0");
                    break;
                }
            }
            for (double x : grid) {
                if (x != 0.0 && std::abs(f.value(x)) >= std::abs(x)) {
                    fail(kAssumptionSigmoidal, i, x, "|psi(x)| >= |x|");
                    break;
                }
            }
        }
    }
    return report;
}

} // namespace multiequ
