#include <multiequ/report_io.hpp>

#include <iomanip>
#include <limits>
#include <ostream>

namespace multiequ {

namespace {

nlohmann::json vector_to_json(const Vector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

std::ostream& full_precision(std::ostream& out) {
    out << std::setprecision(17);
    return out;
}

} // namespace

nlohmann::json record_to_json(const EquilibriumRecord& record) {
    nlohmann::json j;
    j["x"] = vector_to_json(record.x);
    j["residual"] = record.residual;
    j["orthant"] = record.orthant_string();
    j["degenerate"] = record.degenerate_orthant;
    j["stability"] = stability_name(record.stability);
    j["sufficient_stable"] = record.sufficient_stable;
    j["sufficient_unstable"] = record.sufficient_unstable;
    j["jac_eigs_real"] = vector_to_json(record.jac_real_parts);
    if (record.norm_ratio) {
        j["norm_ratio"] = *record.norm_ratio;
    } else {
        j["norm_ratio"] = nullptr;
    }
    return j;
}

nlohmann::json census_to_json(const CensusResult& census) {
    nlohmann::json j;
    j["equilibria"] = nlohmann::json::array();
    for (const auto& r : census.records) j["equilibria"].push_back(record_to_json(r));
    j["converged_starts"] = census.converged_starts;
    j["failed_starts"] = census.failed_starts;
    j["positive_level"] = census.positive_level;
    j["positive_analytic"] = census.positive_analytic;
    return j;
}

nlohmann::json network_to_json(const WeightedNetwork& net) {
    nlohmann::json j;
    j["n"] = net.n;
    j["delta"] = vector_to_json(net.inertia);
    j["delta_min"] = net.inertia_min();
    j["delta_max"] = net.inertia_max();
    j["symmetrizable"] = net.symmetrizer.has_value();
    if (net.symmetrizer) {
        j["symmetrizer"] = vector_to_json(*net.symmetrizer);
        j["symmetrizer_residual"] = net.symmetrizer_residual;
    }
    return j;
}

nlohmann::json summary_to_json(const SpectralSummary& summary) {
    nlohmann::json j;
    j["eigs_A"] = vector_to_json(summary.adjacency_eigs);
    j["eigs_H1"] = vector_to_json(summary.norm_adjacency_eigs);
    j["rho_A"] = summary.spectral_radius;
    j["lambda2nd_A"] = summary.adjacency_second;
    j["lambda2nd_H1"] = summary.norm_adjacency_second;
    if (std::isfinite(summary.critical_effort)) {
        j["pi2"] = summary.critical_effort;
    } else {
        j["pi2"] = "inf";
    }
    j["alg_conn"] = summary.algebraic_connectivity;
    j["lambda2nd_simple"] = summary.second_simple;
    return j;
}

nlohmann::json ensemble_to_json(const std::vector<EnsembleEntry>& entries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json j;
        j["start"] = vector_to_json(e.start);
        j["terminal"] = vector_to_json(e.terminal);
        j["attractor"] = e.attractor;
        j["converged"] = e.reason == TerminalReason::converged;
        arr.push_back(j);
    }
    return arr;
}

void write_census_csv(std::ostream& out, const CensusResult& census) {
    full_precision(out);
    out << "index,orthant,degenerate,stability,sufficient_stable,sufficient_unstable,"
           "residual,norm_ratio,max_re";
    const Index n = census.records.empty() ? 0 : census.records.front().x.size();
    for (Index i = 1; i <= n; ++i) out << ",x_" << i;
    out << '\n';
    for (size_t k = 0; k < census.records.size(); ++k) {
        const auto& r = census.records[k];
        out << k << ',' << r.orthant_string() << ',' << (r.degenerate_orthant ? 1 : 0) << ','
            << stability_name(r.stability) << ',' << (r.sufficient_stable ? 1 : 0) << ','
            << (r.sufficient_unstable ? 1 : 0) << ',' << r.residual << ',';
        if (r.norm_ratio) out << *r.norm_ratio;
        out << ',' << r.max_real_part();
        for (Index i = 0; i < r.x.size(); ++i) out << ',' << r.x[i];
        out << '\n';
    }
}

void write_disks_csv(std::ostream& out, const std::vector<GersgorinDisk>& disks) {
    full_precision(out);
    out << "row_index,center,radius\n";
    for (const auto& d : disks) out << d.row << ',' << d.center << ',' << d.radius << '\n';
}

void write_eigs_csv(std::ostream& out, const std::vector<std::complex<double>>& eigs) {
    full_precision(out);
    out << "re,im\n";
    for (const auto& z : eigs) out << z.real() << ',' << z.imag() << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    full_precision(out);
    out << "t";
    const Index n = traj.states.empty() ? 0 : traj.states.front().size();
    for (Index i = 1; i <= n; ++i) out << ",x_" << i;
    out << '\n';
    for (size_t k = 0; k < traj.times.size(); ++k) {
        out << traj.times[k];
        for (Index i = 0; i < n; ++i) out << ',' << traj.states[k][i];
        out << '\n';
    }
}

void write_eig_fan_csv(std::ostream& out, const std::vector<double>& efforts,
                       const std::vector<Vector>& eigs) {
    full_precision(out);
    out << "pi";
    const Index n = eigs.empty() ? 0 : eigs.front().size();
    for (Index i = 1; i <= n; ++i) out << ",eig_" << i;
    out << '\n';
    for (size_t k = 0; k < efforts.size(); ++k) {
        out << efforts[k];
        for (Index i = 0; i < n; ++i) out << ',' << eigs[k][i];
        out << '\n';
    }
}

void write_counts_csv(std::ostream& out, const SweepResult& sweep) {
    full_precision(out);
    out << "pi,n_equilibria,n_orthants,n_stable\n";
    for (const auto& p : sweep.per_effort) {
        out << p.effort << ',' << p.equilibrium_count << ',' << p.orthant_count << ','
            << p.stable_count << '\n';
    }
}

void write_ratios_csv(std::ostream& out, const SweepResult& sweep) {
    full_precision(out);
    out << "pi,norm_ratio,stable\n";
    for (size_t k = 0; k < sweep.censuses.size(); ++k) {
        for (const auto& r : sweep.censuses[k].records) {
            if (!r.norm_ratio) continue;
            out << sweep.efforts[k] << ',' << *r.norm_ratio << ','
                << (r.stability == Stability::stable ? 1 : 0) << '\n';
        }
    }
}

void write_polar_csv(std::ostream& out, const std::vector<Example2Report::PolarPoint>& points) {
    full_precision(out);
    out << "pi,norm_ratio,positive_jac_eigs,negative_fraction,stable\n";
    for (const auto& p : points) {
        out << p.effort << ',' << p.norm_ratio << ',' << p.positive_jac_eigs << ','
            << p.negative_fraction << ',' << (p.stable ? 1 : 0) << '\n';
    }
}

} // namespace multiequ
