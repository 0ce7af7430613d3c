// Serialization of analysis results: JSON summaries and plot-ready CSV.
#pragma once

#include <multiequ/sweep.hpp>

#include <nlohmann/json.hpp>

#include <iosfwd>

namespace multiequ {

nlohmann::json record_to_json(const EquilibriumRecord& record);
nlohmann::json census_to_json(const CensusResult& census);
nlohmann::json network_to_json(const WeightedNetwork& net);
nlohmann::json summary_to_json(const SpectralSummary& summary);
nlohmann::json ensemble_to_json(const std::vector<EnsembleEntry>& entries);

// index, orthant, degenerate, stability, sufficient flags, residual,
// norm_ratio, max_re, x_1..x_n
void write_census_csv(std::ostream& out, const CensusResult& census);

// row_index, center, radius
void write_disks_csv(std::ostream& out, const std::vector<GersgorinDisk>& disks);

// re, im
void write_eigs_csv(std::ostream& out, const std::vector<std::complex<double>>& eigs);

// t, x_1..x_n
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

// pi, eig_1..eig_n
void write_eig_fan_csv(std::ostream& out, const std::vector<double>& efforts,
                       const std::vector<Vector>& eigs);

// pi, n_equilibria, n_orthants, n_stable
void write_counts_csv(std::ostream& out, const SweepResult& sweep);

// pi, norm_ratio, stable
void write_ratios_csv(std::ostream& out, const SweepResult& sweep);

// pi, norm_ratio, positive_jac_eigs, negative_fraction, stable
void write_polar_csv(std::ostream& out, const std::vector<Example2Report::PolarPoint>& points);

} // namespace multiequ
