// Command-line front end: network analysis, equilibrium censuses, effort
// sweeps, ensemble simulation, and the two canned studies.

#include <multiequ/matrix_io.hpp>
#include <multiequ/report_io.hpp>
#include <multiequ/rng.hpp>
#include <multiequ/sweep.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace multiequ;

namespace {

// The bundled 6-node study matrix; also shipped as fixtures/example1_n6.csv.
Matrix bundled_example1() {
    Matrix a(6, 6);
    a << 0, 0.1477, 0, 0.1698, 0, 0.0135,
        0.4242, 0, 0.2626, 0.3621, 0, 0,
        0, 0.1889, 0, 0, 0.2502, 0.4158,
        0.4036, 0.2997, 0, 0, 0, 0,
        0, 0, 0.2427, 0, 0, 0.2513,
        0.0301, 0, 0.4474, 0, 0.2787, 0;
    return a;
}

struct CommonArgs {
    std::string input;
    std::string out_dir = "multiequ_out";
    std::string psi_name = "boltzmann";
    std::uint64_t seed = 1;
    int threads = 0;
    double tol_newton = 1e-10;
    double tol_sym = 5e-3;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_input) {
    auto* in = cmd->add_option("--input", args.input, "matrix file (CSV or JSON)");
    if (needs_input) in->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--psi", args.psi_name, "saturation function")
        ->check(CLI::IsMember({"boltzmann", "mm", "cubic-tanh"}));
    cmd->add_option("--seed", args.seed, "random seed")->envname("MULTIEQ_SEED");
    cmd->add_option("--threads", args.threads, "worker threads (0 = all)");
    cmd->add_option("--tol-newton", args.tol_newton, "newton residual tolerance scale");
    cmd->add_option("--tol-sym", args.tol_sym, "symmetrizability residual tolerance");
}

struct GridSpec {
    double lo = 1.0;
    double hi = 20.0;
    Index count = 50;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw CLI::ValidationError("--pi-grid", "expected lo:hi:count");
    }
    g.lo = std::stod(text.substr(0, c1));
    g.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    g.count = static_cast<Index>(std::stoll(text.substr(c2 + 1)));
    if (g.count < 1 || g.hi < g.lo) throw CLI::ValidationError("--pi-grid", "bad range");
    return g;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ParseError("cannot create output directory '" + dir + "': " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
}

void write_json_file(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

template <class WriteBody>
void write_csv_file(const std::string& path, WriteBody&& body) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    body(out);
}

std::string format_effort(double effort) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", effort);
    return buf;
}

json base_config(const std::string& command, const CommonArgs& args) {
    json cfg;
    cfg["command"] = command;
    cfg["input"] = args.input;
    cfg["out"] = args.out_dir;
    cfg["psi"] = args.psi_name;
    cfg["seed"] = args.seed;
    cfg["threads"] = args.threads;
    cfg["tol_newton"] = args.tol_newton;
    cfg["tol_sym"] = args.tol_sym;
    return cfg;
}

Matrix load_input(const CommonArgs& args) { return read_matrix_file(args.input); }

WeightedNetwork load_net(const CommonArgs& args) {
    LoadOptions opts;
    opts.sym_tol = args.tol_sym;
    return load_network(load_input(args), opts);
}

void print_census_table(const CensusResult& census, double effort) {
    double max_ratio = 0.0;
    Index stable = 0;
    std::set<std::string> orthants;
    for (const auto& r : census.records) {
        orthants.insert(r.orthant_string());
        if (r.stability == Stability::stable) ++stable;
        if (r.norm_ratio) max_ratio = std::max(max_ratio, *r.norm_ratio);
    }
    std::cout << "pi = " << effort << ": " << census.records.size() << " equilibria in "
              << orthants.size() << " orthants, " << stable << " stable, max norm ratio "
              << max_ratio << " (" << census.failed_starts << " failed starts)\n";
}

int cmd_analyze(const CommonArgs& args, double effort) {
    ensure_dir(args.out_dir);
    const WeightedNetwork net = load_net(args);
    const SpectralSummary summary = spectral_summary(net);
    const LaplacianSet lap = laplacians(net);

    json cfg = base_config("analyze", args);
    cfg["pi"] = effort;
    write_json_file(args.out_dir + "/config.json", cfg);
    write_json_file(args.out_dir + "/network.json", network_to_json(net));
    write_json_file(args.out_dir + "/summary.json", summary_to_json(summary));

    const auto emit_panel = [&args](const std::string& tag, const Matrix& m) {
        const auto disks = gersgorin_disks(m);
        const auto eigs = general_spectrum(m);
        write_csv_file(args.out_dir + "/gersgorin_" + tag + ".csv",
                       [&](std::ostream& out) { write_disks_csv(out, disks); });
        write_csv_file(args.out_dir + "/gersgorin_" + tag + "_eigs.csv",
                       [&](std::ostream& out) { write_eigs_csv(out, eigs); });
    };
    emit_panel("a", lap.normalized);
    emit_panel("c", lap.standard);
    if (effort > 0.0) {
        emit_panel("b", Matrix::Identity(net.n, net.n) - effort * net.norm_adjacency);
        emit_panel("d", lap.scaled_at(effort));
    }

    std::cout << "n = " << net.n << ", rho(A) = " << summary.spectral_radius
              << ", lambda2nd(H1) = " << summary.norm_adjacency_second
              << ", pi2 = " << summary.critical_effort
              << ", alg. connectivity = " << summary.algebraic_connectivity << "\n";
    return 0;
}

int cmd_equilibria(const CommonArgs& args, double effort, Index starts, double box_scale) {
    ensure_dir(args.out_dir);
    const WeightedNetwork net = load_net(args);
    SystemInstance sys(net, SigmoidFamily::builtin(args.psi_name), effort);

    CensusOptions copts;
    copts.starts = starts;
    copts.box_scale = box_scale;
    copts.seed = args.seed;
    copts.threads = args.threads;
    copts.newton.tol_scale = args.tol_newton;
    const CensusResult census = multistart_census(sys, copts);
    if (census.records.empty()) {
        std::cerr << "census is empty; the origin must always be found\n";
        return 3;
    }

    json cfg = base_config("equilibria", args);
    cfg["pi"] = effort;
    cfg["starts"] = starts;
    cfg["box_scale"] = box_scale;
    write_json_file(args.out_dir + "/config.json", cfg);
    write_json_file(args.out_dir + "/census.json", census_to_json(census));
    write_csv_file(args.out_dir + "/census.csv",
                   [&](std::ostream& out) { write_census_csv(out, census); });
    print_census_table(census, effort);
    return 0;
}

int cmd_sweep(const CommonArgs& args, const GridSpec& grid, Index starts, bool warm_start) {
    ensure_dir(args.out_dir);
    const WeightedNetwork net = load_net(args);
    const SigmoidFamily psi = SigmoidFamily::builtin(args.psi_name);

    SweepOptions sopts;
    sopts.starts_per_effort = starts;
    sopts.seed = args.seed;
    sopts.threads = args.threads;
    sopts.warm_start = warm_start;
    sopts.newton.tol_scale = args.tol_newton;
    const SweepResult sweep =
        pi_sweep(net, psi, linear_grid(grid.lo, grid.hi, grid.count), sopts);

    json cfg = base_config("sweep", args);
    cfg["pi_grid"] = {{"lo", grid.lo}, {"hi", grid.hi}, {"count", grid.count}};
    cfg["starts"] = starts;
    cfg["warm_start"] = warm_start;
    write_json_file(args.out_dir + "/config.json", cfg);

    json summary;
    summary["thresholds"] = {{"pi1", sweep.threshold_first}, {"pi2", sweep.threshold_second}};
    summary["spectral"] = summary_to_json(spectral_summary(net));
    write_json_file(args.out_dir + "/summary.json", summary);

    std::vector<Vector> fan;
    for (const auto& p : sweep.per_effort) fan.push_back(p.origin_linearization);
    write_csv_file(args.out_dir + "/fig1b_eigs.csv",
                   [&](std::ostream& out) { write_eig_fan_csv(out, sweep.efforts, fan); });
    write_csv_file(args.out_dir + "/counts.csv",
                   [&](std::ostream& out) { write_counts_csv(out, sweep); });
    write_csv_file(args.out_dir + "/ratios.csv",
                   [&](std::ostream& out) { write_ratios_csv(out, sweep); });
    for (size_t k = 0; k < sweep.censuses.size(); ++k) {
        write_csv_file(args.out_dir + "/census_pi_" + format_effort(sweep.efforts[k]) + ".csv",
                       [&](std::ostream& out) { write_census_csv(out, sweep.censuses[k]); });
    }
    for (const auto& p : sweep.per_effort) {
        std::cout << "pi = " << p.effort << ": " << p.equilibrium_count << " equilibria, "
                  << p.orthant_count << " orthants, " << p.stable_count << " stable\n";
    }
    return 0;
}

int cmd_simulate(const CommonArgs& args, double effort, Index starts, double box_lo,
                 double box_hi, double t_max, Index census_starts) {
    ensure_dir(args.out_dir);
    const WeightedNetwork net = load_net(args);
    SystemInstance sys(net, SigmoidFamily::builtin(args.psi_name), effort);

    // Census first: the attractor list the trajectories are matched against.
    CensusOptions copts;
    copts.starts = census_starts;
    copts.seed = args.seed;
    copts.threads = args.threads;
    copts.newton.tol_scale = args.tol_newton;
    const CensusResult census = multistart_census(sys, copts);
    std::vector<Vector> attractors;
    for (const auto& r : census.records) attractors.push_back(r.x);

    EnsembleOptions eopts;
    eopts.box_lo = box_lo;
    eopts.box_hi = box_hi;
    eopts.controls.t_max = t_max;
    eopts.threads = args.threads;
    const auto entries = ensemble_run(sys, starts, args.seed, attractors, eopts);

    json cfg = base_config("simulate", args);
    cfg["pi"] = effort;
    cfg["starts"] = starts;
    cfg["census_starts"] = census_starts;
    cfg["box"] = {{"lo", box_lo}, {"hi", box_hi}};
    cfg["t_max"] = t_max;
    write_json_file(args.out_dir + "/config.json", cfg);
    write_json_file(args.out_dir + "/census.json", census_to_json(census));
    write_json_file(args.out_dir + "/ensemble.json", ensemble_to_json(entries));

    write_csv_file(args.out_dir + "/attractors.csv", [&](std::ostream& out) {
        out << std::setprecision(17) << "id";
        for (Index i = 1; i <= net.n; ++i) out << ",x_" << i;
        out << '\n';
        for (size_t a = 0; a < attractors.size(); ++a) {
            out << a;
            for (Index i = 0; i < net.n; ++i) out << ',' << attractors[a][i];
            out << '\n';
        }
    });
    write_csv_file(args.out_dir + "/ensemble.csv", [&](std::ostream& out) {
        out << std::setprecision(17) << "run,attractor,converged";
        for (Index i = 1; i <= net.n; ++i) out << ",x0_" << i;
        for (Index i = 1; i <= net.n; ++i) out << ",xT_" << i;
        out << '\n';
        for (size_t k = 0; k < entries.size(); ++k) {
            const auto& e = entries[k];
            out << k << ',' << e.attractor << ','
                << (e.reason == TerminalReason::converged ? 1 : 0);
            for (Index i = 0; i < net.n; ++i) out << ',' << e.start[i];
            for (Index i = 0; i < net.n; ++i) out << ',' << e.terminal[i];
            out << '\n';
        }
    });

    // A few full trajectories for plotting.
    const Index keep = std::min<Index>(starts, 10);
    for (Index k = 0; k < keep; ++k) {
        Rng rng = Rng::substream(args.seed, static_cast<std::uint64_t>(k));
        Vector x0(net.n);
        for (Index i = 0; i < net.n; ++i) x0[i] = rng.uniform(box_lo, box_hi);
        IntegrationControls controls;
        controls.t_max = t_max;
        const Trajectory traj = integrate(sys, x0, controls);
        write_csv_file(args.out_dir + "/trajectory_" + std::to_string(k) + ".csv",
                       [&](std::ostream& out) { write_trajectory_csv(out, traj); });
    }

    Index unresolved = 0;
    for (const auto& e : entries) {
        if (e.attractor < 0) ++unresolved;
    }
    std::cout << entries.size() << " runs, " << unresolved << " unresolved, matched against "
              << attractors.size() << " equilibria\n";
    return 0;
}

int cmd_example1(const CommonArgs& args, double effort, Index starts) {
    ensure_dir(args.out_dir);
    const Matrix a = args.input.empty() ? bundled_example1() : load_input(args);

    Example1Options opts;
    opts.effort_main = effort;
    opts.census_starts = starts;
    opts.seed = args.seed;
    opts.threads = args.threads;
    const Example1Report report = example1_report(a, opts);

    json cfg = base_config("example1", args);
    cfg["pi"] = effort;
    cfg["starts"] = starts;
    write_json_file(args.out_dir + "/config.json", cfg);
    write_json_file(args.out_dir + "/network.json", network_to_json(report.net));

    json summary = summary_to_json(report.summary);
    summary["lambda2_scaled_laplacian"] = report.lambda2_scaled;
    summary["pi_main"] = report.effort_main;
    json fiedler;
    fiedler["eigenvalue"] = report.fiedler.eigenvalue;
    fiedler["right"] = json::array();
    fiedler["left"] = json::array();
    for (Index i = 0; i < report.net.n; ++i) {
        fiedler["right"].push_back(report.fiedler.right[i]);
        fiedler["left"].push_back(report.fiedler.left[i]);
    }
    summary["fiedler"] = fiedler;
    write_json_file(args.out_dir + "/summary.json", summary);

    for (const auto& panel : report.panels) {
        write_csv_file(args.out_dir + "/fig2_disks_" + panel.name + ".csv",
                       [&](std::ostream& out) { write_disks_csv(out, panel.disks); });
        write_csv_file(args.out_dir + "/fig2_eigs_" + panel.name + ".csv",
                       [&](std::ostream& out) { write_eigs_csv(out, panel.eigenvalues); });
    }
    write_csv_file(args.out_dir + "/fig1b_eigs.csv", [&](std::ostream& out) {
        write_eig_fan_csv(out, report.bifurcation_efforts, report.bifurcation_eigs);
    });
    for (size_t k = 0; k < report.censuses.size(); ++k) {
        const std::string tag = format_effort(report.census_efforts[k]);
        write_json_file(args.out_dir + "/census_pi_" + tag + ".json",
                        census_to_json(report.censuses[k]));
        write_csv_file(args.out_dir + "/census_pi_" + tag + ".csv",
                       [&](std::ostream& out) { write_census_csv(out, report.censuses[k]); });
    }
    write_json_file(args.out_dir + "/ensemble.json", ensemble_to_json(report.ensemble));

    std::cout << "rho(A) = " << report.summary.spectral_radius
              << ", lambda2nd(A) = " << report.summary.adjacency_second
              << ", lambda2nd(H1) = " << report.summary.norm_adjacency_second
              << ", pi2 = " << report.summary.critical_effort << "\n"
              << "lambda2(Delta - pi A) at pi = " << report.effort_main << ": "
              << report.lambda2_scaled << "\n";
    print_census_table(report.censuses.front(), report.census_efforts.front());
    return 0;
}

int cmd_example2(const CommonArgs& args, Index nodes, double edge_prob, const GridSpec& grid,
                 Index starts, bool paper_scale) {
    ensure_dir(args.out_dir);
    Example2Options opts;
    opts.nodes = nodes;
    opts.edge_prob = edge_prob;
    opts.seed = args.seed;
    opts.threads = args.threads;
    opts.starts_per_effort = paper_scale ? 10000 : starts;
    Index count = paper_scale ? 500 : grid.count;
    {
        auto g = linear_grid(grid.lo, grid.hi, count + 1);
        g.erase(g.begin());  // open interval at the left endpoint
        opts.effort_grid = g;
    }
    const Example2Report report = example2_report(opts);

    json cfg = base_config("example2", args);
    cfg["n"] = nodes;
    cfg["p"] = edge_prob;
    cfg["pi_grid"] = {{"lo", grid.lo}, {"hi", grid.hi}, {"count", count}};
    cfg["starts"] = opts.starts_per_effort;
    cfg["paper_scale"] = paper_scale;
    write_json_file(args.out_dir + "/config.json", cfg);
    write_json_file(args.out_dir + "/network.json", network_to_json(report.net));
    write_csv_file(args.out_dir + "/network.csv",
                   [&](std::ostream& out) { write_matrix_csv(out, report.net.adjacency); });

    json summary = summary_to_json(report.summary);
    summary["thresholds"] = {{"pi1", report.sweep.threshold_first},
                             {"pi2", report.sweep.threshold_second}};
    write_json_file(args.out_dir + "/summary.json", summary);

    write_csv_file(args.out_dir + "/fig3a_counts.csv",
                   [&](std::ostream& out) { write_counts_csv(out, report.sweep); });
    write_csv_file(args.out_dir + "/fig3b_ratios.csv",
                   [&](std::ostream& out) { write_ratios_csv(out, report.sweep); });
    write_csv_file(args.out_dir + "/fig3c_polar.csv",
                   [&](std::ostream& out) { write_polar_csv(out, report.polar); });
    for (size_t k = 0; k < report.sweep.censuses.size(); ++k) {
        write_csv_file(
            args.out_dir + "/census_pi_" + format_effort(report.sweep.efforts[k]) + ".csv",
            [&](std::ostream& out) { write_census_csv(out, report.sweep.censuses[k]); });
    }

    std::cout << "realization pi2 = " << report.sweep.threshold_second << "\n";
    for (const auto& p : report.sweep.per_effort) {
        std::cout << "pi = " << p.effort << ": " << p.equilibrium_count << " equilibria, "
                  << p.orthant_count << " orthants, " << p.stable_count << " stable\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiequilibria analysis for saturated cooperative networks"};
    app.require_subcommand(1);

    CommonArgs args;
    double effort = 1.838;
    Index starts = 1000;
    double box_scale = 1.5;
    std::string grid_text = "1:20:50";
    bool warm_start = true;
    bool paper_scale = false;
    Index nodes = 20;
    double edge_prob = 0.1;
    Index sim_starts = 100;
    double box_lo = -2.0, box_hi = 2.0, t_max = 500.0;

    auto* analyze = app.add_subcommand("analyze", "validate a network and report its spectrum");
    add_common(analyze, args, true);
    analyze->add_option("--pi", effort, "effort value for the scaled disk panels");

    auto* equilibria = app.add_subcommand("equilibria", "multistart equilibrium census");
    add_common(equilibria, args, true);
    equilibria->add_option("--pi", effort, "effort value")->required();
    equilibria->add_option("--starts", starts, "random starts");
    equilibria->add_option("--box-scale", box_scale, "sampling box scale");

    auto* sweep = app.add_subcommand("sweep", "census across an effort grid");
    add_common(sweep, args, true);
    sweep->add_option("--pi-grid", grid_text, "grid as lo:hi:count")->required();
    sweep->add_option("--starts", starts, "random starts per grid point");
    sweep->add_flag("!--no-warm-start", warm_start, "disable warm starting");

    auto* simulate = app.add_subcommand("simulate", "ensemble of trajectories");
    add_common(simulate, args, true);
    simulate->add_option("--pi", effort, "effort value")->required();
    simulate->add_option("--starts", sim_starts, "trajectories");
    simulate->add_option("--census-starts", starts, "starts for the attractor census");
    simulate->add_option("--box-lo", box_lo, "initial condition box lower bound");
    simulate->add_option("--box-hi", box_hi, "initial condition box upper bound");
    simulate->add_option("--t-max", t_max, "integration horizon");

    auto* example1 = app.add_subcommand("example1", "bundled 6-node study");
    add_common(example1, args, false);
    example1->add_option("--pi", effort, "main effort value");
    example1->add_option("--starts", starts, "census starts");

    auto* example2 = app.add_subcommand("example2", "random-network census study");
    add_common(example2, args, false);
    example2->add_option("--n", nodes, "node count");
    example2->add_option("--p", edge_prob, "edge probability");
    example2->add_option("--pi-grid", grid_text, "grid as lo:hi:count");
    example2->add_option("--starts", starts, "starts per grid point");
    example2->add_flag("--paper-scale", paper_scale, "10^4 starts, 500 grid points");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            return cmd_analyze(args, analyze->count("--pi") ? effort : 0.0);
        }
        if (equilibria->parsed()) return cmd_equilibria(args, effort, starts, box_scale);
        if (sweep->parsed()) return cmd_sweep(args, parse_grid(grid_text), starts, warm_start);
        if (simulate->parsed()) {
            return cmd_simulate(args, effort, sim_starts, box_lo, box_hi, t_max, starts);
        }
        if (example1->parsed()) return cmd_example1(args, effort, starts);
        if (example2->parsed()) {
            return cmd_example2(args, nodes, edge_prob, parse_grid(grid_text), starts,
                                paper_scale);
        }
    } catch (const ModelError& e) {
        json err;
        err["error"] = e.kind_name();
        err["message"] = e.what();
        err["i"] = e.row;
        err["j"] = e.col;
        std::error_code ec;
        fs::create_directories(args.out_dir, ec);
        if (!ec) {
            std::ofstream out(args.out_dir + "/error.json");
            out << err.dump(2) << "\n";
        }
        std::cerr << "model violation: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
