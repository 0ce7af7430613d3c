// Timing comparison between the serial reference loops and the OpenMP
// kernels, on the two batch workloads: multistart root finding and
// ensemble integration. Run with --quick for a smoke-test sized problem.

#include <multiequ/equilibria.hpp>
#include <multiequ/parallel.hpp>
#include <multiequ/sweep.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>

using namespace multiequ;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double time_run(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds_since(t0);
}

} // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const Index census_starts = quick ? 300 : 4000;
    const Index ensemble_starts = quick ? 30 : 300;

    const WeightedNetwork net = random_network(20, 0.15, 0.1, 1.0, 7);
    SystemInstance sys(net, SigmoidFamily::builtin(SigmoidKind::boltzmann), 4.0);

    std::printf("hardware threads: %d\n", hardware_threads());
    std::printf("workload: %lld newton starts, %lld trajectories (n = %lld)\n\n",
                static_cast<long long>(census_starts),
                static_cast<long long>(ensemble_starts), static_cast<long long>(net.n));

    CensusOptions serial_opts;
    serial_opts.starts = census_starts;
    serial_opts.seed = 1;
    serial_opts.threads = 1;
    CensusOptions parallel_opts = serial_opts;
    parallel_opts.threads = 0;

    CensusResult serial_census, parallel_census;
    const double census_serial_s =
        time_run([&] { serial_census = multistart_census(sys, serial_opts); });
    const double census_parallel_s =
        time_run([&] { parallel_census = multistart_census(sys, parallel_opts); });

    bool census_match = serial_census.records.size() == parallel_census.records.size();
    if (census_match) {
        for (size_t k = 0; k < serial_census.records.size(); ++k) {
            census_match = census_match &&
                           (serial_census.records[k].x - parallel_census.records[k].x)
                                   .cwiseAbs()
                                   .maxCoeff() == 0.0;
        }
    }
    std::printf("multistart census : serial %7.3fs | parallel %7.3fs | speedup %5.2fx | %s\n",
                census_serial_s, census_parallel_s, census_serial_s / census_parallel_s,
                census_match ? "outputs identical" : "OUTPUT MISMATCH");

    std::vector<Vector> attractors;
    for (const auto& r : serial_census.records) attractors.push_back(r.x);

    EnsembleOptions eserial;
    eserial.threads = 1;
    EnsembleOptions eparallel = eserial;
    eparallel.threads = 0;

    std::vector<EnsembleEntry> a, b;
    const double ensemble_serial_s =
        time_run([&] { a = ensemble_run(sys, ensemble_starts, 2, attractors, eserial); });
    const double ensemble_parallel_s =
        time_run([&] { b = ensemble_run(sys, ensemble_starts, 2, attractors, eparallel); });

    bool ensemble_match = a.size() == b.size();
    for (size_t k = 0; ensemble_match && k < a.size(); ++k) {
        ensemble_match = (a[k].terminal - b[k].terminal).cwiseAbs().maxCoeff() == 0.0 &&
                         a[k].attractor == b[k].attractor;
    }
    std::printf("ensemble integrate: serial %7.3fs | parallel %7.3fs | speedup %5.2fx | %s\n",
                ensemble_serial_s, ensemble_parallel_s,
                ensemble_serial_s / ensemble_parallel_s,
                ensemble_match ? "outputs identical" : "OUTPUT MISMATCH");

    return census_match && ensemble_match ? 0 : 1;
}
