// Parallel batch helper. Items write into preallocated slots indexed by item
// id, so the output never depends on scheduling. for_each_serial is the
// reference loop used by tests and the benchmark.
#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace multiequ {

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Plain loop, reference implementation.
template <class F>
void for_each_serial(std::int64_t count, F&& body) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
}

/// OpenMP loop over [0, count). threads == 0 means the OpenMP default.
/// Falls back to the serial loop when OpenMP is unavailable or threads == 1.
template <class F>
void for_each_parallel(std::int64_t count, F&& body, int threads = 0) {
#ifdef _OPENMP
    if (threads == 1) {
        for_each_serial(count, body);
        return;
    }
    if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::int64_t i = 0; i < count; ++i) body(i);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < count; ++i) body(i);
    }
#else
    (void)threads;
    for_each_serial(count, body);
#endif
}

} // namespace multiequ
