#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace osm {

/// Execution policy for the data-parallel kernels. Every kernel has a serial
/// reference path; the parallel path writes independent slots (or reduces a
/// per-slot array in index order), so both produce bit-identical results.
enum class Exec { serial, par };

namespace detail {

template <class Body>
inline void for_index(Exec exec, std::int64_t n, Body&& body) {
#ifdef _OPENMP
    if (exec == Exec::par) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
#endif
    (void)exec;
    for (std::int64_t i = 0; i < n; ++i) {
        body(i);
    }
}

} // namespace detail

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace osm
