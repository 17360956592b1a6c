// parallel.hpp — Thin OpenMP wrappers.
//
// Every parallel entry point has a serial twin and both must produce
// identical results; the unit tests compare them and the bench tool times
// them. Worker count is capped globally (TRANSDUCE_SIM_THREADS).

#pragma once

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace transim {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

// Apply fn(i) for i in [0, n). Results must be written into caller-owned
// storage indexed by i so the schedule cannot reorder anything observable.
template <class F>
void parallel_for_index(std::size_t n, F&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        fn(static_cast<std::size_t>(i));
    }
}

template <class F>
void serial_for_index(std::size_t n, F&& fn) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace transim
