#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bohr::par {

// Thread cap requested through BOHR_LAB_THREADS, or 0 when unset/invalid.
inline int env_thread_cap() {
    const char* v = std::getenv("BOHR_LAB_THREADS");
    if (!v) return 0;
    int n = std::atoi(v);
    return n > 0 ? n : 0;
}

// Applies the BOHR_LAB_THREADS cap to the OpenMP runtime. Called once by
// executables; the library itself never mutates global thread state.
inline void apply_thread_cap() {
#ifdef _OPENMP
    if (int cap = env_thread_cap(); cap > 0) omp_set_num_threads(cap);
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace bohr::par
