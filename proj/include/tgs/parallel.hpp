#pragma once

#include <cstdint>
#include <vector>

namespace tgs {

// Deterministic parallel reductions.
//
// Plain `omp parallel for reduction(+:...)` splits the index range by thread
// count, so the floating-point summation order — and therefore the last few
// bits of the result — changes with OMP_NUM_THREADS.  To keep every run
// bit-identical regardless of thread count, sums are accumulated into
// fixed-size chunks first (chunk boundaries depend only on the problem size)
// and the per-chunk partials are then added in index order on one thread.
// max-reductions are exactly associative in IEEE arithmetic, so those use the
// plain OpenMP reduction clause.

inline constexpr std::int64_t kReduceChunk = 4096;

// Sum of f(i) for i in [0, n).  f must be pure.
template <class F>
double deterministic_sum(std::int64_t n, F&& f) {
    if (n <= 0) return 0.0;
    const std::int64_t nchunks = (n + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::int64_t lo = c * kReduceChunk;
        const std::int64_t hi = lo + kReduceChunk < n ? lo + kReduceChunk : n;
        double s = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) s += f(i);
        partial[static_cast<std::size_t>(c)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// Maximum of f(i) for i in [0, n); returns `empty` for n == 0.
template <class F>
double deterministic_max(std::int64_t n, F&& f, double empty = 0.0) {
    if (n <= 0) return empty;
    double m = f(0);
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = f(i);
        if (v > m) m = v;
    }
    return m;
}

}  // namespace tgs
