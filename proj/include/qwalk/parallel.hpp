#pragma once

#include <cstddef>

namespace qwalk::parallel {

// Worker count for the data-parallel kernels. Affects speed only: every
// kernel writes disjoint cells and all reductions run serially, so results
// are bit-identical for any thread count. No-ops without OpenMP.
void set_threads(int n);
int max_threads();

#ifdef _OPENMP
template <class F>
void for_each_index(std::ptrdiff_t n, F&& f) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        f(i);
}
#else
template <class F>
void for_each_index(std::ptrdiff_t n, F&& f) {
    for (std::ptrdiff_t i = 0; i < n; ++i)
        f(i);
}
#endif

} // namespace qwalk::parallel
