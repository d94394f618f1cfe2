#include "qwalk/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qwalk::parallel {

#ifdef _OPENMP

void set_threads(int n) {
    if (n >= 1)
        omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

#else

void set_threads(int) {}

int max_threads() { return 1; }

#endif

} // namespace qwalk::parallel
