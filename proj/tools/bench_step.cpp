// Compares the OpenMP step kernel against the serial reference on a large
// window and checks that both produce identical bits.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "qwalk/parallel.hpp"
#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int radius = (argc > 1) ? std::atoi(argv[1]) : 1 << 15;
    const int steps = (argc > 2) ? std::atoi(argv[2]) : 400;
    if (radius < steps + 1) {
        std::fprintf(stderr, "radius must exceed the step count\n");
        return 2;
    }

    const CoinOp coin = CoinOp::balanced();
    const PhaseProfile phase = PhaseProfile::linear_rational(1, 32);
    const WalkState start = make_initial(0, Spinor{{0.0, 0.0}, {1.0, 0.0}},
                                         -radius, radius);
    const auto factors = phase.factors(start.n_min, start.n_max);
    const double cells = static_cast<double>(start.size()) * steps;

    WalkState serial = start;
    auto t0 = clock_type::now();
    for (int k = 0; k < steps; ++k)
        serial = step_serial(serial, coin, factors);
    const double t_serial = seconds_since(t0);

    WalkState threaded = start;
    t0 = clock_type::now();
    for (int k = 0; k < steps; ++k)
        threaded = step(threaded, coin, factors);
    const double t_threaded = seconds_since(t0);

    bool identical = serial.u == threaded.u && serial.v == threaded.v;

    std::printf("window cells : %d\n", start.size());
    std::printf("steps        : %d\n", steps);
    std::printf("threads      : %d\n", parallel::max_threads());
    std::printf("serial       : %.3f s  (%.1f Mcells/s)\n", t_serial,
                cells / t_serial / 1e6);
    std::printf("openmp       : %.3f s  (%.1f Mcells/s)\n", t_threaded,
                cells / t_threaded / 1e6);
    std::printf("speedup      : %.2fx\n", t_serial / t_threaded);
    std::printf("bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
