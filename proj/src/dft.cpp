#include "dft.hpp"

#include <mutex>

#include <fftw3.h>

namespace qwalk::detail {

namespace {
std::mutex planner_mutex;
}

std::vector<Complex> dft(const std::vector<Complex>& in, int sign) {
    const int n = static_cast<int>(in.size());
    fftw_complex* buf = fftw_alloc_complex(in.size());
    for (int i = 0; i < n; ++i) {
        buf[i][0] = in[i].real();
        buf[i][1] = in[i].imag();
    }
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    std::vector<Complex> out(in.size());
    for (int i = 0; i < n; ++i)
        out[i] = Complex{buf[i][0], buf[i][1]};
    fftw_free(buf);
    return out;
}

} // namespace qwalk::detail
