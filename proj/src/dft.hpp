#pragma once

// Internal FFTW wrapper. Plans are created with FFTW_ESTIMATE on aligned
// scratch buffers, so the transform of a given length is the same algorithm
// every run; planner access is serialized because FFTW's planner is not
// thread-safe.

#include <vector>

#include "qwalk/types.hpp"

namespace qwalk::detail {

// sign: FFTW_FORWARD (-1) computes sum_l x_l e^{-2 pi i j l / N}; the
// backward transform is unnormalized.
std::vector<Complex> dft(const std::vector<Complex>& in, int sign);

} // namespace qwalk::detail
