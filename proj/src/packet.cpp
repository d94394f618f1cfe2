#include <cmath>
#include <string>

#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

namespace {
// Envelope below this is stored as an exact zero. The packet then carries
// real zero padding, which the step operator's boundary check relies on.
constexpr double tail_tol = 1e-12;
} // namespace

WalkState make_packet(int n0, double width, double kappa0, Band band,
                      int n_min, int n_max) {
    if (!(width >= 1.0))
        throw error("packet width must be >= 1");
    if (n_min > n_max)
        throw error("empty window");
    if (n0 < n_min || n0 > n_max)
        throw error("packet center " + std::to_string(n0) +
                    " outside window [" + std::to_string(n_min) + ", " +
                    std::to_string(n_max) + "]");

    const double inv_4w2 = 1.0 / (4.0 * width * width);
    auto envelope = [&](int n) {
        const double d = static_cast<double>(n - n0);
        return std::exp(-d * d * inv_4w2);
    };
    if (envelope(n_min) >= tail_tol || envelope(n_max) >= tail_tol)
        throw window_error(
            "window too small for the packet: boundary amplitude above 1e-12");

    const auto [plus, minus] = spectral::band_eigenvectors(kappa0);
    const Spinor& vec = (band == Band::plus) ? plus : minus;

    WalkState out;
    out.m = 0;
    out.n_min = n_min;
    out.n_max = n_max;
    out.u.assign(out.size(), Complex{});
    out.v.assign(out.size(), Complex{});

    for (int n = n_min; n <= n_max; ++n) {
        const double env = envelope(n);
        if (env < tail_tol)
            continue;
        const Complex amp = env * std::polar(1.0, kappa0 * n);
        out.u[n - n_min] = amp * vec.up;
        out.v[n - n_min] = amp * vec.down;
    }

    const double norm = out.norm();
    if (norm <= 0.0)
        throw error("packet has zero norm");
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& a : out.u)
        a *= scale;
    for (auto& a : out.v)
        a *= scale;
    return out;
}

} // namespace qwalk
