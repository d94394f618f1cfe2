#include "qwalk/walk.hpp"

#include <cmath>
#include <string>

#include "qwalk/parallel.hpp"

namespace qwalk {

int WalkState::index(int n) const {
    if (!contains(n))
        throw error("position " + std::to_string(n) + " outside window [" +
                    std::to_string(n_min) + ", " + std::to_string(n_max) +
                    "]");
    return n - n_min;
}

double WalkState::intensity(int n, Field which) const {
    const int i = index(n);
    switch (which) {
    case Field::u:
        return std::norm(u[i]);
    case Field::v:
        return std::norm(v[i]);
    case Field::total:
        return std::norm(u[i]) + std::norm(v[i]);
    }
    return 0.0;
}

double WalkState::norm() const {
    double total = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        total += std::norm(u[i]) + std::norm(v[i]);
    return total;
}

WalkState make_initial(int n0, const Spinor& s, int n_min, int n_max) {
    if (n_min > n_max)
        throw error("empty window");
    if (n0 < n_min || n0 > n_max)
        throw error("start position " + std::to_string(n0) +
                    " outside window [" + std::to_string(n_min) + ", " +
                    std::to_string(n_max) + "]");
    const Spinor unit = s.normalized();
    WalkState out;
    out.m = 0;
    out.n_min = n_min;
    out.n_max = n_max;
    out.u.assign(out.size(), Complex{});
    out.v.assign(out.size(), Complex{});
    out.u[n0 - n_min] = unit.up;
    out.v[n0 - n_min] = unit.down;
    return out;
}

namespace {

// One application of the shift-coin-phase update on a fixed window. Every
// output cell depends only on input cells, so the loop body can run in any
// order; with `threaded` the iterations are spread over OpenMP threads and
// still produce identical bits.
WalkState apply_step(const WalkState& s, const CoinOp& c,
                     const PhaseProfile::Factors& f, bool threaded) {
    const int count = s.size();

    // Amplitude that would land outside the window: u flows left out of
    // n_min, v flows right out of n_max.
    const Complex out_left = c.c11 * s.u.front() + c.c12 * s.v.front();
    const Complex out_right = c.c21 * s.u.back() + c.c22 * s.v.back();
    if (out_left != Complex{} || out_right != Complex{})
        throw window_error(
            "step " + std::to_string(s.m + 1) +
            ": nonzero amplitude would cross the window boundary (grow the "
            "window to [n0 - steps, n0 + steps])");

    WalkState out;
    out.m = s.m + 1;
    out.n_min = s.n_min;
    out.n_max = s.n_max;
    out.u.assign(count, Complex{});
    out.v.assign(count, Complex{});

    const Complex* u_in = s.u.data();
    const Complex* v_in = s.v.data();
    Complex* u_out = out.u.data();
    Complex* v_out = out.v.data();
    const Complex* fu = f.u.data();
    const Complex* fv = f.v.data();

    const double c11r = c.c11.real(), c11i = c.c11.imag();
    const double c12r = c.c12.real(), c12i = c.c12.imag();
    const double c21r = c.c21.real(), c21i = c.c21.imag();
    const double c22r = c.c22.real(), c22i = c.c22.imag();

    // Complex arithmetic spelled out: no library-call overhead in the hot
    // loop, and exact zeros propagate as exact zeros.
    auto cell = [=](std::ptrdiff_t i) {
        if (i + 1 < count) {
            const double ur = u_in[i + 1].real(), ui = u_in[i + 1].imag();
            const double vr = v_in[i + 1].real(), vi = v_in[i + 1].imag();
            const double ar = (c11r * ur - c11i * ui) + (c12r * vr - c12i * vi);
            const double ai = (c11r * ui + c11i * ur) + (c12r * vi + c12i * vr);
            const double pr = fu[i].real(), pi_ = fu[i].imag();
            u_out[i] = Complex{ar * pr - ai * pi_, ar * pi_ + ai * pr};
        }
        if (i >= 1) {
            const double ur = u_in[i - 1].real(), ui = u_in[i - 1].imag();
            const double vr = v_in[i - 1].real(), vi = v_in[i - 1].imag();
            const double br = (c21r * ur - c21i * ui) + (c22r * vr - c22i * vi);
            const double bi = (c21r * ui + c21i * ur) + (c22r * vi + c22i * vr);
            const double pr = fv[i].real(), pi_ = fv[i].imag();
            v_out[i] = Complex{br * pr - bi * pi_, br * pi_ + bi * pr};
        }
    };

    if (threaded) {
        parallel::for_each_index(count, cell);
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i)
            cell(i);
    }
    return out;
}

} // namespace

WalkState step(const WalkState& state, const CoinOp& coin,
               const PhaseProfile& phase) {
    return apply_step(state, coin, phase.factors(state.n_min, state.n_max),
                      true);
}

WalkState step_serial(const WalkState& state, const CoinOp& coin,
                      const PhaseProfile& phase) {
    return apply_step(state, coin, phase.factors(state.n_min, state.n_max),
                      false);
}

namespace {
void require_matching_factors(const WalkState& state,
                              const PhaseProfile::Factors& factors) {
    if (factors.n_min != state.n_min ||
        factors.u.size() != static_cast<std::size_t>(state.size()))
        throw error("phase factors do not cover the state's window");
}
} // namespace

WalkState step(const WalkState& state, const CoinOp& coin,
               const PhaseProfile::Factors& factors) {
    require_matching_factors(state, factors);
    return apply_step(state, coin, factors, true);
}

WalkState step_serial(const WalkState& state, const CoinOp& coin,
                      const PhaseProfile::Factors& factors) {
    require_matching_factors(state, factors);
    return apply_step(state, coin, factors, false);
}

Trajectory evolve(const WalkState& state, int steps, const CoinOp& coin,
                  const PhaseProfile& phase) {
    if (steps < 0)
        throw error("step count must be non-negative");
    const PhaseProfile::Factors f = phase.factors(state.n_min, state.n_max);
    Trajectory traj;
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);
    traj.states.push_back(state);
    for (int k = 0; k < steps; ++k)
        traj.states.push_back(apply_step(traj.states.back(), coin, f, true));
    return traj;
}

double fidelity(const WalkState& a, const WalkState& b) {
    if (!a.same_window(b))
        throw error("fidelity requires identical windows");
    Complex overlap{};
    for (std::size_t i = 0; i < a.u.size(); ++i)
        overlap += std::conj(a.u[i]) * b.u[i] + std::conj(a.v[i]) * b.v[i];
    return std::norm(overlap);
}

} // namespace qwalk
