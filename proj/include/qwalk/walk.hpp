#pragma once

#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

// Full two-component field {u_n, v_n} on the position window [n_min, n_max]
// after m steps. Sites the walker cannot reach hold exact zeros, never small
// residues, so parity and causality are testable as equalities.
struct WalkState {
    int m = 0;
    int n_min = 0;
    int n_max = 0;
    std::vector<Complex> u, v;

    int size() const { return n_max - n_min + 1; }
    bool contains(int n) const { return n >= n_min && n <= n_max; }
    int index(int n) const;

    const Complex& u_at(int n) const { return u[index(n)]; }
    const Complex& v_at(int n) const { return v[index(n)]; }

    // |u_n|^2 + |v_n|^2 (or one component via `which`).
    double intensity(int n, Field which = Field::total) const;

    // Total norm, summed in a fixed serial order.
    double norm() const;

    bool same_window(const WalkState& other) const {
        return n_min == other.n_min && n_max == other.n_max;
    }
};

// Ordered states for m = 0..M; consecutive entries differ by one step.
struct Trajectory {
    std::vector<WalkState> states;

    std::size_t size() const { return states.size(); }
    const WalkState& operator[](std::size_t i) const { return states[i]; }
    const WalkState& front() const { return states.front(); }
    const WalkState& back() const { return states.back(); }
};

// Unit-norm single-site state at m = 0.
WalkState make_initial(int n0, const Spinor& s, int n_min, int n_max);

// Gaussian wave packet composed on one band:
//   (u_n, v_n) = exp(-(n-n0)^2/(4 width^2)) * exp(i kappa0 n) * (U, V)
// with (U, V) the band eigenvector at kappa0. Envelope values below 1e-12
// are stored as exact zeros so the packet has genuine zero padding; the
// window must be wide enough that the truncated tail stays below that
// tolerance.
WalkState make_packet(int n0, double width, double kappa0, Band band,
                      int n_min, int n_max);

// One step of the evolution:
//   u_n' = (c11 u_{n+1} + c12 v_{n+1}) exp(i phi_u(n))
//   v_n' = (c21 u_{n-1} + c22 v_{n-1}) exp(i phi_v(n))
// Throws window_error if nonzero amplitude would cross the window boundary.
WalkState step(const WalkState& state, const CoinOp& coin,
               const PhaseProfile& phase);

// Reference implementation: same arithmetic per cell, plain serial loop.
// step() and step_serial() agree bit for bit.
WalkState step_serial(const WalkState& state, const CoinOp& coin,
                      const PhaseProfile& phase);

// Overloads taking phase factors precomputed once via PhaseProfile::factors;
// use these when stepping many times without recording a trajectory.
WalkState step(const WalkState& state, const CoinOp& coin,
               const PhaseProfile::Factors& factors);
WalkState step_serial(const WalkState& state, const CoinOp& coin,
                      const PhaseProfile::Factors& factors);

// steps+1 states starting from `state`. Deterministic: identical inputs give
// identical trajectories regardless of thread count.
Trajectory evolve(const WalkState& state, int steps, const CoinOp& coin,
                  const PhaseProfile& phase);

// |<a|b>|^2 for unit-norm states on identical windows.
double fidelity(const WalkState& a, const WalkState& b);

} // namespace qwalk
