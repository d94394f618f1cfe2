#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::analysis {

// A named series over step index plus an optional extracted scalar
// (period, slope, peak value, ...).
struct SeriesReport {
    std::string name;
    std::vector<int> m_values;
    std::vector<double> values;
    std::optional<double> extracted_scalar;
};

// Energy in each loop per step: E_u(m) = sum_n |u_n|^2 and the v analog.
// Returned as (E_u series, E_v series); E_u + E_v = 1 for unit-norm states.
std::pair<SeriesReport, SeriesReport> loop_energy_series(const Trajectory& traj);

// Period (in steps) of the dominant nonzero-frequency component of the
// series after removing a linear trend. Uses a zero-padded discrete spectrum
// with parabolic peak interpolation, which tolerates the decaying envelope
// of the inter-loop oscillation. Throws if the series carries no
// oscillation.
double zitter_period(const SeriesReport& series);

// Interference-pattern model inside the ballistic cone:
//   cos[(pi/4)(m - m0) - n^2/(2m)]
// with m0 = 3 for the u component and m0 = 1 for v. n is the offset from the
// start site. Valid for |n| < m.
double hyperbola_model(int n, int m, Field component);

// Pearson correlation between the simulated intensity and the squared model
// over steps in [m_lo, m_hi] and |n - n0| <= cone_fraction * m, restricted
// to the reachable parity sublattice. The trajectory must start from a
// single site.
double hyperbola_match(const Trajectory& traj, Field component, int m_lo,
                       int m_hi, double cone_fraction);

struct BlochRecovery {
    int peak_step = 0;
    double peak_fidelity = 0.0;
};

// argmax over m in [1, 2p] of fidelity(state_0, state_m). The trajectory
// must contain at least 2p+1 states.
BlochRecovery bloch_recovery(const Trajectory& traj, int p);

// P_minus(m) in the instantaneous eigenbasis per kappa sample. Feed this a
// packet trajectory evolved with the gradient split evenly between the
// loops (PhaseProfile::linear_split), so the spectrum drifts rigidly and
// the sample labels stay aligned with the drifting field. The initial state
// must be at least 95% in one band, which a single-site start is not.
// extracted_scalar = max_m of the series.
SeriesReport lz_transfer_series(const Trajectory& traj, double alpha);

// sigma^2(m) of the total intensity; extracted_scalar = least-squares slope
// of sigma(m) over the last half of the trajectory.
SeriesReport variance_series(const Trajectory& traj);

// Max over m of | |v_{n0+m}^m|^2 * 2^m - 1 | for a |down> single-site start:
// the outermost amplitude is an exact product of 1/sqrt(2) factors and
// unimodular phases.
double corner_decay_check(const Trajectory& traj);

} // namespace qwalk::analysis
