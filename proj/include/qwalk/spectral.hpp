#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::spectral {

// One-step operator at quasi-momentum kappa for the balanced coin and no
// phase gradient:
//   M(kappa) = diag(e^{i kappa}, e^{-i kappa}) * C
// Plane waves u_n = U e^{i(beta m + kappa n)} are its eigenvectors with
// eigenvalues e^{i beta(kappa)}.
struct MomentumOperator {
    double kappa = 0.0;
    Complex m11, m12, m21, m22;
};

MomentumOperator step_operator(double kappa);

// The two quasi-energy branches beta(kappa) = +-acos(cos(kappa)/sqrt(2)),
// returned as (plus, minus).
std::pair<double, double> dispersion(double kappa);

// Minimum circular distance (mod 2*pi) between the two eigenvalue phases.
double band_gap_at(double kappa);

// Unit-norm eigenvectors of M(kappa), (plus, minus). Phase convention: the
// first nonzero component is made real-positive, so projections are
// reproducible.
std::pair<Spinor, Spinor> band_eigenvectors(double kappa);

// Quasi-energies and eigenvectors sampled on an inclusive kappa grid.
struct BandStructure {
    std::vector<double> kappa_grid;
    std::vector<double> beta_plus, beta_minus;
    std::vector<Spinor> eigvec_plus, eigvec_minus;

    static BandStructure sample(std::size_t n_samples, double kappa_lo,
                                double kappa_hi);
};

// Propagation oracle for the zero-gradient regime: transform to kappa space
// (convention U^(kappa) = sum_n u_n e^{-i kappa n}), apply M(kappa)^steps per
// sample via eigendecomposition, transform back. Requires a power-of-two
// window. Independent of the position-space step kernel.
WalkState momentum_evolve(const WalkState& state, int steps);

// Intensity-weighted circular mean of kappa on the folded zone [-pi/2, pi/2).
// A single-parity field has a pi-periodic-redundant spectrum, so the fold
// removes the kappa <-> kappa+pi alias before averaging.
double momentum_centroid(const WalkState& state);

// Centroid per recorded step, unwrapped across the pi-periodic fold so a
// linear drift stays linear.
std::vector<double> momentum_centroid_series(const Trajectory& traj);

// Fraction of the state in each band, (P_plus, P_minus): project each kappa
// sample onto the band eigenvectors evaluated at kappa + kappa_offset. The
// offset lets callers track a gradient-driven drift of the spectrum;
// P_plus + P_minus = 1 for any offset.
std::pair<double, double> band_populations(const WalkState& state,
                                           double kappa_offset);

} // namespace qwalk::spectral
