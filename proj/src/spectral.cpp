#include "qwalk/spectral.hpp"

#include <cmath>
#include <string>

#include <fftw3.h>

#include "dft.hpp"

namespace qwalk::spectral {

namespace {

const double inv_sqrt2 = std::sqrt(0.5);

// Forward transform, U^_j = sum_l u_l e^{-2 pi i j l / N}. The window offset
// n_min only contributes a per-kappa prefactor that commutes with every 2x2
// operation applied here, so array-index labels are exact.
std::vector<Complex> to_momentum(const std::vector<Complex>& in) {
    return detail::dft(in, FFTW_FORWARD);
}

std::vector<Complex> to_position(const std::vector<Complex>& in) {
    std::vector<Complex> out = detail::dft(in, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(in.size());
    for (auto& x : out)
        x *= scale;
    return out;
}

Spinor eigenvector_for(const MomentumOperator& op, double beta) {
    // First row of (M - lambda I) x = 0 gives x = (m12, lambda - m11);
    // |m11| = 1/sqrt(2) < 1 = |lambda|, so the vector never degenerates.
    const Complex lambda = std::polar(1.0, beta);
    Complex a = op.m12;
    Complex b = lambda - op.m11;
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    // Overall phase: first component real-positive (m12 != 0 on the whole
    // zone).
    const Complex rot = std::conj(a) / std::abs(a);
    return Spinor{a * rot, b * rot};
}

} // namespace

MomentumOperator step_operator(double kappa) {
    const Complex f = std::polar(inv_sqrt2, kappa);  // e^{+i kappa}/sqrt(2)
    const Complex g = std::polar(inv_sqrt2, -kappa); // e^{-i kappa}/sqrt(2)
    return MomentumOperator{kappa, f, Complex{0.0, 1.0} * f,
                            Complex{0.0, 1.0} * g, g};
}

std::pair<double, double> dispersion(double kappa) {
    const double beta = std::acos(std::cos(kappa) * inv_sqrt2);
    return {beta, -beta};
}

double band_gap_at(double kappa) {
    const auto [bp, bm] = dispersion(kappa);
    const double d = std::fmod(std::abs(bp - bm), 2.0 * pi);
    return std::min(d, 2.0 * pi - d);
}

std::pair<Spinor, Spinor> band_eigenvectors(double kappa) {
    const MomentumOperator op = step_operator(kappa);
    const auto [bp, bm] = dispersion(kappa);
    return {eigenvector_for(op, bp), eigenvector_for(op, bm)};
}

BandStructure BandStructure::sample(std::size_t n_samples, double kappa_lo,
                                    double kappa_hi) {
    if (n_samples < 2)
        throw error("band structure needs at least 2 samples");
    BandStructure out;
    out.kappa_grid.reserve(n_samples);
    out.beta_plus.reserve(n_samples);
    out.beta_minus.reserve(n_samples);
    out.eigvec_plus.reserve(n_samples);
    out.eigvec_minus.reserve(n_samples);
    const double dk =
        (kappa_hi - kappa_lo) / static_cast<double>(n_samples - 1);
    for (std::size_t j = 0; j < n_samples; ++j) {
        const double kappa = (j + 1 == n_samples)
                                 ? kappa_hi
                                 : kappa_lo + dk * static_cast<double>(j);
        const auto [bp, bm] = dispersion(kappa);
        const auto [vp, vm] = band_eigenvectors(kappa);
        out.kappa_grid.push_back(kappa);
        out.beta_plus.push_back(bp);
        out.beta_minus.push_back(bm);
        out.eigvec_plus.push_back(vp);
        out.eigvec_minus.push_back(vm);
    }
    return out;
}

WalkState momentum_evolve(const WalkState& state, int steps) {
    const auto n = static_cast<std::size_t>(state.size());
    if ((n & (n - 1)) != 0)
        throw error("momentum_evolve requires a power-of-two window, got " +
                    std::to_string(n) + " cells");
    if (steps < 0)
        throw error("step count must be non-negative");

    std::vector<Complex> uh = to_momentum(state.u);
    std::vector<Complex> vh = to_momentum(state.v);

    // M(kappa)^steps through the eigenbasis: exact powers, no operator
    // product accumulation.
    for (std::size_t j = 0; j < n; ++j) {
        const double kappa =
            2.0 * pi * static_cast<double>(j) / static_cast<double>(n);
        const auto [bp, bm] = dispersion(kappa);
        const auto [xp, xm] = band_eigenvectors(kappa);
        const Complex ap =
            std::conj(xp.up) * uh[j] + std::conj(xp.down) * vh[j];
        const Complex am =
            std::conj(xm.up) * uh[j] + std::conj(xm.down) * vh[j];
        const Complex ep = ap * std::polar(1.0, bp * steps);
        const Complex em = am * std::polar(1.0, bm * steps);
        uh[j] = ep * xp.up + em * xm.up;
        vh[j] = ep * xp.down + em * xm.down;
    }

    WalkState out;
    out.m = state.m + steps;
    out.n_min = state.n_min;
    out.n_max = state.n_max;
    out.u = to_position(uh);
    out.v = to_position(vh);
    return out;
}

double momentum_centroid(const WalkState& state) {
    const auto n = static_cast<std::size_t>(state.size());
    const std::vector<Complex> uh = to_momentum(state.u);
    const std::vector<Complex> vh = to_momentum(state.v);

    // Fold kappa into [-pi/2, pi/2) and average on the doubled circle so the
    // mean respects the fold's periodicity.
    Complex acc{};
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(uh[j]) + std::norm(vh[j]);
        double kappa =
            2.0 * pi * static_cast<double>(j) / static_cast<double>(n);
        kappa = std::fmod(kappa, pi);
        if (kappa >= pi / 2.0)
            kappa -= pi;
        acc += w * std::polar(1.0, 2.0 * kappa);
        total += w;
    }
    if (total <= 0.0)
        throw error("momentum centroid of a zero state");
    return std::arg(acc) / 2.0;
}

std::vector<double> momentum_centroid_series(const Trajectory& traj) {
    std::vector<double> out;
    out.reserve(traj.size());
    for (const WalkState& s : traj.states) {
        double c = momentum_centroid(s);
        if (!out.empty()) {
            // nearest image across the pi-periodic fold
            while (c - out.back() > pi / 2.0)
                c -= pi;
            while (c - out.back() < -pi / 2.0)
                c += pi;
        }
        out.push_back(c);
    }
    return out;
}

std::pair<double, double> band_populations(const WalkState& state,
                                           double kappa_offset) {
    const auto n = static_cast<std::size_t>(state.size());
    const std::vector<Complex> uh = to_momentum(state.u);
    const std::vector<Complex> vh = to_momentum(state.v);

    double p_plus = 0.0;
    double p_minus = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double kappa =
            2.0 * pi * static_cast<double>(j) / static_cast<double>(n) +
            kappa_offset;
        const auto [xp, xm] = band_eigenvectors(kappa);
        const Complex ap =
            std::conj(xp.up) * uh[j] + std::conj(xp.down) * vh[j];
        const Complex am =
            std::conj(xm.up) * uh[j] + std::conj(xm.down) * vh[j];
        p_plus += std::norm(ap);
        p_minus += std::norm(am);
        total += std::norm(uh[j]) + std::norm(vh[j]);
    }
    if (total <= 0.0)
        throw error("band populations of a zero state");
    return {p_plus / total, p_minus / total};
}

} // namespace qwalk::spectral
