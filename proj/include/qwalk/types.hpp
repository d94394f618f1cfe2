#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

enum class Field { u, v, total };
enum class Band { plus, minus };

// Two-level internal state: amplitude in the upper loop (|up>) and in the
// lower loop (|down>).
struct Spinor {
    Complex up{};
    Complex down{};

    double norm_sq() const { return std::norm(up) + std::norm(down); }

    // Scaled to unit norm; a zero spinor has no direction to normalize.
    Spinor normalized() const;
};

// 2x2 unitary applied to the internal state each step. The constructor
// rejects matrices that are not unitary to 1e-12 per entry.
class CoinOp {
  public:
    CoinOp(Complex c11, Complex c12, Complex c21, Complex c22);

    // The balanced 50/50-coupler coin (1/sqrt(2)) [[1, i], [i, 1]].
    static CoinOp balanced();

    Complex c11, c12, c21, c22;
};

// Per-position, per-component phase shifts applied after the position shift.
// The linear modes put the whole gradient on the lower loop, phi_v(n) = n*a;
// the tabulated mode carries arbitrary phi_u(n), phi_v(n) so the gradient can
// be split between the loops.
class PhaseProfile {
  public:
    enum class Mode { linear_rational, linear_float, tabulated };

    static PhaseProfile none() { return linear_rational(0, 1); }
    // a = 2*pi*q/p; q/p is reduced and p made positive.
    static PhaseProfile linear_rational(long q, long p);
    static PhaseProfile linear_float(double alpha);
    static PhaseProfile tabulated(int n_min, std::vector<double> phi_u,
                                  std::vector<double> phi_v);
    // Tabulated profile with gradient alpha_u on the upper and alpha_v on
    // the lower loop over [n_min, n_max]. With alpha_u = alpha_v = alpha/2
    // the spectrum drifts rigidly by alpha/2 per step, which is the frame
    // the momentum diagnostics read cleanly.
    static PhaseProfile linear_split(double alpha_u, double alpha_v,
                                     int n_min, int n_max);

    Mode mode() const { return mode_; }
    bool is_zero() const;

    // Summed gradient per position step; defined for the linear modes only.
    double alpha() const;
    long q() const;
    long p() const;

    double phi_u(int n) const;
    double phi_v(int n) const;

    // Multiplicative factors exp(i*phi) over a window, precomputed once per
    // run so the step kernel stays branch-free. A tabulated profile must
    // cover the whole window.
    struct Factors {
        int n_min = 0;
        std::vector<Complex> u, v;
    };
    Factors factors(int n_min, int n_max) const;

  private:
    PhaseProfile() = default;

    Mode mode_ = Mode::linear_rational;
    long q_ = 0;
    long p_ = 1;
    double alpha_ = 0.0;
    int table_n_min_ = 0;
    std::vector<double> tab_u_, tab_v_;
};

} // namespace qwalk
