#include "qwalk/types.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace qwalk {

Spinor Spinor::normalized() const {
    const double n2 = norm_sq();
    if (n2 <= 0.0)
        throw error("cannot normalize a zero spinor");
    const double s = 1.0 / std::sqrt(n2);
    return {up * s, down * s};
}

namespace {

constexpr double unitarity_tol = 1e-12;

bool near(const Complex& a, const Complex& b) {
    return std::abs(a - b) <= unitarity_tol;
}

} // namespace

CoinOp::CoinOp(Complex c11_, Complex c12_, Complex c21_, Complex c22_)
    : c11(c11_), c12(c12_), c21(c21_), c22(c22_) {
    // C†C = I, entrywise
    const Complex g11 = std::conj(c11) * c11 + std::conj(c21) * c21;
    const Complex g12 = std::conj(c11) * c12 + std::conj(c21) * c22;
    const Complex g21 = std::conj(c12) * c11 + std::conj(c22) * c21;
    const Complex g22 = std::conj(c12) * c12 + std::conj(c22) * c22;
    if (!near(g11, 1.0) || !near(g12, 0.0) || !near(g21, 0.0) ||
        !near(g22, 1.0))
        throw error("coin matrix is not unitary");
}

CoinOp CoinOp::balanced() {
    const double s = std::sqrt(0.5); // correctly rounded 1/sqrt(2)
    return CoinOp{{s, 0.0}, {0.0, s}, {0.0, s}, {s, 0.0}};
}

PhaseProfile PhaseProfile::linear_rational(long q, long p) {
    if (p < 1)
        throw error("phase profile requires p >= 1, got p = " +
                    std::to_string(p));
    const long g = std::gcd(q, p);
    if (g > 1) {
        q /= g;
        p /= g;
    }
    PhaseProfile out;
    out.mode_ = Mode::linear_rational;
    out.q_ = q;
    out.p_ = p;
    out.alpha_ = 2.0 * pi * static_cast<double>(q) / static_cast<double>(p);
    return out;
}

PhaseProfile PhaseProfile::linear_float(double alpha) {
    if (!std::isfinite(alpha))
        throw error("phase gradient must be finite");
    PhaseProfile out;
    out.mode_ = Mode::linear_float;
    out.alpha_ = alpha;
    return out;
}

PhaseProfile PhaseProfile::linear_split(double alpha_u, double alpha_v,
                                        int n_min, int n_max) {
    if (!std::isfinite(alpha_u) || !std::isfinite(alpha_v))
        throw error("phase gradients must be finite");
    if (n_min > n_max)
        throw error("empty window");
    std::vector<double> phi_u, phi_v;
    phi_u.reserve(n_max - n_min + 1);
    phi_v.reserve(n_max - n_min + 1);
    for (int n = n_min; n <= n_max; ++n) {
        phi_u.push_back(alpha_u * static_cast<double>(n));
        phi_v.push_back(alpha_v * static_cast<double>(n));
    }
    return tabulated(n_min, std::move(phi_u), std::move(phi_v));
}

PhaseProfile PhaseProfile::tabulated(int n_min, std::vector<double> phi_u,
                                     std::vector<double> phi_v) {
    if (phi_u.size() != phi_v.size())
        throw error("tabulated phase arrays must have equal length");
    if (phi_u.empty())
        throw error("tabulated phase arrays must not be empty");
    for (double x : phi_u)
        if (!std::isfinite(x))
            throw error("tabulated phi_u contains a non-finite value");
    for (double x : phi_v)
        if (!std::isfinite(x))
            throw error("tabulated phi_v contains a non-finite value");
    PhaseProfile out;
    out.mode_ = Mode::tabulated;
    out.table_n_min_ = n_min;
    out.tab_u_ = std::move(phi_u);
    out.tab_v_ = std::move(phi_v);
    return out;
}

bool PhaseProfile::is_zero() const {
    switch (mode_) {
    case Mode::linear_rational:
        return q_ == 0;
    case Mode::linear_float:
        return alpha_ == 0.0;
    case Mode::tabulated:
        for (double x : tab_u_)
            if (x != 0.0)
                return false;
        for (double x : tab_v_)
            if (x != 0.0)
                return false;
        return true;
    }
    return false;
}

double PhaseProfile::alpha() const {
    if (mode_ == Mode::tabulated)
        throw error("tabulated phase profile has no single gradient alpha");
    return alpha_;
}

long PhaseProfile::q() const {
    if (mode_ != Mode::linear_rational)
        throw error("q/p defined for linear-rational profiles only");
    return q_;
}

long PhaseProfile::p() const {
    if (mode_ != Mode::linear_rational)
        throw error("q/p defined for linear-rational profiles only");
    return p_;
}

double PhaseProfile::phi_u(int n) const {
    if (mode_ != Mode::tabulated)
        return 0.0;
    const long i = static_cast<long>(n) - table_n_min_;
    if (i < 0 || i >= static_cast<long>(tab_u_.size()))
        throw window_error("tabulated phase profile does not cover n = " +
                           std::to_string(n));
    return tab_u_[static_cast<std::size_t>(i)];
}

double PhaseProfile::phi_v(int n) const {
    if (mode_ != Mode::tabulated)
        return alpha_ * static_cast<double>(n);
    const long i = static_cast<long>(n) - table_n_min_;
    if (i < 0 || i >= static_cast<long>(tab_v_.size()))
        throw window_error("tabulated phase profile does not cover n = " +
                           std::to_string(n));
    return tab_v_[static_cast<std::size_t>(i)];
}

PhaseProfile::Factors PhaseProfile::factors(int n_min, int n_max) const {
    Factors out;
    out.n_min = n_min;
    const int count = n_max - n_min + 1;
    out.u.reserve(count);
    out.v.reserve(count);
    for (int n = n_min; n <= n_max; ++n) {
        const double fu = phi_u(n);
        const double fv = phi_v(n);
        out.u.push_back(fu == 0.0 ? Complex{1.0, 0.0} : std::polar(1.0, fu));
        out.v.push_back(fv == 0.0 ? Complex{1.0, 0.0} : std::polar(1.0, fv));
    }
    return out;
}

} // namespace qwalk
