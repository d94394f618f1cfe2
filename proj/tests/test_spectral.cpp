#include <doctest.h>

#include <cmath>
#include <random>

#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;
using namespace qwalk::spectral;

namespace {
const double sqrt2 = std::sqrt(2.0);

Complex apply_row(const Complex& a, const Complex& b, const Spinor& x) {
    return a * x.up + b * x.down;
}
} // namespace

TEST_CASE("dispersion endpoints and symmetry") {
    auto [p0, m0] = dispersion(0.0);
    CHECK(p0 == doctest::Approx(pi / 4.0).epsilon(1e-14));
    CHECK(m0 == doctest::Approx(-pi / 4.0).epsilon(1e-14));

    auto [ph, mh] = dispersion(pi / 2.0);
    CHECK(ph == doctest::Approx(pi / 2.0).epsilon(1e-14));
    CHECK(mh == doctest::Approx(-pi / 2.0).epsilon(1e-14));

    auto [pp, mp] = dispersion(pi);
    CHECK(pp == doctest::Approx(3.0 * pi / 4.0).epsilon(1e-14));
    CHECK(mp == doctest::Approx(-3.0 * pi / 4.0).epsilon(1e-14));
}

TEST_CASE("dispersion solves cos(beta) = cos(kappa)/sqrt(2) over the zone") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-pi, pi);
    for (int i = 0; i < 1000; ++i) {
        const double kappa = uni(rng);
        auto [bp, bm] = dispersion(kappa);
        CHECK(std::abs(std::cos(bp) - std::cos(kappa) / sqrt2) < 1e-12);
        CHECK(bp == doctest::Approx(-bm).epsilon(1e-14));
        CHECK(bp >= pi / 4.0 - 1e-12);
        CHECK(bp <= 3.0 * pi / 4.0 + 1e-12);
    }
}

TEST_CASE("band gap at the zone points") {
    CHECK(band_gap_at(0.0) == doctest::Approx(pi / 2.0).epsilon(1e-13));
    CHECK(band_gap_at(pi) == doctest::Approx(pi / 2.0).epsilon(1e-13));
    CHECK(band_gap_at(pi / 2.0) == doctest::Approx(pi).epsilon(1e-13));
}

TEST_CASE("step operator properties") {
    SUBCASE("kappa = 0 is the coin itself") {
        const MomentumOperator op = step_operator(0.0);
        const CoinOp c = CoinOp::balanced();
        CHECK(std::abs(op.m11 - c.c11) < 1e-15);
        CHECK(std::abs(op.m12 - c.c12) < 1e-15);
        CHECK(std::abs(op.m21 - c.c21) < 1e-15);
        CHECK(std::abs(op.m22 - c.c22) < 1e-15);
    }

    SUBCASE("trace, determinant, unitarity") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> uni(-pi, pi);
        for (int i = 0; i < 200; ++i) {
            const double kappa = uni(rng);
            const MomentumOperator op = step_operator(kappa);
            const Complex trace = op.m11 + op.m22;
            CHECK(std::abs(trace - sqrt2 * std::cos(kappa)) < 1e-12);
            const Complex det = op.m11 * op.m22 - op.m12 * op.m21;
            CHECK(std::abs(det - 1.0) < 1e-12);
            // M M† = I
            CHECK(std::abs(std::norm(op.m11) + std::norm(op.m12) - 1.0) <
                  1e-12);
            CHECK(std::abs(std::norm(op.m21) + std::norm(op.m22) - 1.0) <
                  1e-12);
            CHECK(std::abs(op.m11 * std::conj(op.m21) +
                           op.m12 * std::conj(op.m22)) < 1e-12);
        }
        const MomentumOperator quarter = step_operator(pi / 4.0);
        CHECK(std::abs(quarter.m11 + quarter.m22 - Complex{1.0, 0.0}) <
              1e-12);
    }

    SUBCASE("eigenvalue phases at kappa = pi/2") {
        const MomentumOperator op = step_operator(pi / 2.0);
        const auto [plus, minus] = band_eigenvectors(pi / 2.0);
        const Complex lp = apply_row(op.m11, op.m12, plus) / plus.up;
        CHECK(std::arg(lp) == doctest::Approx(pi / 2.0).epsilon(1e-12));
        const Complex lm = apply_row(op.m11, op.m12, minus) / minus.up;
        CHECK(std::arg(lm) == doctest::Approx(-pi / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("band eigenvectors") {
    SUBCASE("eigenvector equation at kappa = 1.1") {
        const double kappa = 1.1;
        const MomentumOperator op = step_operator(kappa);
        const auto [bp, bm] = dispersion(kappa);
        const auto [plus, minus] = band_eigenvectors(kappa);
        const Complex lp = std::polar(1.0, bp);
        CHECK(std::abs(apply_row(op.m11, op.m12, plus) - lp * plus.up) <
              1e-12);
        CHECK(std::abs(apply_row(op.m21, op.m22, plus) - lp * plus.down) <
              1e-12);
        const Complex lm = std::polar(1.0, bm);
        CHECK(std::abs(apply_row(op.m11, op.m12, minus) - lm * minus.up) <
              1e-12);
        CHECK(std::abs(apply_row(op.m21, op.m22, minus) - lm * minus.down) <
              1e-12);
    }

    SUBCASE("orthonormal at kappa = 0.3") {
        const auto [plus, minus] = band_eigenvectors(0.3);
        CHECK(plus.norm_sq() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(minus.norm_sq() == doctest::Approx(1.0).epsilon(1e-13));
        const Complex overlap =
            std::conj(plus.up) * minus.up + std::conj(plus.down) * minus.down;
        CHECK(std::abs(overlap) < 1e-12);
    }

    SUBCASE("equal internal weights at kappa = 0") {
        const auto [plus, minus] = band_eigenvectors(0.0);
        CHECK(std::abs(plus.up) == doctest::Approx(1.0 / sqrt2).epsilon(1e-13));
        CHECK(std::abs(plus.down) ==
              doctest::Approx(1.0 / sqrt2).epsilon(1e-13));
        CHECK(std::abs(minus.up) ==
              doctest::Approx(1.0 / sqrt2).epsilon(1e-13));
        CHECK(std::abs(minus.down) ==
              doctest::Approx(1.0 / sqrt2).epsilon(1e-13));
        // phase convention: first component real-positive
        CHECK(plus.up.imag() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(plus.up.real() > 0.0);
    }
}

TEST_CASE("flat band curvature at kappa = +-pi/2") {
    const double h = 1e-3;
    for (const double k0 : {pi / 2.0, -pi / 2.0}) {
        const double d2 = (dispersion(k0 + h).first -
                           2.0 * dispersion(k0).first +
                           dispersion(k0 - h).first) /
                          (h * h);
        CHECK(std::abs(d2) < 1e-6);
    }
}

TEST_CASE("band splitting at the zone center is pi/2") {
    auto [bp, bm] = dispersion(0.0);
    CHECK(bp - bm == doctest::Approx(pi / 2.0).epsilon(1e-15));
}

TEST_CASE("parabolic expansion near the zone center") {
    for (double kappa = -0.25; kappa <= 0.25; kappa += 0.01) {
        const double approx = pi / 4.0 + kappa * kappa / 2.0;
        CHECK(std::abs(dispersion(kappa).first - approx) < 0.01);
    }
}

TEST_CASE("band structure sampling") {
    const auto bands = BandStructure::sample(512, 0.0, pi);
    CHECK(bands.kappa_grid.front() == 0.0);
    CHECK(bands.kappa_grid.back() == pi);
    CHECK(bands.beta_plus.front() == doctest::Approx(pi / 4.0));
    CHECK(bands.beta_plus.back() == doctest::Approx(3.0 * pi / 4.0));
    for (std::size_t j = 0; j < bands.kappa_grid.size(); ++j)
        CHECK(bands.beta_plus[j] == doctest::Approx(-bands.beta_minus[j]));
}

TEST_CASE("momentum_evolve") {
    const CoinOp coin = CoinOp::balanced();

    SUBCASE("requires a power-of-two window") {
        const WalkState s = make_initial(0, {{0.0, 0.0}, {1.0, 0.0}}, -70, 70);
        CHECK_THROWS_AS(momentum_evolve(s, 1), error);
    }

    SUBCASE("zero steps is the identity") {
        const WalkState s =
            make_initial(0, {{0.0, 0.0}, {1.0, 0.0}}, -128, 127);
        const WalkState out = momentum_evolve(s, 0);
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            CHECK(std::abs(out.u[i] - s.u[i]) < 1e-12);
            CHECK(std::abs(out.v[i] - s.v[i]) < 1e-12);
        }
    }

    SUBCASE("matches position-space evolution after 70 steps") {
        const WalkState start =
            make_initial(0, {{0.0, 0.0}, {1.0, 0.0}}, -128, 127);
        const Trajectory traj = evolve(start, 70, coin, PhaseProfile::none());
        const WalkState oracle = momentum_evolve(start, 70);
        double worst = 0.0;
        for (std::size_t i = 0; i < oracle.u.size(); ++i) {
            worst = std::max(worst, std::abs(oracle.u[i] - traj.back().u[i]));
            worst = std::max(worst, std::abs(oracle.v[i] - traj.back().v[i]));
        }
        CHECK(worst < 1e-10);
    }

    SUBCASE("band eigenstates pick up a global phase only") {
        // exact plane wave on the ring: kappa on the transform grid
        const int n_cells = 256;
        const double kappa = 2.0 * pi * 20.0 / n_cells;
        const auto [bp, bm] = dispersion(kappa);
        const auto [vec, vec_minus] = band_eigenvectors(kappa);
        (void)vec_minus;
        WalkState wave;
        wave.m = 0;
        wave.n_min = -n_cells / 2;
        wave.n_max = n_cells / 2 - 1;
        const double scale = 1.0 / std::sqrt(static_cast<double>(n_cells));
        for (int n = wave.n_min; n <= wave.n_max; ++n) {
            const Complex amp = scale * std::polar(1.0, kappa * n);
            wave.u.push_back(amp * vec.up);
            wave.v.push_back(amp * vec.down);
        }
        const int steps = 16;
        const WalkState out = momentum_evolve(wave, steps);
        const Complex expected_phase = std::polar(1.0, bp * steps);
        for (std::size_t i = 0; i < wave.u.size(); ++i) {
            CHECK(std::abs(std::abs(out.u[i]) - std::abs(wave.u[i])) < 1e-12);
            CHECK(std::abs(out.u[i] - expected_phase * wave.u[i]) < 1e-12);
            CHECK(std::abs(out.v[i] - expected_phase * wave.v[i]) < 1e-12);
        }
        CHECK(fidelity(wave, out) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("momentum centroid") {
    SUBCASE("reads back the packet momentum") {
        const WalkState packet =
            make_packet(0, 10.0, 0.2, Band::plus, -130, 130);
        CHECK(std::abs(momentum_centroid(packet) - 0.2) < 0.01);
    }

    SUBCASE("constant without a gradient") {
        const int steps = 24;
        const int radius = 130 + steps;
        const WalkState packet =
            make_packet(0, 10.0, 0.2, Band::plus, -radius, radius);
        const Trajectory traj =
            evolve(packet, steps, CoinOp::balanced(), PhaseProfile::none());
        const auto series = momentum_centroid_series(traj);
        for (double c : series)
            CHECK(std::abs(c - series.front()) < 1e-10);
    }

    SUBCASE("zero state is an error") {
        WalkState z = make_initial(0, {{0.0, 0.0}, {1.0, 0.0}}, -4, 4);
        z.v[z.index(0)] = Complex{};
        CHECK_THROWS_AS(momentum_centroid(z), error);
    }
}

TEST_CASE("band populations") {
    SUBCASE("complete for arbitrary states and offsets") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        WalkState s = make_initial(0, {{0.0, 0.0}, {1.0, 0.0}}, -20, 20);
        for (auto& x : s.u)
            x = Complex{uni(rng), uni(rng)};
        for (auto& x : s.v)
            x = Complex{uni(rng), uni(rng)};
        for (const double offset : {0.0, 0.3, -1.7}) {
            const auto [pp, pm] = band_populations(s, offset);
            CHECK(pp + pm == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(pp >= 0.0);
            CHECK(pm >= 0.0);
        }
    }

    SUBCASE("invariant under gradient-free evolution") {
        const int steps = 20;
        const int radius = 130 + steps;
        const WalkState packet =
            make_packet(0, 10.0, 0.5, Band::plus, -radius, radius);
        const Trajectory traj =
            evolve(packet, steps, CoinOp::balanced(), PhaseProfile::none());
        const auto [p0, m0] = band_populations(traj.front(), 0.0);
        for (const WalkState& s : traj.states) {
            const auto [pp, pm] = band_populations(s, 0.0);
            CHECK(std::abs(pp - p0) < 1e-10);
        }
        CHECK(m0 == doctest::Approx(1.0 - p0).epsilon(1e-12));
    }
}
