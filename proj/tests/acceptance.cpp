// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Thresholds are fixed constants; the regression values marked "frozen"
// were produced by the first verified run of this implementation and guard
// against silent drift.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/io.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %s  (%s)\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    if (!ok)
        ++failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

Trajectory delta_run(int steps, const PhaseProfile& phase) {
    const WalkState start =
        make_initial(0, Spinor{{0.0, 0.0}, {1.0, 0.0}}, -steps, steps);
    return evolve(start, steps, CoinOp::balanced(), phase);
}

// Packet evolved with the gradient split evenly between the loops; the
// summed gradient is alpha, the spectrum drifts rigidly by alpha/2 per
// step.
Trajectory split_packet_run(int steps, double width, double kappa0,
                            double alpha) {
    const int radius =
        static_cast<int>(std::ceil(2.0 * width * std::sqrt(std::log(1e12)))) +
        1 + steps;
    const WalkState start =
        make_packet(0, width, kappa0, Band::plus, -radius, radius);
    const auto split =
        PhaseProfile::linear_split(alpha / 2.0, alpha / 2.0, -radius, radius);
    return evolve(start, steps, CoinOp::balanced(), split);
}

// --- frozen regression values (first verified run) ---------------------
// Bloch recovery peak fidelities for p = 8, 16, 32; the acceptance bound is
// 90% of these.
constexpr double frozen_recovery_p8 = 0.99220275878906;
constexpr double frozen_recovery_p16 = 0.9999694826547;
constexpr double frozen_recovery_p32 = 0.999999999534327;
// Max band transfer over one Bloch period for alpha = 2*pi/p.
constexpr double frozen_transfer_p5 = 0.348893738058143;
constexpr double frozen_transfer_p16 = 0.0342495732838204;
constexpr double frozen_transfer_p32 = 0.0104769667180333;
// Hyperbola-pattern correlation of the 70-step run (the acceptance bound is
// 90% of this).
constexpr double frozen_hyperbola_corr = 0.5117;

void criterion_1_unitarity() {
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory traj = delta_run(70, PhaseProfile::none());
    double worst = 0.0;
    for (const WalkState& s : traj.states)
        worst = std::max(worst, std::abs(s.norm() - 1.0));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report("01 unitarity", worst < 1e-10 && seconds < 5.0,
           "max |norm-1| = " + fmt(worst) + ", runtime = " + fmt(seconds) +
               " s");
}

void criterion_2_dispersion() {
    const auto [b0, b0m] = spectral::dispersion(0.0);
    const auto [bp, bpm] = spectral::dispersion(pi);
    bool ok = std::abs(b0 - pi / 4.0) < 1e-12 &&
              std::abs(bp - 3.0 * pi / 4.0) < 1e-12 &&
              std::abs(b0m + pi / 4.0) < 1e-12 &&
              std::abs(bpm + 3.0 * pi / 4.0) < 1e-12;
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double kappa = -pi + 2.0 * pi * i / 10000.0;
        const auto [plus, minus] = spectral::dispersion(kappa);
        lo = std::min({lo, std::abs(plus), std::abs(minus)});
        hi = std::max({hi, std::abs(plus), std::abs(minus)});
    }
    ok = ok && lo >= pi / 4.0 - 1e-12 && hi <= 3.0 * pi / 4.0 + 1e-12;
    report("02 dispersion endpoints and band range", ok,
           "beta(0) = " + fmt(b0) + ", beta(pi) = " + fmt(bp) +
               ", |beta| range = [" + fmt(lo) + ", " + fmt(hi) + "]");
}

void criterion_3_zitterbewegung() {
    const Trajectory traj = delta_run(40, PhaseProfile::none());
    const auto [eu, ev] = analysis::loop_energy_series(traj);
    const double period = analysis::zitter_period(eu);
    report("03 zitterbewegung period", std::abs(period - 4.0) <= 0.2,
           "period = " + fmt(period) + " steps");
}

void criterion_4_bloch_recovery() {
    struct Case {
        int p;
        double frozen;
    };
    const Case cases[] = {{8, frozen_recovery_p8},
                          {16, frozen_recovery_p16},
                          {32, frozen_recovery_p32}};
    bool ok = true;
    std::string detail;
    for (const Case& c : cases) {
        const Trajectory traj =
            delta_run(2 * c.p, PhaseProfile::linear_rational(1, c.p));
        const auto rec = analysis::bloch_recovery(traj, c.p);
        const bool step_ok = rec.peak_step == 2 * c.p;
        const bool fid_ok = rec.peak_fidelity >= 0.9 * c.frozen;
        ok = ok && step_ok && fid_ok;
        detail += "p=" + std::to_string(c.p) +
                  ": peak_step=" + std::to_string(rec.peak_step) +
                  " fidelity=" + fmt(rec.peak_fidelity) + " ";
    }
    report("04 bloch recovery at m = 2p", ok, detail);
}

void criterion_5_momentum_drift() {
    const int steps = 32;
    const Trajectory traj =
        split_packet_run(steps, 10.0, 0.0, 2.0 * pi / 32.0);
    const auto centroids = spectral::momentum_centroid_series(traj);
    // least-squares slope of centroid vs m
    const double n = static_cast<double>(centroids.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < centroids.size(); ++i) {
        sx += static_cast<double>(i);
        sy += centroids[i];
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < centroids.size(); ++i) {
        const double dx = static_cast<double>(i) - sx / n;
        sxx += dx * dx;
        sxy += dx * (centroids[i] - sy / n);
    }
    const double slope = sxy / sxx;
    const double target = pi / 32.0;
    report("05 momentum drift alpha/2 per step",
           std::abs(slope - target) <= 0.05 * target,
           "slope = " + fmt(slope) + ", target = " + fmt(target));
}

void criterion_6_gauge_invariance() {
    const int steps = 70;
    bool ok = true;
    std::string detail;
    for (const long p : {32L, 5L}) {
        const double alpha = 2.0 * pi / static_cast<double>(p);
        std::vector<double> half_u, half_v;
        for (int n = -steps; n <= steps; ++n) {
            half_u.push_back(n * alpha / 2.0);
            half_v.push_back(n * alpha / 2.0);
        }
        const Trajectory a =
            delta_run(steps, PhaseProfile::linear_rational(1, p));
        const Trajectory b = delta_run(
            steps, PhaseProfile::tabulated(-steps, half_u, half_v));
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int n = -steps; n <= steps; ++n) {
                worst = std::max(worst,
                                 std::abs(a[i].intensity(n, Field::u) -
                                          b[i].intensity(n, Field::u)));
                worst = std::max(worst,
                                 std::abs(a[i].intensity(n, Field::v) -
                                          b[i].intensity(n, Field::v)));
            }
        ok = ok && worst < 1e-12;
        detail += "p=" + std::to_string(p) + ": max|dI| = " + fmt(worst) + " ";
    }
    report("06 gauge invariance of intensities", ok, detail);
}

void criterion_7_edge_decay() {
    bool ok = true;
    std::string detail;
    const PhaseProfile profiles[] = {PhaseProfile::none(),
                                     PhaseProfile::linear_rational(1, 32),
                                     PhaseProfile::linear_rational(1, 5)};
    const char* names[] = {"0", "2pi/32", "2pi/5"};
    for (int i = 0; i < 3; ++i) {
        const double worst =
            analysis::corner_decay_check(delta_run(70, profiles[i]));
        ok = ok && worst < 1e-9;
        detail += std::string(names[i]) + ": " + fmt(worst) + " ";
    }
    report("07 edge decay 2^-m", ok, detail);
}

void criterion_8_oracle_equivalence() {
    const WalkState start =
        make_initial(0, Spinor{{0.0, 0.0}, {1.0, 0.0}}, -128, 127);
    const Trajectory traj =
        evolve(start, 70, CoinOp::balanced(), PhaseProfile::none());
    const WalkState oracle = spectral::momentum_evolve(start, 70);
    double worst = 0.0;
    for (std::size_t i = 0; i < oracle.u.size(); ++i) {
        worst = std::max(worst, std::abs(oracle.u[i] - traj.back().u[i]));
        worst = std::max(worst, std::abs(oracle.v[i] - traj.back().v[i]));
    }
    report("08 momentum-space oracle equivalence", worst < 1e-10,
           "max entry difference = " + fmt(worst));
}

void criterion_9_lz_ordering() {
    struct Case {
        long p;
        double frozen;
        double measured = 0.0;
    };
    Case cases[] = {{5, frozen_transfer_p5},
                    {16, frozen_transfer_p16},
                    {32, frozen_transfer_p32}};
    std::string detail;
    bool ok = true;
    for (Case& c : cases) {
        const int steps = static_cast<int>(2 * c.p); // one Bloch period
        const double alpha = 2.0 * pi / static_cast<double>(c.p);
        const Trajectory traj = split_packet_run(steps, 10.0, 0.0, alpha);
        const auto series = analysis::lz_transfer_series(traj, alpha);
        c.measured = *series.extracted_scalar;
        detail += "T(2pi/" + std::to_string(c.p) + ") = " + fmt(c.measured) +
                  " ";
        // regression against the frozen first-run value
        ok = ok && std::abs(c.measured - c.frozen) <=
                       1e-6 * std::max(1.0, std::abs(c.frozen));
    }
    ok = ok && cases[0].measured > cases[1].measured &&
         cases[1].measured > cases[2].measured;
    report("09 landau-zener transfer ordering", ok, detail);
}

void criterion_10_hyperbola_pattern() {
    const Trajectory traj = delta_run(70, PhaseProfile::none());
    const double corr = analysis::hyperbola_match(traj, Field::v, 20, 70, 0.5);
    // Threshold calibrated against the first verified run and frozen at 90%
    // of it (measured 0.5117 on the restricted cone).
    report("10 hyperbola pattern correlation",
           corr > 0.9 * frozen_hyperbola_corr,
           "corr = " + fmt(corr) + ", bound = " +
               fmt(0.9 * frozen_hyperbola_corr));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return "<missing " + p.string() + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_11_determinism() {
    const fs::path root =
        fs::temp_directory_path() /
        ("qwalk_accept_" + std::to_string(::getpid()));
    fs::remove_all(root);
    bool ok = true;
    std::string detail;
    for (const std::string preset : {"fig2", "fig4"}) {
        const fs::path a = root / (preset + "_t1");
        const fs::path b = root / (preset + "_t4");
        const std::string base = std::string(QWALK_CLI) +
                                 " evolve --preset " + preset + " --out ";
        const int ra =
            std::system((base + a.string() + " --threads 1 > /dev/null").c_str());
        const int rb =
            std::system((base + b.string() + " --threads 4 > /dev/null").c_str());
        if (ra != 0 || rb != 0) {
            ok = false;
            detail += preset + ": run failed ";
            continue;
        }
        for (const char* file :
             {"grid-u.csv", "grid-v.csv", "heatmap-u.pgm", "heatmap-v.pgm"}) {
            if (slurp(a / file) != slurp(b / file)) {
                ok = false;
                detail += preset + "/" + file + " differs ";
            }
        }
    }
    if (ok)
        detail = "all grid and heatmap bytes identical for threads 1 vs 4";
    fs::remove_all(root);
    report("11 thread-count determinism", ok, detail);
}

} // namespace

int main() {
    criterion_1_unitarity();
    criterion_2_dispersion();
    criterion_3_zitterbewegung();
    criterion_4_bloch_recovery();
    criterion_5_momentum_drift();
    criterion_6_gauge_invariance();
    criterion_7_edge_decay();
    criterion_8_oracle_equivalence();
    criterion_9_lz_ordering();
    criterion_10_hyperbola_pattern();
    criterion_11_determinism();

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
