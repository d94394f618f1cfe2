// qwalk: discrete-time quantum walk simulator and analysis CLI.
//
// Verbs map to the experiments the library reproduces: free ballistic
// spreading (evolve), the two-band dispersion (bands), gradient-driven
// recovery (bloch), inter-loop oscillation (zitter), band transfer (lz) and
// parameter sweeps over the gradient denominator p (sweep).

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwalk/analysis.hpp"
#include "qwalk/io.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

namespace {

using namespace qwalk;

std::string fmt(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

struct CommonOptions {
    std::string preset;
    std::string config_path;
    std::string out_dir;
    int steps = -1; // -1: keep preset/config value
    long alpha_q = 0;
    long alpha_p = 0;
    double alpha_float = 0.0;
    bool has_alpha_rational = false;
    bool has_alpha_float = false;
    int position = 0;
    bool has_position = false;
    std::string spinor = "down";
    double packet_width = 0.0; // > 0 selects a packet start
    double packet_kappa = 0.0;
    std::string packet_band = "plus";
    int samples = 512;
    int record_every = 0; // 0: keep config value
    int threads = 0;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_packet,
                      bool with_alpha = true) {
    cmd->add_option("--preset", opt.preset, "Built-in preset: fig2|fig4|fig5")
        ->check(CLI::IsMember({"fig2", "fig4", "fig5"}));
    cmd->add_option("--config", opt.config_path, "Run configuration file");
    cmd->add_option("--steps", opt.steps, "Number of steps");
    if (with_alpha) {
        auto* q = cmd->add_option("--alpha-q", opt.alpha_q,
                                  "Gradient numerator: alpha = 2*pi*q/p");
        auto* p = cmd->add_option("--alpha-p", opt.alpha_p,
                                  "Gradient denominator: alpha = 2*pi*q/p");
        q->needs(p);
        cmd->add_option("--alpha-float", opt.alpha_float,
                        "Gradient in radians per position")
            ->excludes(q);
    }
    cmd->add_option("--position", opt.position, "Start position n0");
    cmd->add_option("--spinor", opt.spinor, "Initial internal state")
        ->check(CLI::IsMember({"up", "down", "plus"}));
    if (with_packet) {
        cmd->add_option("--packet-width", opt.packet_width,
                        "Gaussian packet width (>= 1); selects a packet start");
        cmd->add_option("--packet-kappa", opt.packet_kappa,
                        "Packet center quasi-momentum");
        cmd->add_option("--packet-band", opt.packet_band, "Packet band")
            ->check(CLI::IsMember({"plus", "minus"}));
    }
    cmd->add_option("--samples", opt.samples, "Sample count (bands verb)");
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_option("--record-every", opt.record_every,
                    "Record every K-th step in grid/heatmap outputs");
    cmd->add_option("--threads", opt.threads,
                    "Worker threads (speed only; output bytes are identical "
                    "for any value)");
}

io::RunConfig resolve_config(const CommonOptions& opt) {
    io::RunConfig cfg;
    if (!opt.preset.empty() && !opt.config_path.empty())
        throw error("--preset and --config are mutually exclusive");
    if (!opt.preset.empty())
        cfg = io::parse_config(io::preset_config(opt.preset));
    else if (!opt.config_path.empty())
        cfg = io::load_config(opt.config_path);
    else {
        cfg.steps = 70;
        cfg.spinor = Spinor{{0.0, 0.0}, {1.0, 0.0}};
        cfg.outputs = {"grid-u", "grid-v", "heatmap-u", "heatmap-v"};
    }

    if (opt.steps >= 0)
        cfg.steps = opt.steps;
    if (opt.has_position)
        cfg.position = opt.position;
    if (opt.has_alpha_rational)
        cfg.phase = PhaseProfile::linear_rational(opt.alpha_q, opt.alpha_p);
    else if (opt.has_alpha_float)
        cfg.phase = PhaseProfile::linear_float(opt.alpha_float);
    if (opt.record_every > 0)
        cfg.record_every = opt.record_every;

    if (opt.spinor == "up")
        cfg.spinor = Spinor{{1.0, 0.0}, {0.0, 0.0}};
    else if (opt.spinor == "down")
        cfg.spinor = Spinor{{0.0, 0.0}, {1.0, 0.0}};
    else if (opt.spinor == "plus") {
        const double s = 1.0 / std::sqrt(2.0);
        cfg.spinor = Spinor{{s, 0.0}, {s, 0.0}};
    }
    return cfg;
}

std::filesystem::path ensure_out_dir(const CommonOptions& opt) {
    if (opt.out_dir.empty())
        throw error("--out DIR is required for this verb");
    std::filesystem::path dir(opt.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Window radius beyond which the truncated packet tail falls under 1e-12.
int packet_support(double width) {
    return static_cast<int>(
               std::ceil(2.0 * width * std::sqrt(std::log(1e12)))) +
           1;
}

Trajectory run_trajectory(const io::RunConfig& cfg, const CommonOptions& opt) {
    if (opt.packet_width > 0.0) {
        const Band band =
            (opt.packet_band == "minus") ? Band::minus : Band::plus;
        const int radius = packet_support(opt.packet_width) + cfg.steps;
        const WalkState start =
            make_packet(cfg.position, opt.packet_width, opt.packet_kappa,
                        band, cfg.position - radius, cfg.position + radius);
        return evolve(start, cfg.steps, cfg.coin, cfg.phase);
    }
    return io::run(cfg);
}

void write_outputs(const Trajectory& traj, const io::RunConfig& cfg,
                   const std::filesystem::path& dir) {
    std::vector<analysis::SeriesReport> series;
    for (const std::string& token : cfg.outputs) {
        if (token == "grid-u")
            io::write_grid(traj, Field::u, dir / "grid-u.csv",
                           cfg.record_every);
        else if (token == "grid-v")
            io::write_grid(traj, Field::v, dir / "grid-v.csv",
                           cfg.record_every);
        else if (token == "grid-total")
            io::write_grid(traj, Field::total, dir / "grid-total.csv",
                           cfg.record_every);
        else if (token == "heatmap-u")
            io::write_heatmap(traj, Field::u, dir / "heatmap-u.pgm",
                              cfg.record_every);
        else if (token == "heatmap-v")
            io::write_heatmap(traj, Field::v, dir / "heatmap-v.pgm",
                              cfg.record_every);
        else if (token == "series:energy") {
            auto [eu, ev] = analysis::loop_energy_series(traj);
            series.push_back(std::move(eu));
            series.push_back(std::move(ev));
        } else if (token == "series:zitter") {
            auto [eu, ev] = analysis::loop_energy_series(traj);
            eu.name = "zitter";
            eu.extracted_scalar = analysis::zitter_period(eu);
            series.push_back(std::move(eu));
        } else if (token == "series:variance") {
            series.push_back(analysis::variance_series(traj));
        } else if (token == "series:corner") {
            analysis::SeriesReport r{"corner_decay",
                                     {},
                                     {},
                                     analysis::corner_decay_check(traj)};
            series.push_back(std::move(r));
        }
    }
    if (!series.empty())
        io::write_report(series, dir / "report.json");
}

int cmd_evolve(const CommonOptions& opt) {
    const io::RunConfig cfg = resolve_config(opt);
    const auto dir = ensure_out_dir(opt);
    const Trajectory traj = run_trajectory(cfg, opt);
    write_outputs(traj, cfg, dir);
    const auto var = analysis::variance_series(traj);
    const double sigma = std::sqrt(std::max(0.0, var.values.back()));
    std::cout << "steps=" << cfg.steps
              << " norm_drift=" << fmt(std::abs(traj.back().norm() - 1.0))
              << " final_sigma=" << fmt(sigma) << '\n';
    return 0;
}

int cmd_bands(const CommonOptions& opt) {
    if (opt.samples < 2)
        throw error("--samples must be >= 2");
    const auto dir = ensure_out_dir(opt);
    const auto bands = spectral::BandStructure::sample(
        static_cast<std::size_t>(opt.samples), 0.0, pi);

    std::ofstream out(dir / "bands.csv", std::ios::binary);
    if (!out)
        throw error("cannot write " + (dir / "bands.csv").string());
    out << "kappa,beta_plus,beta_minus,gap\n";
    for (std::size_t j = 0; j < bands.kappa_grid.size(); ++j) {
        out << fmt(bands.kappa_grid[j]) << ',' << fmt(bands.beta_plus[j])
            << ',' << fmt(bands.beta_minus[j]) << ','
            << fmt(spectral::band_gap_at(bands.kappa_grid[j])) << '\n';
    }
    std::cout << "samples=" << opt.samples
              << " beta0=" << fmt(bands.beta_plus.front())
              << " betapi=" << fmt(bands.beta_plus.back()) << '\n';
    return 0;
}

int cmd_bloch(const CommonOptions& opt, long p_value) {
    long p = p_value;
    if (p <= 0 && opt.has_alpha_rational)
        p = opt.alpha_p;
    if (p <= 0)
        throw error("bloch needs --p P (or --alpha-q/--alpha-p)");

    CommonOptions run_opt = opt;
    run_opt.has_alpha_rational = true;
    run_opt.alpha_q = opt.has_alpha_rational ? opt.alpha_q : 1;
    run_opt.alpha_p = p;
    io::RunConfig cfg = resolve_config(run_opt);
    if (cfg.steps < 2 * p)
        cfg.steps = static_cast<int>(2 * p);

    const Trajectory traj = run_trajectory(cfg, run_opt);
    const auto rec = analysis::bloch_recovery(traj, static_cast<int>(p));

    if (!opt.out_dir.empty()) {
        const auto dir = ensure_out_dir(opt);
        write_outputs(traj, cfg, dir);
        analysis::SeriesReport r{"bloch_fidelity", {}, {}, rec.peak_fidelity};
        for (const WalkState& s : traj.states) {
            r.m_values.push_back(s.m);
            r.values.push_back(fidelity(traj.front(), s));
        }
        io::write_report({r}, dir / "bloch.json");
    }
    std::cout << "peak_step=" << rec.peak_step
              << " peak_fidelity=" << fmt(rec.peak_fidelity) << '\n';
    return 0;
}

int cmd_zitter(const CommonOptions& opt) {
    CommonOptions run_opt = opt;
    io::RunConfig cfg = resolve_config(run_opt);
    if (opt.steps < 0 && opt.preset.empty() && opt.config_path.empty())
        cfg.steps = 40;
    const Trajectory traj = run_trajectory(cfg, run_opt);
    auto [eu, ev] = analysis::loop_energy_series(traj);
    const double period = analysis::zitter_period(eu);
    eu.extracted_scalar = period;
    if (!opt.out_dir.empty()) {
        const auto dir = ensure_out_dir(opt);
        io::write_report({eu, ev}, dir / "zitter.json");
    }
    std::cout << "period=" << fmt(period) << '\n';
    return 0;
}

int cmd_lz(const CommonOptions& opt) {
    CommonOptions run_opt = opt;
    if (run_opt.packet_width <= 0.0)
        run_opt.packet_width = 10.0;
    io::RunConfig cfg = resolve_config(run_opt);
    if (cfg.phase.mode() == PhaseProfile::Mode::tabulated)
        throw error("lz needs a linear phase gradient");
    const double alpha = cfg.phase.alpha();
    if (alpha == 0.0)
        throw error("lz needs a nonzero gradient (--alpha-q/--alpha-p)");
    if (opt.steps < 0 &&
        cfg.phase.mode() == PhaseProfile::Mode::linear_rational)
        cfg.steps = static_cast<int>(2 * cfg.phase.p()); // one Bloch period

    // Packet run with the gradient split evenly between the loops: the
    // summed gradient (the physics) is unchanged and the band projection
    // reads clean adiabatic populations.
    const Band band =
        (run_opt.packet_band == "minus") ? Band::minus : Band::plus;
    const int radius = packet_support(run_opt.packet_width) + cfg.steps;
    const WalkState start =
        make_packet(cfg.position, run_opt.packet_width, run_opt.packet_kappa,
                    band, cfg.position - radius, cfg.position + radius);
    const auto split =
        PhaseProfile::linear_split(alpha / 2.0, alpha / 2.0,
                                   cfg.position - radius,
                                   cfg.position + radius);
    const Trajectory traj = evolve(start, cfg.steps, cfg.coin, split);
    const auto series = analysis::lz_transfer_series(traj, alpha);
    if (!opt.out_dir.empty()) {
        const auto dir = ensure_out_dir(opt);
        io::write_report({series}, dir / "lz.json");
    }
    std::cout << "max_transfer=" << fmt(*series.extracted_scalar) << '\n';
    return 0;
}

int cmd_sweep(const CommonOptions& opt, const std::vector<long>& p_values) {
    if (p_values.empty())
        throw error("sweep needs at least one --alpha-p value");
    const auto dir = ensure_out_dir(opt);

    struct Row {
        long p;
        int peak_step;
        double peak_fidelity;
        double max_transfer;
    };
    std::vector<Row> rows(p_values.size());
    std::vector<std::string> failures(p_values.size());

    // Sweep points are independent runs; rows are assembled in input order,
    // so the report does not depend on scheduling.
    parallel::for_each_index(
        static_cast<std::ptrdiff_t>(p_values.size()), [&](std::ptrdiff_t i) {
            try {
                const long p = p_values[static_cast<std::size_t>(i)];
                const int steps = static_cast<int>(2 * p);
                const PhaseProfile phase = PhaseProfile::linear_rational(1, p);

                const WalkState start = make_initial(
                    0, Spinor{{0.0, 0.0}, {1.0, 0.0}}, -steps, steps);
                const Trajectory traj =
                    evolve(start, steps, CoinOp::balanced(), phase);
                const auto rec =
                    analysis::bloch_recovery(traj, static_cast<int>(p));

                const double width = 10.0;
                const int radius = packet_support(width) + steps;
                const WalkState packet = make_packet(0, width, 0.0,
                                                     Band::plus, -radius,
                                                     radius);
                const auto split = PhaseProfile::linear_split(
                    phase.alpha() / 2.0, phase.alpha() / 2.0, -radius,
                    radius);
                const Trajectory ptraj =
                    evolve(packet, steps, CoinOp::balanced(), split);
                const auto lz =
                    analysis::lz_transfer_series(ptraj, phase.alpha());

                rows[static_cast<std::size_t>(i)] =
                    Row{p, rec.peak_step, rec.peak_fidelity,
                        *lz.extracted_scalar};
            } catch (const std::exception& e) {
                failures[static_cast<std::size_t>(i)] = e.what();
            }
        });

    for (const std::string& f : failures)
        if (!f.empty())
            throw error("sweep point failed: " + f);

    std::vector<analysis::SeriesReport> reports;
    for (const Row& r : rows) {
        analysis::SeriesReport rep;
        rep.name = "p=" + std::to_string(r.p);
        rep.m_values = {r.peak_step};
        rep.values = {r.peak_fidelity, r.max_transfer};
        rep.extracted_scalar = r.peak_fidelity;
        reports.push_back(std::move(rep));
        std::cout << "p=" << r.p << " peak_step=" << r.peak_step
                  << " peak_fidelity=" << fmt(r.peak_fidelity)
                  << " max_transfer=" << fmt(r.max_transfer) << '\n';
    }
    io::write_report(reports, dir / "sweep.json");
    return 0;
}

int cmd_presets() {
    for (const char* name : {"fig2", "fig4", "fig5"})
        std::cout << name << ":\n" << io::preset_config(name) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time quantum walk simulator"};
    app.require_subcommand(1);

    CommonOptions opt;
    long bloch_p = 0;
    std::vector<long> sweep_p;

    auto* evolve_cmd = app.add_subcommand(
        "evolve", "Run a walk and write grids/heatmaps");
    add_common_flags(evolve_cmd, opt, true);

    auto* bands_cmd =
        app.add_subcommand("bands", "Sample the two-band dispersion");
    add_common_flags(bands_cmd, opt, false);

    auto* bloch_cmd = app.add_subcommand(
        "bloch", "Gradient-driven localization and recovery");
    add_common_flags(bloch_cmd, opt, true);
    bloch_cmd->add_option("--p", bloch_p,
                          "Gradient denominator, alpha = 2*pi/p");

    auto* zitter_cmd = app.add_subcommand(
        "zitter", "Inter-loop energy oscillation period");
    add_common_flags(zitter_cmd, opt, true);

    auto* lz_cmd =
        app.add_subcommand("lz", "Band transfer under a gradient");
    add_common_flags(lz_cmd, opt, true);

    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Recovery and transfer metrics over several p");
    add_common_flags(sweep_cmd, opt, false, false);
    sweep_cmd->add_option("--alpha-p", sweep_p,
                          "Gradient denominators to sweep (repeatable)")
        ->take_all();

    auto* presets_cmd =
        app.add_subcommand("presets", "List built-in presets");
    (void)presets_cmd;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    // Flag presence, for override semantics.
    CLI::App* sub = app.get_subcommands().front();
    auto given = [&](const char* flag) {
        const CLI::Option* o = sub->get_option_no_throw(flag);
        return o != nullptr && o->count() > 0;
    };
    opt.has_position = given("--position");
    if (sub->get_name() != "sweep") {
        opt.has_alpha_rational = given("--alpha-p");
        if (opt.has_alpha_rational && !given("--alpha-q"))
            opt.alpha_q = 1; // bare --alpha-p P means alpha = 2*pi/P
    }
    opt.has_alpha_float = given("--alpha-float");

    if (opt.threads > 0)
        parallel::set_threads(opt.threads);

    try {
        if (app.got_subcommand("evolve"))
            return cmd_evolve(opt);
        if (app.got_subcommand("bands"))
            return cmd_bands(opt);
        if (app.got_subcommand("bloch"))
            return cmd_bloch(opt, bloch_p);
        if (app.got_subcommand("zitter"))
            return cmd_zitter(opt);
        if (app.got_subcommand("lz"))
            return cmd_lz(opt);
        if (app.got_subcommand("sweep"))
            return cmd_sweep(opt, sweep_p);
        if (app.got_subcommand("presets"))
            return cmd_presets();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
