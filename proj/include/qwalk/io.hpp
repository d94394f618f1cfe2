#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::io {

// A complete run description. The JSON grammar is documented in the README
// and frozen by the golden files under tests/golden/.
struct RunConfig {
    int steps = 0;
    int position = 0;
    Spinor spinor;
    PhaseProfile phase = PhaseProfile::none();
    CoinOp coin = CoinOp::balanced();
    std::vector<std::string> outputs; // validated tokens, see parse_config
    int record_every = 1;
};

// Strict parse: unknown keys are errors (a silently ignored typo runs the
// wrong experiment), syntax errors carry line/column, invariant violations
// carry the offending key path.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& file);

// Built-in experiment presets ("fig2", "fig4", "fig5") as config text:
// 70 steps from |down> at 0 under alpha = 0, 2*pi/32 and 2*pi/5.
std::string preset_config(const std::string& name);

// Runs the configured walk on the window [position - steps, position + steps].
Trajectory run(const RunConfig& config);

// Intensity grid as CSV (UTF-8, LF): header "m,n_min,...,n_max", one row per
// recorded step, doubles printed as shortest round-trip decimals,
// structurally zero sites as "0".
void write_grid(const Trajectory& traj, Field which,
                const std::filesystem::path& dest, int record_every = 1);

// Binary PGM (P5), one row per recorded step, log-scaled over six decades:
//   pixel = round(255 * (log10(I/I_max) + 6) / 6), clamped to [0, 255],
// with I = 0 mapping to 0.
void write_heatmap(const Trajectory& traj, Field which,
                   const std::filesystem::path& dest, int record_every = 1);

// Series reports as JSON with stable key order; byte-identical for
// identical inputs.
void write_report(const std::vector<analysis::SeriesReport>& reports,
                  const std::filesystem::path& dest);

} // namespace qwalk::io
