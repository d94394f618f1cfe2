#include "qwalk/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace qwalk::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::string joined(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k)
                known = true;
        if (!known)
            throw config_error("unknown key '" + joined(path, it.key()) + "'");
    }
}

const json& require(const json& obj, const std::string& path,
                    const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw config_error("missing key '" + joined(path, key) + "'");
    return *it;
}

long as_integer(const json& value, const std::string& path) {
    if (!value.is_number_integer())
        throw config_error("'" + path + "' must be an integer");
    return value.get<long>();
}

double as_number(const json& value, const std::string& path) {
    if (!value.is_number())
        throw config_error("'" + path + "' must be a number");
    return value.get<double>();
}

Spinor parse_spinor(const json& value, const std::string& path) {
    if (value.is_string()) {
        const std::string name = value.get<std::string>();
        const double s = std::sqrt(0.5);
        if (name == "up")
            return Spinor{{1.0, 0.0}, {0.0, 0.0}};
        if (name == "down")
            return Spinor{{0.0, 0.0}, {1.0, 0.0}};
        if (name == "plus")
            return Spinor{{s, 0.0}, {s, 0.0}};
        throw config_error("'" + path +
                           "' must be one of up|down|plus or four reals");
    }
    if (value.is_array() && value.size() == 4) {
        std::array<double, 4> r{};
        for (std::size_t i = 0; i < 4; ++i)
            r[i] = as_number(value[i], path);
        const Spinor s{{r[0], r[1]}, {r[2], r[3]}};
        if (s.norm_sq() <= 0.0)
            throw config_error("'" + path + "' must not be zero");
        return s;
    }
    throw config_error(
        "'" + path +
        "' must be up|down|plus or [re_up, im_up, re_down, im_down]");
}

PhaseProfile parse_phase(const json& value, const std::string& path) {
    if (!value.is_object())
        throw config_error("'" + path + "' must be an object");
    const json& mode_value = require(value, path, "mode");
    if (!mode_value.is_string())
        throw config_error("'" + path + ".mode' must be a string");
    const std::string mode = mode_value.get<std::string>();
    try {
        if (mode == "linear-rational") {
            reject_unknown_keys(value, path, {"mode", "q", "p"});
            const long q = as_integer(require(value, path, "q"), path + ".q");
            const long p = as_integer(require(value, path, "p"), path + ".p");
            return PhaseProfile::linear_rational(q, p);
        }
        if (mode == "linear-float") {
            reject_unknown_keys(value, path, {"mode", "alpha"});
            return PhaseProfile::linear_float(
                as_number(require(value, path, "alpha"), path + ".alpha"));
        }
        if (mode == "tabulated") {
            reject_unknown_keys(value, path, {"mode", "n_min", "phi_u", "phi_v"});
            const long n_min =
                as_integer(require(value, path, "n_min"), path + ".n_min");
            auto read_list = [&](const char* key) {
                const json& arr = require(value, path, key);
                if (!arr.is_array())
                    throw config_error("'" + joined(path, key) +
                                       "' must be an array of numbers");
                std::vector<double> out;
                out.reserve(arr.size());
                for (const auto& x : arr)
                    out.push_back(as_number(x, joined(path, key)));
                return out;
            };
            return PhaseProfile::tabulated(static_cast<int>(n_min),
                                           read_list("phi_u"),
                                           read_list("phi_v"));
        }
    } catch (const config_error&) {
        throw;
    } catch (const error& e) {
        throw config_error("'" + path + "': " + e.what());
    }
    throw config_error(
        "'" + path +
        ".mode' must be linear-rational, linear-float or tabulated");
}

CoinOp parse_coin(const json& value, const std::string& path) {
    if (!value.is_array() || value.size() != 4)
        throw config_error("'" + path +
                           "' must be four [re, im] pairs, row-major");
    std::array<Complex, 4> c{};
    for (std::size_t i = 0; i < 4; ++i) {
        const json& entry = value[i];
        if (!entry.is_array() || entry.size() != 2)
            throw config_error("'" + path + "[" + std::to_string(i) +
                               "]' must be [re, im]");
        c[i] = Complex{as_number(entry[0], path), as_number(entry[1], path)};
    }
    try {
        return CoinOp{c[0], c[1], c[2], c[3]};
    } catch (const error& e) {
        throw config_error("'" + path + "': " + e.what());
    }
}

const std::initializer_list<const char*> output_tokens = {
    "grid-u",    "grid-v",    "grid-total",    "heatmap-u",
    "heatmap-v", "series:energy", "series:zitter", "series:variance",
    "series:corner"};

std::vector<std::string> parse_outputs(const json& value,
                                       const std::string& path) {
    if (!value.is_array())
        throw config_error("'" + path + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& entry : value) {
        if (!entry.is_string())
            throw config_error("'" + path + "' must be an array of strings");
        const std::string token = entry.get<std::string>();
        bool known = false;
        for (const char* t : output_tokens)
            if (token == t)
                known = true;
        if (!known)
            throw config_error("unknown output '" + token + "' in '" + path +
                               "'");
        out.push_back(token);
    }
    return out;
}

std::string format_double(double x) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

std::ofstream open_out(const std::filesystem::path& dest) {
    std::ofstream out(dest, std::ios::binary);
    if (!out)
        throw error("cannot write " + dest.string());
    return out;
}

std::vector<const WalkState*> recorded_rows(const Trajectory& traj,
                                            int record_every) {
    if (traj.size() == 0)
        throw error("empty trajectory");
    if (record_every < 1)
        throw error("record_every must be >= 1");
    std::vector<const WalkState*> rows;
    for (std::size_t i = 0; i < traj.size();
         i += static_cast<std::size_t>(record_every))
        rows.push_back(&traj.states[i]);
    return rows;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte);
        throw config_error("syntax error at line " + std::to_string(line) +
                           ", column " + std::to_string(col));
    }
    if (!root.is_object())
        throw config_error("config root must be an object");
    reject_unknown_keys(
        root, "",
        {"steps", "initial", "phase", "coin", "outputs", "record_every"});

    RunConfig cfg;

    const long steps = as_integer(require(root, "", "steps"), "steps");
    if (steps < 0)
        throw config_error("'steps' must be >= 0");
    cfg.steps = static_cast<int>(steps);

    const json& initial = require(root, "", "initial");
    if (!initial.is_object())
        throw config_error("'initial' must be an object");
    reject_unknown_keys(initial, "initial", {"position", "spinor"});
    cfg.position = static_cast<int>(as_integer(
        require(initial, "initial", "position"), "initial.position"));
    cfg.spinor = parse_spinor(require(initial, "initial", "spinor"),
                              "initial.spinor");

    cfg.phase = parse_phase(require(root, "", "phase"), "phase");

    if (auto it = root.find("coin"); it != root.end())
        cfg.coin = parse_coin(*it, "coin");

    if (auto it = root.find("outputs"); it != root.end())
        cfg.outputs = parse_outputs(*it, "outputs");
    else
        cfg.outputs = {"grid-u", "grid-v", "heatmap-u", "heatmap-v"};

    if (auto it = root.find("record_every"); it != root.end()) {
        const long k = as_integer(*it, "record_every");
        if (k < 1)
            throw config_error("'record_every' must be >= 1");
        cfg.record_every = static_cast<int>(k);
    }

    return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw error("cannot read " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string preset_config(const std::string& name) {
    // 70-step runs from |down> at the origin; the gradient is what varies.
    if (name == "fig2")
        return R"({
  "steps": 70,
  "initial": {"position": 0, "spinor": "down"},
  "phase": {"mode": "linear-rational", "q": 0, "p": 1},
  "outputs": ["grid-u", "grid-v", "heatmap-u", "heatmap-v"],
  "record_every": 1
})";
    if (name == "fig4")
        return R"({
  "steps": 70,
  "initial": {"position": 0, "spinor": "down"},
  "phase": {"mode": "linear-rational", "q": 1, "p": 32},
  "outputs": ["grid-u", "grid-v", "heatmap-u", "heatmap-v"],
  "record_every": 1
})";
    if (name == "fig5")
        return R"({
  "steps": 70,
  "initial": {"position": 0, "spinor": "down"},
  "phase": {"mode": "linear-rational", "q": 1, "p": 5},
  "outputs": ["grid-u", "grid-v", "heatmap-u", "heatmap-v"],
  "record_every": 1
})";
    throw error("unknown preset '" + name + "' (available: fig2, fig4, fig5)");
}

Trajectory run(const RunConfig& config) {
    const WalkState start =
        make_initial(config.position, config.spinor,
                     config.position - config.steps,
                     config.position + config.steps);
    return evolve(start, config.steps, config.coin, config.phase);
}

void write_grid(const Trajectory& traj, Field which,
                const std::filesystem::path& dest, int record_every) {
    const auto rows = recorded_rows(traj, record_every);
    const WalkState& first = *rows.front();
    std::ofstream out = open_out(dest);

    out << 'm';
    for (int n = first.n_min; n <= first.n_max; ++n)
        out << ',' << n;
    out << '\n';

    for (const WalkState* s : rows) {
        out << s->m;
        for (int n = s->n_min; n <= s->n_max; ++n)
            out << ',' << format_double(s->intensity(n, which));
        out << '\n';
    }
    if (!out)
        throw error("write failed: " + dest.string());
}

void write_heatmap(const Trajectory& traj, Field which,
                   const std::filesystem::path& dest, int record_every) {
    const auto rows = recorded_rows(traj, record_every);
    const int width = rows.front()->size();

    double max_intensity = 0.0;
    for (const WalkState* s : rows)
        for (int n = s->n_min; n <= s->n_max; ++n)
            max_intensity = std::max(max_intensity, s->intensity(n, which));

    std::ofstream out = open_out(dest);
    out << "P5\n" << width << ' ' << rows.size() << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(width));
    for (const WalkState* s : rows) {
        for (int n = s->n_min; n <= s->n_max; ++n) {
            const double intensity = s->intensity(n, which);
            unsigned char pixel = 0;
            if (intensity > 0.0 && max_intensity > 0.0) {
                // six decades of log scale, darker below 1e-6 of the peak
                const double v =
                    255.0 * (std::log10(intensity / max_intensity) + 6.0) /
                    6.0;
                if (v >= 255.0)
                    pixel = 255;
                else if (v > 0.0)
                    pixel = static_cast<unsigned char>(std::lround(v));
            }
            row[static_cast<std::size_t>(n - s->n_min)] = pixel;
        }
        out.write(reinterpret_cast<const char*>(row.data()), width);
    }
    if (!out)
        throw error("write failed: " + dest.string());
}

void write_report(const std::vector<analysis::SeriesReport>& reports,
                  const std::filesystem::path& dest) {
    ordered_json root;
    root["reports"] = ordered_json::array();
    for (const analysis::SeriesReport& r : reports) {
        ordered_json entry;
        entry["name"] = r.name;
        entry["m"] = r.m_values;
        entry["values"] = r.values;
        if (r.extracted_scalar)
            entry["extracted_scalar"] = *r.extracted_scalar;
        root["reports"].push_back(std::move(entry));
    }
    std::ofstream out = open_out(dest);
    out << root.dump(2) << '\n';
    if (!out)
        throw error("write failed: " + dest.string());
}

} // namespace qwalk::io
