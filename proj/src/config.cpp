#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "abmink/cli_io.hpp"

namespace abmink::cli {

namespace {

constexpr std::array kScenarios{Scenario::mirror, Scenario::drag,   Scenario::wgm,       Scenario::sphere_kick,
                                Scenario::fiber,  Scenario::bec,    Scenario::interface, Scenario::covariant_checks};

constexpr std::optional<double> kRequired = std::nullopt;

// 2 pi c / 532 nm
constexpr double kGreenOmega = 3.5408e15;

const std::array kMirror{
    ParamSpec{"n", "", "1", kRequired},
    ParamSpec{"E0", "V_per_m", "V/m", kRequired},
    ParamSpec{"omega", "rad_per_s", "rad/s", kRequired},
    ParamSpec{"sigma", "S_per_m", "S/m", kRequired},
    ParamSpec{"k_over_alpha_max", "", "1", 0.2},
    ParamSpec{"quad_tol", "", "1", 1e-8},
};
const std::array kDrag{
    ParamSpec{"I", "W_per_m2", "W/m^2", kRequired},
    ParamSpec{"sigma_a", "m2", "m^2", kRequired},
    ParamSpec{"omega", "rad_per_s", "rad/s", kRequired},
    ParamSpec{"n", "", "1", kRequired},
};
const std::array kWgm{
    ParamSpec{"n", "", "1", 1.45},
    ParamSpec{"a", "m", "m", kRequired},
    ParamSpec{"P0", "W", "W", kRequired},
    ParamSpec{"omega0", "rad_per_s", "rad/s", kRequired},
    ParamSpec{"t", "s", "s", 0.0},
};
const std::array kSphereKick{
    ParamSpec{"M", "kg", "kg", kRequired},
    ParamSpec{"a", "m", "m", kRequired},
    ParamSpec{"deltaG", "kg_m_per_s", "kg m/s", kRequired},
    ParamSpec{"H", "J", "J", kRequired},
    ParamSpec{"n", "", "1", kRequired},
    ParamSpec{"mu", "Pa_s", "Pa s", kRequired},
    ParamSpec{"n0", "", "1", 1.0},
    ParamSpec{"mu0", "Pa_s", "Pa s", kRequired},
    ParamSpec{"L0", "m", "m", kRequired},
    ParamSpec{"t", "s", "s", 0.0},
};
const std::array kFiber{
    ParamSpec{"H", "J", "J", kRequired},
    ParamSpec{"n", "", "1", kRequired},
};
const std::array kBec{
    ParamSpec{"n", "", "1", kRequired},
    ParamSpec{"omega", "rad_per_s", "rad/s", kRequired},
};
const std::array kInterface{
    ParamSpec{"E_t", "V_per_m", "V/m", kRequired},
    ParamSpec{"n_from", "", "1", kRequired},
    ParamSpec{"n_to", "", "1", kRequired},
};
const std::array kCovariant{
    ParamSpec{"n", "", "1", 1.5},
    ParamSpec{"omega", "rad_per_s", "rad/s", kGreenOmega},
    ParamSpec{"E0", "V_per_m", "V/m", 1.0e3},
    ParamSpec{"v", "m_per_s", "m/s", 3.0e4},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view unquote(std::string_view s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

std::optional<double> to_number(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Strips a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quote) {
            if (ch == quote) quote = 0;
        } else if (ch == '"' || ch == '\'') {
            quote = ch;
        } else if (ch == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

const ParamSpec* find_exact(std::span<const ParamSpec> specs, std::string_view key) {
    for (const auto& spec : specs) {
        if (spec.key() == key) return &spec;
    }
    return nullptr;
}

// Longest schema symbol that `key` starts with, followed by '_'.
const ParamSpec* find_symbol_prefix(std::span<const ParamSpec> specs, std::string_view key) {
    const ParamSpec* best = nullptr;
    for (const auto& spec : specs) {
        const auto& sym = spec.symbol;
        if (key.size() > sym.size() && key.substr(0, sym.size()) == sym && key[sym.size()] == '_') {
            if (!best || sym.size() > best->symbol.size()) best = &spec;
        }
    }
    return best;
}

Sweep parse_sweep(std::string_view value, std::span<const ParamSpec> specs, const std::string& where) {
    // name:[min, max, count]
    const auto colon = value.find(':');
    const auto open = value.find('[');
    const auto close = value.rfind(']');
    if (colon == std::string_view::npos || open == std::string_view::npos || close == std::string_view::npos ||
        open < colon || close < open) {
        throw ConfigError("sweep", fmt::format("{}: expected `name:[min, max, count]`, got \"{}\"", where, value));
    }
    const std::string name(trim(value.substr(0, colon)));
    if (!find_exact(specs, name)) {
        throw ConfigError("sweep", fmt::format("{}: sweep parameter \"{}\" is not a parameter of this scenario",
                                               where, name));
    }
    std::vector<std::string_view> fields;
    std::string_view body = value.substr(open + 1, close - open - 1);
    while (true) {
        const auto comma = body.find(',');
        fields.push_back(trim(body.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    if (fields.size() != 3) {
        throw ConfigError("sweep", fmt::format("{}: expected three entries [min, max, count], got {}", where,
                                               fields.size()));
    }
    const auto lo = to_number(fields[0]);
    const auto hi = to_number(fields[1]);
    const auto count = to_number(fields[2]);
    if (!lo || !hi) throw ConfigError("sweep", fmt::format("{}: sweep bounds must be numbers", where));
    if (!count || *count != std::floor(*count) || *count < 2) {
        throw ConfigError("sweep.count", fmt::format("{}: sweep count must be an integer >= 2 (got {})", where,
                                                     fields[2]));
    }
    return Sweep{name, *lo, *hi, static_cast<int>(*count)};
}

}  // namespace

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::mirror: return "mirror";
        case Scenario::drag: return "drag";
        case Scenario::wgm: return "wgm";
        case Scenario::sphere_kick: return "sphere-kick";
        case Scenario::fiber: return "fiber";
        case Scenario::bec: return "bec";
        case Scenario::interface: return "interface";
        case Scenario::covariant_checks: return "covariant-checks";
    }
    return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
    for (Scenario s : kScenarios) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::span<const Scenario> all_scenarios() { return kScenarios; }

std::string ParamSpec::key() const {
    return unit_key.empty() ? std::string(symbol) : fmt::format("{}_{}", symbol, unit_key);
}

std::span<const ParamSpec> schema(Scenario s) {
    switch (s) {
        case Scenario::mirror: return kMirror;
        case Scenario::drag: return kDrag;
        case Scenario::wgm: return kWgm;
        case Scenario::sphere_kick: return kSphereKick;
        case Scenario::fiber: return kFiber;
        case Scenario::bec: return kBec;
        case Scenario::interface: return kInterface;
        case Scenario::covariant_checks: return kCovariant;
    }
    return {};
}

ConfigError::ConfigError(std::string key_path, const std::string& message)
    : std::runtime_error(fmt::format("config key '{}': {}", key_path, message)), key_path_(std::move(key_path)) {}

std::vector<double> Sweep::values() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[i] = i == count - 1 ? max : min + (max - min) * static_cast<double>(i) / (count - 1);
    }
    return out;
}

std::vector<MomentumTag> ScenarioRequest::tags() const {
    if (tag) return {*tag};
    return {MomentumTag::Abraham, MomentumTag::Minkowski};
}

std::vector<std::map<std::string, double>> ScenarioRequest::points() const {
    if (!sweep) return {params};
    std::vector<std::map<std::string, double>> out;
    for (double v : sweep->values()) {
        auto p = params;
        p[sweep->parameter] = v;
        out.push_back(std::move(p));
    }
    return out;
}

ScenarioRequest parse_config(std::string_view text) {
    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::string, Entry> entries;
    std::vector<std::string> order;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(line), fmt::format("line {}: expected `key = value`", line_no));
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(unquote(trim(line.substr(eq + 1))));
        if (key.empty()) throw ConfigError("", fmt::format("line {}: empty key", line_no));
        if (entries.contains(key)) {
            throw ConfigError(key, fmt::format("line {}: duplicate key (first set on line {})", line_no,
                                               entries[key].line));
        }
        entries[key] = Entry{value, line_no};
        order.push_back(key);
    }

    const auto scenario_it = entries.find("scenario");
    if (scenario_it == entries.end()) throw ConfigError("scenario", "missing");
    const auto scenario = parse_scenario(scenario_it->second.value);
    if (!scenario) {
        std::string known;
        for (Scenario s : kScenarios) known += fmt::format("{}{}", known.empty() ? "" : ", ", to_string(s));
        throw ConfigError("scenario", fmt::format("unknown scenario \"{}\" (known: {})",
                                                  scenario_it->second.value, known));
    }

    ScenarioRequest request{*scenario, {}, std::nullopt, std::nullopt};
    const auto specs = schema(*scenario);

    for (const auto& key : order) {
        const Entry& entry = entries[key];
        const std::string where = fmt::format("line {}", entry.line);
        if (key == "scenario") continue;
        if (key == "tag") {
            request.tag = parse_momentum_tag(entry.value);
            if (!request.tag) {
                throw ConfigError("tag", fmt::format("{}: expected Abraham or Minkowski, got \"{}\"", where,
                                                     entry.value));
            }
            continue;
        }
        if (key == "sweep") {
            request.sweep = parse_sweep(entry.value, specs, where);
            continue;
        }
        if (const ParamSpec* spec = find_exact(specs, key)) {
            const auto v = to_number(entry.value);
            if (!v) throw ConfigError(key, fmt::format("{}: expected a number, got \"{}\"", where, entry.value));
            request.params[spec->key()] = *v;
            continue;
        }
        if (const ParamSpec* spec = find_symbol_prefix(specs, key)) {
            const std::string expected =
                spec->unit_key.empty() ? "is dimensionless (no unit suffix)"
                                       : fmt::format("expects unit suffix \"{}\" ({})", spec->unit_key,
                                                     spec->unit_display);
            throw ConfigError(key, fmt::format("{}: unit mismatch, parameter \"{}\" {}; write `{} = ...`", where,
                                               spec->symbol, expected, spec->key()));
        }
        throw ConfigError(key, fmt::format("{}: unknown parameter for scenario {}", where, to_string(*scenario)));
    }

    for (const auto& spec : specs) {
        const std::string key = spec.key();
        if (request.params.contains(key)) continue;
        if (request.sweep && request.sweep->parameter == key) continue;
        if (spec.default_value) {
            request.params[key] = *spec.default_value;
        } else {
            throw ConfigError(key, fmt::format("missing required parameter \"{}\" [{}] for scenario {}", key,
                                               spec.unit_display, to_string(*scenario)));
        }
    }
    return request;
}

ScenarioRequest load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", fmt::format("cannot open config file {}", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace abmink::cli
