#pragma once

// Scenario configuration files, dispatch and report emission.
//
// A config is a flat UTF-8 key-value document, one scenario per file:
//
//     # immersed mirror in water
//     scenario = mirror
//     n = 1.33
//     E0_V_per_m = 1.0e3
//     omega_rad_per_s = 3.54e15
//     sigma_S_per_m = 6.3e7
//     tag = Minkowski                 # optional, both tags by default
//     sweep = n:[1.0, 1.6, 13]        # optional, linear spacing
//
// Parameter keys spell out their unit after the symbol; there is no unit
// inference, and a known symbol with a different unit suffix is rejected.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abmink/em_core.hpp"

namespace abmink::cli {

enum class Scenario { mirror, drag, wgm, sphere_kick, fiber, bec, interface, covariant_checks };

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
/// The eight dispatchable scenario names, in a fixed order.
std::span<const Scenario> all_scenarios();

struct ParamSpec {
    std::string_view symbol;
    std::string_view unit_key;      // suffix in the config key, empty if dimensionless
    std::string_view unit_display;  // as printed in report headers
    std::optional<double> default_value;

    std::string key() const;
};

std::span<const ParamSpec> schema(Scenario s);

/// Config problem, tagged with the offending key path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key_path, const std::string& message);
    const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

struct Sweep {
    std::string parameter;  // full parameter key
    double min;
    double max;
    int count;

    std::vector<double> values() const;
};

struct ScenarioRequest {
    Scenario scenario;
    /// Every schema parameter with defaults applied; a swept parameter is
    /// absent unless it was also given explicitly.
    std::map<std::string, double> params;
    std::optional<MomentumTag> tag;
    std::optional<Sweep> sweep;

    std::vector<MomentumTag> tags() const;
    /// Parameter sets in request order, one per sweep point.
    std::vector<std::map<std::string, double>> points() const;
};

ScenarioRequest parse_config(std::string_view text);
ScenarioRequest load_config(const std::filesystem::path& path);

struct Quantity {
    std::string name;
    std::string unit;
    std::optional<MomentumTag> tag;
    double value;

    std::string column() const;
};

struct Residual {
    std::string name;
    double value;
    double tolerance;

    bool pass() const { return value <= tolerance; }
};

struct ReportRow {
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<Quantity> outputs;
    std::vector<Residual> residuals;
    std::vector<std::pair<std::string, std::string>> labels;
    std::optional<std::string> error;
};

struct ScenarioReport {
    ScenarioRequest request;
    std::string provenance;
    std::vector<ReportRow> rows;

    bool ok() const;
};

struct RunOptions {
    /// Relative tolerance for multi-method cross checks.
    double cross_check_tol = 1e-6;
    /// Worker threads for sweeps; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Deterministic: the same request always yields the same report.
ScenarioReport run(const ScenarioRequest& request, const RunOptions& options = {});

enum class Format { table, csv, json };
std::optional<Format> parse_format(std::string_view name);

std::string emit(const ScenarioReport& report, Format format);

/// Cells of a CSV document; used to convert between CSV and JSON losslessly.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const Table&) const = default;
};

Table tabulate(const ScenarioReport& report);
std::string to_csv(const Table& table);
Table parse_csv(std::string_view text);
/// Numeric cells become JSON numbers, everything else strings.
std::string table_to_json(const Table& table);
Table table_from_json(std::string_view text);

/// Full-precision scientific rendering used in CSV.
std::string format_number(double v);

// ---------------------------------------------------------------------------
// Built-in cross-check suite

struct CheckResult {
    std::string name;
    double value;
    double tolerance;
    bool passed;
    std::string detail;
};

/// Three-way mirror agreement, divergence convergence, momentum ledger and
/// friends. `mirror_tol` is the relative tolerance for the mirror sweep.
std::vector<CheckResult> run_checks(double mirror_tol = 1e-6);

/// ABMINK_TOL when set and valid, otherwise 1e-6.
double cross_check_tolerance_from_env();

}  // namespace abmink::cli
