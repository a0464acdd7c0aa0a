// abmink: run radiation-force scenarios and the built-in cross checks.
//
//   abmink run <config-path> [--format table|csv|json] [--out <path>]
//   abmink list            (also: abmink --list)
//   abmink check

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "abmink/cli_io.hpp"

namespace cli = abmink::cli;

namespace {

int list_scenarios() {
    for (cli::Scenario s : cli::all_scenarios()) std::cout << cli::to_string(s) << '\n';
    return 0;
}

int run_config(const std::string& config_path, const std::string& format_name, const std::string& out_path) {
    const auto format = cli::parse_format(format_name);
    if (!format) {
        std::cerr << "abmink: unknown format \"" << format_name << "\" (table, csv, json)\n";
        return 2;
    }
    cli::ScenarioRequest request;
    try {
        request = cli::load_config(config_path);
    } catch (const cli::ConfigError& e) {
        std::cerr << "abmink: " << config_path << ": " << e.what() << '\n';
        return 2;
    }
    cli::RunOptions options;
    options.cross_check_tol = cli::cross_check_tolerance_from_env();
    const cli::ScenarioReport report = cli::run(request, options);
    const std::string text = cli::emit(report, *format);

    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "abmink: cannot write " << out_path << '\n';
            return 2;
        }
        out << text;
    }
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (report.rows[i].error) std::cerr << "abmink: row " << i << ": " << *report.rows[i].error << '\n';
    }
    return report.ok() ? 0 : 1;
}

int run_checks() {
    const double tol = cli::cross_check_tolerance_from_env();
    bool all = true;
    for (const auto& check : cli::run_checks(tol)) {
        all = all && check.passed;
        std::cout << fmt::format("{:<4} {:<24} {:>12.4e} <= {:<10.3e} {}\n", check.passed ? "PASS" : "FAIL",
                                 check.name, check.value, check.tolerance, check.detail);
    }
    std::cout << (all ? "all checks passed\n" : "some checks FAILED\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Abraham and Minkowski radiation-force scenarios"};
    app.require_subcommand(0, 1);

    bool list_flag = false;
    app.add_flag("--list", list_flag, "List the scenario names");

    auto* run_cmd = app.add_subcommand("run", "Run one scenario config");
    std::string config_path;
    std::string format_name = "table";
    std::string out_path;
    run_cmd->add_option("config", config_path, "Scenario config file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    run_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

    auto* list_cmd = app.add_subcommand("list", "List the scenario names");
    auto* check_cmd = app.add_subcommand("check", "Run the built-in cross-check suite");

    CLI11_PARSE(app, argc, argv);

    if (list_flag || list_cmd->parsed()) return list_scenarios();
    if (run_cmd->parsed()) return run_config(config_path, format_name, out_path);
    if (check_cmd->parsed()) return run_checks();
    std::cout << app.help();
    return 2;
}
