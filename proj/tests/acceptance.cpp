// Acceptance suite: one PASS/FAIL line per criterion.
//
//   abmink_acceptance --cli <path-to-abmink> [--allow-fail <id>]...
//
// Exit status is 0 when every criterion passes or fails only among the
// explicitly allowed ids. Allowed failures still print FAIL.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "abmink/checks.hpp"
#include "abmink/cli_io.hpp"
#include "abmink/covariant.hpp"
#include "abmink/scenarios.hpp"

using namespace abmink;
namespace sc = abmink::scenarios;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Fastest of `repeats` wall-clock runs.
template <class F>
double best_time_ms(F&& f, int repeats = 5) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto start = Clock::now();
        f();
        best = std::min(best, elapsed_ms(start));
    }
    return best;
}

double output_value(const cli::ScenarioReport& report, std::string_view name, std::optional<MomentumTag> tag) {
    for (const auto& q : report.rows.at(0).outputs) {
        if (q.name == name && q.tag == tag) return q.value;
    }
    throw std::runtime_error(fmt::format("report has no output {}", name));
}

Outcome wgm_reproduction() {
    const auto request = cli::parse_config(
        "scenario = wgm\nn = 1.45\na_m = 100e-6\nP0_W = 100\nomega0_rad_per_s = 1000\n");
    cli::ScenarioReport report;
    const double ms = best_time_ms([&] { report = cli::run(request); });
    const double amplitude = output_value(report, "torque_amplitude", MomentumTag::Abraham);
    const double rel = std::abs(amplitude - 0.7e-19) / 0.7e-19;
    return {report.ok() && rel <= 0.10 && ms < 1.0,
            fmt::format("amplitude {:.6e} N m, rel. deviation from 0.7e-19 = {:.4f} (limit 0.10), {:.3f} ms", amplitude,
                        rel, ms)};
}

Outcome sphere_kick_reproduction() {
    const auto request = cli::parse_config(
        "scenario = sphere-kick\nM_kg = 1e-10\na_m = 25e-6\ndeltaG_kg_m_per_s = 8.1e-12\nH_J = 5.9e-6\n"
        "n = 1.33\nmu_Pa_s = 1.0e-3\nmu0_Pa_s = 1.8e-5\nL0_m = 300e-6\n");
    cli::ScenarioReport report;
    const double ms = best_time_ms([&] { report = cli::run(request); });
    const double K = output_value(report, "displacement_correction", std::nullopt);
    const double rel = std::abs(K - 7.7e-3) / 7.7e-3;
    return {report.ok() && rel <= 0.01 && ms < 1.0,
            fmt::format("correction {:.6e}, rel. deviation from 7.7e-3 = {:.4f} (limit 0.01), {:.3f} ms", K, rel, ms)};
}

Outcome fiber_reproduction() {
    const double impulse = sc::fiber_exit_impulse(2.7e-3, 1.5);
    const double rel = std::abs(impulse - 4.5e-12) / 4.5e-12;
    return {rel <= 0.01, fmt::format("impulse {:.6e} N s, rel. deviation from 4.5e-12 = {:.2e} (limit 0.01)", impulse,
                                     rel)};
}

Outcome mirror_equivalence() {
    const auto grid = checks::mirror_grid();
    double worst = 0.0;
    const double ms = best_time_ms([&] { worst = checks::mirror_max_disagreement(grid, 1e-8); }, 1);
    return {grid.size() == 125 && worst <= 1e-6 && ms < 5000.0,
            fmt::format("{} grid points, max pairwise rel. disagreement {:.3e} (limit 1e-6), {:.1f} ms", grid.size(),
                        worst, ms)};
}

Outcome jones_proportionality() {
    const double R = 0.95;
    const double S_i = 1.0e4;
    double worst = 0.0;
    for (double n : {1.33, 1.50, 1.60}) {
        worst = std::max(worst, std::abs(sc::flux_pressure(n, R, S_i) / sc::flux_pressure(1.0, R, S_i) - n));
    }
    return {worst <= 1e-12, fmt::format("max |ratio - n| = {:.3e} (limit 1e-12)", worst)};
}

Outcome momentum_ledger() {
    const checks::LedgerResult r = checks::momentum_ledger(1000);
    return {r.ledger_error <= 1e-12 && r.ladder_error <= 1e-12,
            fmt::format("1000 points: ledger {:.3e}, n^2 ladder {:.3e} (limit 1e-12)", r.ledger_error, r.ladder_error)};
}

Outcome abraham_nulling() {
    const double ratio = checks::abraham_term_average_ratio(1.5, 2.0 * M_PI * si::c / 532e-9, 10);
    return {ratio <= 1e-9, fmt::format("|mean| / peak over 10 periods = {:.3e} (limit 1e-9)", ratio)};
}

Outcome covariant_checks() {
    const double reduction = std::max(checks::rest_frame_reduction_error(1.5, 1.0),
                                      checks::rest_frame_reduction_error(2.0, 1.3));
    const checks::ConvergenceResult conv = checks::divergence_convergence(1.5, 2.0 * M_PI * si::c / 532e-9);
    const bool ratio_ok = std::abs(conv.ratio - 4.0) <= 0.8;

    auto classify = [](double n) {
        const PlaneWave wave(1e3, 3.0e15, Vec3::UnitX(), Vec3::UnitY(), Medium::nonmagnetic(n));
        return covariant::classify_four_momentum(covariant::pulse_four_momentum(wave, MomentumTag::Minkowski));
    };
    const auto dense = classify(1.5);
    const auto vacuum = classify(1.0);
    const bool classes_ok = dense == covariant::Causality::spacelike && vacuum == covariant::Causality::null;
    return {reduction <= 1e-12 && ratio_ok && classes_ok,
            fmt::format("(a) rest-frame error {:.3e} (limit 1e-12); (b) halving ratio {:.4f} (4 +/- 0.8); "
                        "(c) n=1.5 {}, n=1 {}",
                        reduction, conv.ratio, covariant::to_string(dense), covariant::to_string(vacuum))};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int exit_status(int raw) { return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1; }

Outcome cli_determinism(const std::string& cli_path) {
    if (cli_path.empty()) return {false, "no --cli path given"};
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / fmt::format("abmink_acceptance_{}", ::getpid());
    fs::create_directories(dir);
    const fs::path config = dir / "mirror_sweep.cfg";
    {
        std::ofstream out(config);
        out << "scenario = mirror\nE0_V_per_m = 1.0e3\nomega_rad_per_s = 3.54e15\nsigma_S_per_m = 6.3e7\n"
               "sweep = n:[1.0, 1.6, 13]\n";
    }
    const std::string check_cmd = fmt::format("\"{}\" check > \"{}\"", cli_path, (dir / "check.txt").string());
    const int check = exit_status(std::system(check_cmd.c_str()));

    bool identical = true;
    for (const char* format : {"table", "csv", "json"}) {
        std::string first;
        for (int pass = 0; pass < 2; ++pass) {
            const fs::path out = dir / fmt::format("{}_{}.out", format, pass);
            const std::string cmd = fmt::format("\"{}\" run \"{}\" --format {} --out \"{}\"", cli_path,
                                                config.string(), format, out.string());
            const int rc = exit_status(std::system(cmd.c_str()));
            const std::string text = read_file(out);
            if (rc != 0 || text.empty()) identical = false;
            if (pass == 0) {
                first = text;
            } else if (text != first) {
                identical = false;
            }
        }
    }
    fs::remove_all(dir);
    return {check == 0 && identical,
            fmt::format("abmink check exit {}; repeated runs byte-identical (table, csv, json): {}", check,
                        identical ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::string cli_path;
    std::vector<int> allowed_list;
    app.add_option("--cli", cli_path, "Path to the abmink executable");
    app.add_option("--allow-fail", allowed_list, "Criterion ids whose failure does not fail the run");
    CLI11_PARSE(app, argc, argv);
    const std::set<int> allowed(allowed_list.begin(), allowed_list.end());

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"torque amplitude reproduction", wgm_reproduction},
        {"sphere-kick correction reproduction", sphere_kick_reproduction},
        {"fiber exit impulse reproduction", fiber_reproduction},
        {"three-way mirror equivalence", mirror_equivalence},
        {"mirror pressure proportional to n", jones_proportionality},
        {"momentum ledger", momentum_ledger},
        {"Abraham term time average", abraham_nulling},
        {"covariant checks", covariant_checks},
        {"CLI determinism", [&] { return cli_determinism(cli_path); }},
    };

    int blocking = 0;
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, fmt::format("exception: {}", e.what())};
        }
        if (!outcome.passed) {
            ++failed;
            if (!allowed.count(id)) ++blocking;
        }
        std::cout << fmt::format("{} {}. {}: {}{}\n", outcome.passed ? "PASS" : "FAIL", id, criteria[i].first,
                                 outcome.detail,
                                 !outcome.passed && allowed.count(id) ? " [known deviation, allowed]" : "");
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
    return blocking == 0 ? 0 : 1;
}
