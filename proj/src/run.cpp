#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <fmt/format.h>

#include "abmink/checks.hpp"
#include "abmink/cli_io.hpp"
#include "abmink/covariant.hpp"
#include "abmink/scenarios.hpp"

namespace abmink::cli {

namespace {

using Params = std::map<std::string, double>;
namespace sc = abmink::scenarios;

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

bool has_tag(const std::vector<MomentumTag>& tags, MomentumTag tag) {
    return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

void add(ReportRow& row, std::string name, std::string unit, double value,
         std::optional<MomentumTag> tag = std::nullopt) {
    row.outputs.push_back(Quantity{std::move(name), std::move(unit), tag, value});
}

void run_mirror(const Params& p, const std::vector<MomentumTag>& tags, const RunOptions& opt, ReportRow& row) {
    sc::MirrorConfig cfg{Medium::nonmagnetic(p.at("n")), p.at("E0_V_per_m"), p.at("omega_rad_per_s"),
                         p.at("sigma_S_per_m"), p.at("k_over_alpha_max")};
    const double quad_tol = p.at("quad_tol");
    const sc::MirrorPressure flux = sc::mirror_pressure_flux(cfg);
    const double lorentz = sc::mirror_pressure_lorentz(cfg, quad_tol);
    const double divergence = sc::mirror_pressure_divergence(cfg);

    add(row, "k_over_alpha", "1", cfg.k() / cfg.alpha());
    add(row, "reflectance", "1", flux.reflectance);
    add(row, "phase", "rad", flux.phase);
    add(row, "incident_flux", "W/m^2", cfg.incident_flux());
    add(row, "pressure_flux", "Pa", flux.pressure);
    add(row, "pressure_lorentz", "Pa", lorentz);
    add(row, "pressure_divergence", "Pa", divergence);

    const PlaneWave incident(cfg.E0, cfg.omega, Vec3::UnitX(), Vec3::UnitY(), cfg.medium);
    const FieldPoint peak = incident.fields_at(Vec3::Zero(), 0.0);
    for (MomentumTag tag : tags) {
        add(row, "incident_momentum_density", "kg/(m^2 s)", 0.5 * momentum_density(peak, tag).x(), tag);
    }

    const double lorentz_tol = std::max(opt.cross_check_tol, quad_tol);
    row.residuals.push_back({"flux_vs_lorentz", rel_diff(flux.pressure, lorentz), lorentz_tol});
    row.residuals.push_back({"flux_vs_divergence", rel_diff(flux.pressure, divergence), 1e-12});
    row.residuals.push_back({"lorentz_vs_divergence", rel_diff(lorentz, divergence), lorentz_tol});
}

void run_drag(const Params& p, const std::vector<MomentumTag>& tags, ReportRow& row) {
    const sc::DragConfig cfg{p.at("I_W_per_m2"), p.at("sigma_a_m2"), p.at("omega_rad_per_s"), p.at("n")};
    for (MomentumTag tag : tags) {
        add(row, "photon_momentum", "kg m/s", sc::photon_momentum(cfg.n, cfg.omega, tag), tag);
        add(row, "drag_field", "V/m", sc::photon_drag_field(cfg, tag), tag);
    }
    if (has_tag(tags, MomentumTag::Minkowski)) {
        const double E = sc::photon_drag_field(cfg, MomentumTag::Minkowski);
        const double index_from_field = E * si::e_charge * si::c / (cfg.intensity * cfg.sigma_a);
        row.residuals.push_back({"minkowski_field_index_consistency", rel_diff(index_from_field, cfg.n), 1e-12});
    }
    row.labels.emplace_back("observed_alternative", "Minkowski");
}

void run_wgm(const Params& p, const std::vector<MomentumTag>& tags, ReportRow& row) {
    const sc::TorqueConfig cfg{p.at("n"), p.at("a_m"), p.at("P0_W"), p.at("omega0_rad_per_s")};
    for (MomentumTag tag : tags) {
        const sc::Torque torque = sc::wgm_torque(cfg, p.at("t_s"), tag);
        add(row, "torque_amplitude", "N m", torque.amplitude, tag);
        add(row, "torque", "N m", torque.torque, tag);
    }
}

void run_sphere_kick(const Params& p, const std::vector<MomentumTag>& tags, ReportRow& row) {
    const sc::SphereKickConfig cfg{p.at("M_kg"),
                                   p.at("a_m"),
                                   p.at("deltaG_kg_m_per_s"),
                                   p.at("H_J"),
                                   Medium::nonmagnetic(p.at("n"), 0.0, p.at("mu_Pa_s")),
                                   Medium::nonmagnetic(p.at("n0"), 0.0, p.at("mu0_Pa_s")),
                                   p.at("L0_m")};
    const double K = sc::displacement_correction(cfg);
    add(row, "displacement_correction", "1", K);
    for (MomentumTag tag : tags) {
        const sc::SphereKickTrajectory traj(cfg, tag);
        const sc::KickState state = traj.at(p.at("t_s"));
        add(row, "pulse_momentum", "kg m/s", sc::pulse_momentum(cfg.pulse_energy, cfg.fluid.n(), tag), tag);
        add(row, "v_max", "m/s", traj.v_max(), tag);
        add(row, "velocity", "m/s", state.velocity, tag);
        add(row, "displacement", "m", state.displacement, tag);
        add(row, "total_displacement", "m", traj.total_displacement(), tag);
        add(row, "displacement_ratio", "1", sc::displacement_ratio(cfg, tag), tag);
    }
    if (tags.size() == 2) {
        const double n = cfg.fluid.n();
        const double n0 = cfg.reference_fluid.n();
        const double diff = sc::displacement_ratio(cfg, MomentumTag::Minkowski) -
                            sc::displacement_ratio(cfg, MomentumTag::Abraham);
        const double expected = cfg.reference_fluid.require_viscosity() / cfg.fluid.require_viscosity() * K *
                                ((n - n0) - (1.0 / n - 1.0 / n0));
        row.residuals.push_back({"ratio_difference_closed_form", rel_diff(diff, expected), 1e-12});
    }
}

void run_fiber(const Params& p, const std::vector<MomentumTag>& tags, ReportRow& row) {
    const double H = p.at("H_J");
    const double n = p.at("n");
    add(row, "exit_impulse", "N s", sc::fiber_exit_impulse(H, n));
    for (MomentumTag tag : tags) add(row, "pulse_momentum_in_fiber", "kg m/s", sc::pulse_momentum(H, n, tag), tag);
}

void run_bec(const Params& p, const std::vector<MomentumTag>& tags, ReportRow& row) {
    const double n = p.at("n");
    const double omega = p.at("omega_rad_per_s");
    add(row, "recoil", "kg m/s", sc::bec_recoil(n, omega));
    for (MomentumTag tag : tags) add(row, "photon_momentum", "kg m/s", sc::photon_momentum(n, omega, tag), tag);
    row.labels.emplace_back("observed_alternative", "Minkowski");
}

void run_interface(const Params& p, ReportRow& row) {
    const double pressure = interface_pressure(p.at("E_t_V_per_m"), p.at("n_from"), p.at("n_to"));
    add(row, "surface_pressure", "Pa", pressure);
    row.labels.emplace_back("force_direction", pressure > 0.0   ? "toward n_to"
                                               : pressure < 0.0 ? "toward n_from"
                                                                : "none");
}

void run_covariant(const Params& p, const std::vector<MomentumTag>& tags, ReportRow& row) {
    const double n = p.at("n");
    const double omega = p.at("omega_rad_per_s");

    const double reduction = checks::rest_frame_reduction_error(n, 1.0);
    add(row, "rest_frame_reduction_error", "1", reduction);
    row.residuals.push_back({"rest_frame_reduction", reduction, 1e-12});

    const checks::ConvergenceResult conv = checks::divergence_convergence(n, omega);
    add(row, "divergence_residual_coarse", "N/m^3", conv.residual_coarse);
    add(row, "divergence_residual_fine", "N/m^3", conv.residual_fine);
    add(row, "divergence_convergence_ratio", "1", conv.ratio);
    row.residuals.push_back({"second_order_convergence", std::abs(conv.ratio - 4.0) / 4.0, 0.2});

    // First-order moving-medium relation D = eps0 eps E + ((n^2-1)/c^2) v x H.
    const Vec3 v(p.at("v_m_per_s"), 0.0, 0.0);
    const Vec3 E(0.0, p.at("E0_V_per_m"), 0.0);
    const Vec3 B(0.0, 0.0, n * p.at("E0_V_per_m") / si::c);
    const auto F = covariant::field_tensor_from_EB(E, B);
    const auto H = covariant::excitation_from_constitutive(F, covariant::FourVelocity::from_velocity(v), n, 1.0);
    const Vec3 first_order = si::eps0 * n * n * E + (n * n - 1.0) / (si::c * si::c) * v.cross(H.H());
    const double moving_scale = ((n * n - 1.0) / (si::c * si::c) * v.cross(H.H())).norm();
    add(row, "moving_D_first_order_deviation", "1",
        moving_scale == 0.0 ? 0.0 : (H.D() - first_order).norm() / moving_scale);

    const PlaneWave wave(p.at("E0_V_per_m"), omega, Vec3::UnitX(), Vec3::UnitY(), Medium::nonmagnetic(n));
    for (MomentumTag tag : tags) {
        const covariant::FourMomentum pm = covariant::pulse_four_momentum(wave, tag);
        add(row, "momentum_energy_ratio", "1", si::c * pm.G.norm() / pm.W, tag);
        row.labels.emplace_back(fmt::format("four_momentum.{}", to_string(tag)),
                                std::string(covariant::to_string(covariant::classify_four_momentum(pm))));
    }
}

std::string_view provenance(Scenario s) {
    switch (s) {
        case Scenario::mirror:
            return "normal momentum flux (n/c)(1+R)S_i; Lorentz force mu0 sigma E_y H_z integrated over the "
                   "skin layer with alpha = sqrt(mu0 sigma omega/2); divergence-free incident tensor "
                   "S_xx = c g_x/n plus reflected term";
        case Scenario::drag: return "per-carrier momentum balance I sigma_a p/(hbar omega) = e E";
        case Scenario::wgm:
            return "Abraham term of a modulated circulating power integrated over the cylinder; Minkowski "
                   "force has no azimuthal part";
        case Scenario::sphere_kick:
            return "momentum balance M v_max = deltaG + p_pulse; Stokes drag 6 pi mu a v; displacement "
                   "ratio against a reference fluid";
        case Scenario::fiber: return "Minkowski momentum deficit (n-1)H/c released at the exit face";
        case Scenario::bec: return "recoil hbar n omega/c";
        case Scenario::interface: return "boundary-layer integral of -(eps0/2)E^2 grad n^2";
        case Scenario::covariant_checks:
            return "moving-medium constitutive relation; Minkowski four-tensor divergence; four-momentum "
                   "classification";
    }
    return "";
}

ReportRow run_point(const ScenarioRequest& request, const Params& params, const RunOptions& opt) {
    ReportRow row;
    for (const auto& spec : schema(request.scenario)) {
        const std::string key = spec.key();
        row.inputs.emplace_back(key, params.at(key));
    }
    const auto tags = request.tags();
    try {
        switch (request.scenario) {
            case Scenario::mirror: run_mirror(params, tags, opt, row); break;
            case Scenario::drag: run_drag(params, tags, row); break;
            case Scenario::wgm: run_wgm(params, tags, row); break;
            case Scenario::sphere_kick: run_sphere_kick(params, tags, row); break;
            case Scenario::fiber: run_fiber(params, tags, row); break;
            case Scenario::bec: run_bec(params, tags, row); break;
            case Scenario::interface: run_interface(params, row); break;
            case Scenario::covariant_checks: run_covariant(params, tags, row); break;
        }
    } catch (const std::exception& e) {
        row.outputs.clear();
        row.residuals.clear();
        row.labels.clear();
        row.error = e.what();
    }
    return row;
}

}  // namespace

bool ScenarioReport::ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) {
        return !r.error && std::all_of(r.residuals.begin(), r.residuals.end(),
                                       [](const Residual& res) { return res.pass(); });
    });
}

ScenarioReport run(const ScenarioRequest& request, const RunOptions& options) {
    const auto points = request.points();
    std::vector<ReportRow> rows(points.size());

    unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(points.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) rows[i] = run_point(request, points[i], options);
    } else {
        // Strided partition; each row is written by exactly one worker.
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < points.size(); i += workers) {
                    rows[i] = run_point(request, points[i], options);
                }
            });
        }
    }
    return ScenarioReport{request, std::string(provenance(request.scenario)), std::move(rows)};
}

double cross_check_tolerance_from_env() {
    const char* raw = std::getenv("ABMINK_TOL");
    if (!raw) return 1e-6;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) return 1e-6;
    return v;
}

std::vector<CheckResult> run_checks(double mirror_tol) {
    std::vector<CheckResult> out;
    auto push = [&](std::string name, double value, double tol, std::string detail) {
        out.push_back(CheckResult{std::move(name), value, tol, value <= tol, std::move(detail)});
    };

    const auto grid = checks::mirror_grid();
    push("mirror_three_way", checks::mirror_max_disagreement(grid, 1e-8), mirror_tol,
         fmt::format("max pairwise relative disagreement over {} configurations", grid.size()));

    const auto conv = checks::divergence_convergence(1.5, 2.0 * M_PI * si::c / 532e-9);
    push("divergence_convergence", std::abs(conv.ratio - 4.0) / 4.0, 0.2,
         fmt::format("residual ratio {:.4f} on halving the step (4 for second order)", conv.ratio));

    const auto ledger = checks::momentum_ledger(1000);
    push("momentum_ledger", ledger.ledger_error, 1e-12, "g_A + g_mech vs g_M over 1000 random field points");
    push("momentum_ladder", ledger.ladder_error, 1e-12, "g_M vs n^2 g_A and g_A vs S/c^2");

    push("abraham_term_average", checks::abraham_term_average_ratio(1.5, 2.0 * M_PI * si::c / 532e-9, 10), 1e-9,
         "|time average| / peak over 10 optical periods");

    push("rest_frame_reduction", checks::rest_frame_reduction_error(1.5, 1.0), 1e-12,
         "D = eps E and B = mu H from the covariant constitutive relation at rest");
    return out;
}

}  // namespace abmink::cli
