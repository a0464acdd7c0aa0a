#include "abmink/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

namespace abmink::scenarios {

namespace {

using cplx = std::complex<double>;

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

void require_positive(const char* name, double v) {
    if (!(v > 0.0)) throw PreconditionError(name, "> 0", v);
}

void require_non_negative(const char* name, double v) {
    if (!(v >= 0.0)) throw PreconditionError(name, ">= 0", v);
}

}  // namespace

// ---------------------------------------------------------------------------
// Immersed mirror

double MirrorConfig::alpha() const { return std::sqrt(si::mu0 * conductivity * omega / 2.0); }

double MirrorConfig::k() const { return medium.n() * omega / si::c; }

double MirrorConfig::incident_flux() const {
    return medium.n() * E0 * E0 / (2.0 * si::mu0 * medium.mu_r() * si::c);
}

void MirrorConfig::validate() const {
    if (!medium.is_nonmagnetic()) throw PreconditionError("mu_r of the liquid", "== 1", medium.mu_r());
    require_non_negative("E0 [V/m]", E0);
    require_positive("omega [rad/s]", omega);
    require_positive("conductivity [S/m]", conductivity);
    const double ratio = k() / alpha();
    if (!(ratio < max_k_over_alpha)) {
        throw PreconditionError("k/alpha (good-conductor regime)", fmt::format("< {}", max_k_over_alpha), ratio);
    }
}

double flux_pressure(double n, double reflectance, double incident_flux) {
    return n / si::c * (1.0 + reflectance) * incident_flux;
}

MirrorPressure mirror_pressure_flux(const MirrorConfig& cfg) {
    cfg.validate();
    const double ratio = cfg.k() / cfg.alpha();
    const double R = 1.0 - 2.0 * ratio;
    return MirrorPressure{flux_pressure(cfg.medium.n(), R, cfg.incident_flux()), R, std::atan(-ratio)};
}

MetalFieldSample metal_fields(const MirrorConfig& cfg, double x) {
    if (!(x >= 0.0)) throw PreconditionError("depth x [m]", ">= 0", x);
    const double k = cfg.k();
    const double alpha = cfg.alpha();
    const double ratio = k / alpha;
    // e^{-alpha x} e^{i alpha x} at t = 0
    const cplx propagation = std::exp(cplx(-alpha * x, alpha * x));
    const cplx E_y = (k * cfg.E0 / alpha) * cplx(1.0, -1.0) * propagation;
    const cplx H_z = (k * cfg.E0 / (si::mu0 * cfg.omega)) * (2.0 + cplx(-1.0, 1.0) * ratio) * propagation;
    return MetalFieldSample{E_y, H_z, x};
}

double mirror_pressure_lorentz(const MirrorConfig& cfg, double quadrature_tol) {
    cfg.validate();
    require_positive("quadrature_tol", quadrature_tol);
    const double alpha = cfg.alpha();
    // Integrate in the dimensionless depth u = alpha x.
    auto integrand = [&](double u) {
        const MetalFieldSample f = metal_fields(cfg, u / alpha);
        return std::real(f.E_y * std::conj(f.H_z));
    };
    double error = 0.0;
    double l1 = 0.0;
    const double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 30, quadrature_tol, &error, &l1);
    if (!(error <= quadrature_tol * std::abs(integral))) {
        throw ConvergenceError(fmt::format("Lorentz-force quadrature reached error {:.3g} against {:.3g} requested",
                                           integral == 0.0 ? error : error / std::abs(integral), quadrature_tol));
    }
    return 0.5 * si::mu0 * cfg.conductivity * integral / alpha;
}

double mirror_pressure_divergence(const MirrorConfig& cfg) {
    cfg.validate();
    const double n = cfg.medium.n();
    const PlaneWave incident(cfg.E0, cfg.omega, Vec3::UnitX(), Vec3::UnitY(), cfg.medium);
    const FieldPoint peak = incident.fields_at(Vec3::Zero(), 0.0);
    // cos^2 averages to 1/2 over a period.
    const double g_x = 0.5 * momentum_density(peak, MomentumTag::Minkowski).x();
    const double S_x = 0.5 * poynting(peak).x();
    const double incident_flux_term = si::c * g_x / n;
    const double R = 1.0 - 2.0 * cfg.k() / cfg.alpha();
    return incident_flux_term + n * R * S_x / si::c;
}

MirrorComparison compare_mirror_routes(const MirrorConfig& cfg, double quadrature_tol) {
    const MirrorPressure flux = mirror_pressure_flux(cfg);
    const double lorentz = mirror_pressure_lorentz(cfg, quadrature_tol);
    const double divergence = mirror_pressure_divergence(cfg);
    const double worst = std::max({rel_diff(flux.pressure, lorentz), rel_diff(flux.pressure, divergence),
                                   rel_diff(lorentz, divergence)});
    return MirrorComparison{flux.pressure, lorentz, divergence, flux.reflectance, worst};
}

// ---------------------------------------------------------------------------
// Photon momentum in a medium

double photon_momentum(double n, double omega, MomentumTag tag) {
    return tag == MomentumTag::Minkowski ? si::hbar * n * omega / si::c : si::hbar * omega / (n * si::c);
}

double photon_drag_field(const DragConfig& cfg, MomentumTag tag) {
    require_positive("I [W/m^2]", cfg.intensity);
    require_positive("sigma_a [m^2]", cfg.sigma_a);
    require_positive("omega [rad/s]", cfg.omega);
    require_positive("n", cfg.n);
    const double p = photon_momentum(cfg.n, cfg.omega, tag);
    return cfg.intensity * cfg.sigma_a * p / (si::hbar * cfg.omega * si::e_charge);
}

double bec_recoil(double n, double omega) { return photon_momentum(n, omega, MomentumTag::Minkowski); }

double fiber_exit_impulse(double pulse_energy, double n) { return (n - 1.0) * pulse_energy / si::c; }

// ---------------------------------------------------------------------------
// Whispering-gallery torque

void TorqueConfig::validate() const {
    if (!(n >= 1.0)) throw PreconditionError("n", ">= 1", n);
    require_positive("a [m]", a);
    require_non_negative("P0 [W]", P0);
    require_positive("omega0 [rad/s]", omega0);
}

Torque wgm_torque(const TorqueConfig& cfg, double t, MomentumTag tag) {
    cfg.validate();
    if (tag == MomentumTag::Minkowski) return Torque{0.0, 0.0};
    const double amplitude =
        (cfg.n * cfg.n - 1.0) / (si::c * si::c) * 2.0 * M_PI * cfg.a * cfg.a * cfg.omega0 * cfg.P0;
    return Torque{-amplitude * std::sin(cfg.omega0 * t), amplitude};
}

// ---------------------------------------------------------------------------
// Microsphere kick

void SphereKickConfig::validate() const {
    require_positive("M [kg]", M);
    require_positive("a [m]", a);
    require_non_negative("pulse_energy [J]", pulse_energy);
    require_positive("L0 [m]", L0);
    fluid.require_viscosity();
    reference_fluid.require_viscosity();
}

double pulse_momentum(double pulse_energy, double n, MomentumTag tag) {
    return tag == MomentumTag::Minkowski ? n * pulse_energy / si::c : pulse_energy / (n * si::c);
}

double sphere_kick_vmax(const SphereKickConfig& cfg, MomentumTag tag) {
    require_positive("M [kg]", cfg.M);
    require_non_negative("pulse_energy [J]", cfg.pulse_energy);
    return (cfg.deltaG + pulse_momentum(cfg.pulse_energy, cfg.fluid.n(), tag)) / cfg.M;
}

SphereKickTrajectory::SphereKickTrajectory(const SphereKickConfig& cfg, MomentumTag tag)
    : v_max_(sphere_kick_vmax(cfg, tag)) {
    require_positive("a [m]", cfg.a);
    rate_ = 6.0 * M_PI * cfg.fluid.require_viscosity() * cfg.a / cfg.M;
}

KickState SphereKickTrajectory::at(double t) const {
    if (!(t >= 0.0)) throw PreconditionError("t [s]", ">= 0", t);
    const double decay = std::exp(-rate_ * t);
    return KickState{v_max_ * decay, total_displacement() * -std::expm1(-rate_ * t)};
}

KickState sphere_kick_trajectory(const SphereKickConfig& cfg, MomentumTag tag, double t) {
    return SphereKickTrajectory(cfg, tag).at(t);
}

double displacement_correction(const SphereKickConfig& cfg) {
    cfg.validate();
    return cfg.pulse_energy / (6.0 * M_PI * cfg.a * si::c * cfg.L0 * cfg.reference_fluid.require_viscosity());
}

double displacement_ratio(const SphereKickConfig& cfg, MomentumTag tag) {
    const double K = displacement_correction(cfg);
    const double n = cfg.fluid.n();
    const double n0 = cfg.reference_fluid.n();
    const double viscosity_ratio = cfg.reference_fluid.require_viscosity() / cfg.fluid.require_viscosity();
    const double shift = tag == MomentumTag::Minkowski ? n - n0 : 1.0 / n - 1.0 / n0;
    return viscosity_ratio * (1.0 + K * shift);
}

}  // namespace abmink::scenarios
