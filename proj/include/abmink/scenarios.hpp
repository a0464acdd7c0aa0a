#pragma once

// Predictions for the optical radiation-force experiments: the immersed
// mirror (three independent pressure routes), photon drag, condensate
// recoil, fiber exit impulse, the modulated whispering-gallery torque and
// the pulse-driven microsphere kick.

#include <complex>

#include "abmink/em_core.hpp"

namespace abmink::scenarios {

// ---------------------------------------------------------------------------
// Immersed mirror

struct MirrorConfig {
    Medium medium;         // liquid in front of the mirror
    double E0;             // incident amplitude in the liquid [V/m]
    double omega;          // [rad/s]
    double conductivity;   // metal [S/m]
    double max_k_over_alpha = 0.2;

    /// Attenuation constant in the metal, sqrt(mu0 sigma omega / 2) [1/m].
    double alpha() const;
    /// Wavenumber in the liquid, n omega / c [1/m].
    double k() const;
    /// Time-averaged incident Poynting flux, n E0^2 / (2 mu0 c) [W/m^2].
    double incident_flux() const;
    /// Throws PreconditionError unless k/alpha < max_k_over_alpha and the
    /// other inputs are physical.
    void validate() const;
};

struct MirrorPressure {
    double pressure;     // [Pa]
    double reflectance;  // R = 1 - 2k/alpha
    double phase;        // delta with tan(delta) = -k/alpha [rad]
};

struct MetalFieldSample {
    std::complex<double> E_y;  // [V/m]
    std::complex<double> H_z;  // [A/m]
    double x;                  // depth [m]
};

/// (n/c)(1 + R) S_i.
double flux_pressure(double n, double reflectance, double incident_flux);

/// Pressure as the normal momentum flux of incident plus reflected wave.
MirrorPressure mirror_pressure_flux(const MirrorConfig& cfg);

/// Complex skin-layer fields at depth x and t = 0.
MetalFieldSample metal_fields(const MirrorConfig& cfg, double x);

/// Pressure as the integrated Lorentz force (mu0 sigma / 2) Re int E_y H_z^* dx
/// over the skin layer, by adaptive quadrature at relative tolerance
/// `quadrature_tol`. Throws ConvergenceError when the tolerance is not met.
double mirror_pressure_lorentz(const MirrorConfig& cfg, double quadrature_tol = 1e-8);

/// Pressure from the divergence-free incident tensor, S_xx = c g_x / n, with
/// g the time-averaged Minkowski momentum density of the incident wave, plus
/// the reflected term n R S_i / c.
double mirror_pressure_divergence(const MirrorConfig& cfg);

struct MirrorComparison {
    double flux;
    double lorentz;
    double divergence;
    double reflectance;
    /// Largest pairwise relative disagreement of the three routes.
    double max_disagreement;
};

MirrorComparison compare_mirror_routes(const MirrorConfig& cfg, double quadrature_tol = 1e-8);

// ---------------------------------------------------------------------------
// Photon momentum in a medium

/// hbar n omega / c (Minkowski) or hbar omega / (n c) (Abraham).
double photon_momentum(double n, double omega, MomentumTag tag);

struct DragConfig {
    double intensity;  // I [W/m^2]
    double sigma_a;    // absorption cross section [m^2]
    double omega;      // [rad/s]
    double n;
};

/// Longitudinal field balancing the per-carrier momentum uptake,
/// E = I sigma_a p / (hbar omega e) [V/m].
double photon_drag_field(const DragConfig& cfg, MomentumTag tag);

/// Recoil of an atom absorbing one photon in a gas of index n, hbar n omega / c.
double bec_recoil(double n, double omega);

/// Impulse on a fiber end when a pulse of energy `pulse_energy` leaves into
/// vacuum, (n - 1) H / c [N s], along the propagation direction.
double fiber_exit_impulse(double pulse_energy, double n);

// ---------------------------------------------------------------------------
// Modulated whispering-gallery torque on a cylinder

struct TorqueConfig {
    double n = 1.45;  // fused silica
    double a;         // radius [m]
    double P0;        // circulating power amplitude [W]
    double omega0;    // modulation frequency [rad/s]

    void validate() const;
};

struct Torque {
    double torque;     // N_z at the requested time [N m]
    double amplitude;  // |prefactor| [N m]
};

/// N_z = -((n^2 - 1)/c^2) 2 pi a^2 omega0 P0 sin(omega0 t) for the Abraham
/// tag; the Minkowski force has no azimuthal part, so that tag gives zero.
Torque wgm_torque(const TorqueConfig& cfg, double t, MomentumTag tag = MomentumTag::Abraham);

// ---------------------------------------------------------------------------
// Microsphere driven by an absorbed pulse plus ablation recoil

struct SphereKickConfig {
    double M;             // sphere mass [kg]
    double a;             // sphere radius [m]
    double deltaG;        // ablation momentum [kg m/s]
    double pulse_energy;  // [J]
    Medium fluid;
    Medium reference_fluid;
    double L0;            // displacement measured in the reference fluid [m]

    void validate() const;
};

struct KickState {
    double velocity;      // [m/s]
    double displacement;  // [m]
};

/// n H / c (Minkowski) or H / (n c) (Abraham), for the fluid index n.
double pulse_momentum(double pulse_energy, double n, MomentumTag tag);

/// (deltaG + pulse momentum) / M.
double sphere_kick_vmax(const SphereKickConfig& cfg, MomentumTag tag);

/// Stokes-damped motion after the kick:
///   v(t) = v_max exp(-6 pi mu a t / M),  x(t) = L (1 - exp(-6 pi mu a t / M)).
class SphereKickTrajectory {
public:
    SphereKickTrajectory(const SphereKickConfig& cfg, MomentumTag tag);

    double v_max() const noexcept { return v_max_; }
    /// 6 pi mu a / M [1/s].
    double damping_rate() const noexcept { return rate_; }
    KickState at(double t) const;
    /// L = M v_max / (6 pi mu a).
    double total_displacement() const noexcept { return v_max_ / rate_; }

private:
    double v_max_;
    double rate_;
};

KickState sphere_kick_trajectory(const SphereKickConfig& cfg, MomentumTag tag, double t);

/// H / (6 pi a c L0 mu0), with mu0 the reference-fluid viscosity.
double displacement_correction(const SphereKickConfig& cfg);

/// L / L0 predicted for the fluid relative to the reference fluid, eliminating
/// the unknown ablation recoil:
///   Minkowski: (mu0/mu) [1 + K (n - n0)],  Abraham: (mu0/mu) [1 + K (1/n - 1/n0)]
/// with K = displacement_correction(cfg).
double displacement_ratio(const SphereKickConfig& cfg, MomentumTag tag);

}  // namespace abmink::scenarios
