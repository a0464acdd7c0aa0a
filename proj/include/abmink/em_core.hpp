#pragma once

// Rest-frame 3+1 electromagnetic quantities for isotropic media: Poynting
// vector, energy density, stress tensor, the Abraham and Minkowski momentum
// densities and the force densities that go with them. Everything is SI and
// operates on real instantaneous fields.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "abmink/constants.hpp"
#include "abmink/error.hpp"

namespace abmink {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class MomentumTag { Abraham, Minkowski };

std::string_view to_string(MomentumTag tag);
std::optional<MomentumTag> parse_momentum_tag(std::string_view text);

/// Optical and mechanical parameters of an isotropic, non-dispersive medium.
///
/// `mu_r` is the relative magnetic permeability. The dynamic viscosity of a
/// surrounding fluid is `viscosity()`.
class Medium {
public:
    /// Validating constructor; requires n = sqrt(eps_r * mu_r) to 1e-12.
    Medium(double eps_r, double mu_r, double n, double conductivity = 0.0,
           std::optional<double> viscosity = std::nullopt);

    /// eps_r = n^2, mu_r = 1.
    static Medium nonmagnetic(double n, double conductivity = 0.0,
                              std::optional<double> viscosity = std::nullopt);
    static Medium from_permittivity(double eps_r, double mu_r = 1.0);
    static Medium vacuum() { return nonmagnetic(1.0); }

    double eps_r() const noexcept { return eps_r_; }
    double mu_r() const noexcept { return mu_r_; }
    double n() const noexcept { return n_; }
    double conductivity() const noexcept { return conductivity_; }
    std::optional<double> viscosity() const noexcept { return viscosity_; }
    /// Viscosity, or PreconditionError when the medium has none.
    double require_viscosity() const;
    bool is_nonmagnetic() const noexcept { return mu_r_ == 1.0; }

private:
    double eps_r_;
    double mu_r_;
    double n_;
    double conductivity_;
    std::optional<double> viscosity_;
};

struct FieldPoint {
    Vec3 E = Vec3::Zero();
    Vec3 D = Vec3::Zero();
    Vec3 H = Vec3::Zero();
    Vec3 B = Vec3::Zero();

    /// D = eps0 eps_r E and B = mu0 mu_r H.
    static FieldPoint in_medium(const Medium& medium, const Vec3& E, const Vec3& H);
};

struct SourceDensities {
    double rho = 0.0;
    Vec3 J = Vec3::Zero();
};

struct EMQuantities {
    Vec3 S;
    double w;
    Vec3 g_A;
    Vec3 g_M;
    Mat3 stress;
};

/// Monochromatic linearly polarized plane wave
///   E = E0 p cos(k d.r - w t),  H = (k / (w mu0 mu_r)) d x E.
class PlaneWave {
public:
    PlaneWave(double E0, double omega, const Vec3& direction, const Vec3& polarization,
              const Medium& medium);

    double E0() const noexcept { return E0_; }
    double omega() const noexcept { return omega_; }
    const Vec3& direction() const noexcept { return direction_; }
    const Vec3& polarization() const noexcept { return polarization_; }
    const Medium& medium() const noexcept { return medium_; }

    double wavenumber() const noexcept { return medium_.n() * omega_ / si::c; }
    double period() const noexcept { return 2.0 * M_PI / omega_; }
    /// Peak magnetic field amplitude, n E0 / (mu0 mu_r c).
    double H0() const noexcept;

    FieldPoint fields_at(const Vec3& r, double t) const;
    /// Time derivatives of E, D, H, B at (r, t).
    FieldPoint rates_at(const Vec3& r, double t) const;
    /// d/dt (E x H) at (r, t), from the analytic field rates.
    Vec3 poynting_rate(const Vec3& r, double t) const;

private:
    double E0_;
    double omega_;
    Vec3 direction_;
    Vec3 polarization_;
    Medium medium_;
};

Vec3 poynting(const FieldPoint& fp);
Vec3 momentum_density(const FieldPoint& fp, MomentumTag tag);
double energy_density(const FieldPoint& fp);
Mat3 stress_tensor(const FieldPoint& fp);
EMQuantities quantities(const FieldPoint& fp);

/// rho E + J x B - (eps0/2) E^2 grad(eps) - (mu0/2) H^2 grad(mu), rest frame.
Vec3 minkowski_force_density(const SourceDensities& src, const FieldPoint& fp,
                             const Vec3& grad_eps, const Vec3& grad_mu);

/// ((n^2 - 1) / c^2) d/dt(E x H). Nonmagnetic media only.
Vec3 abraham_term(const Medium& medium, const Vec3& dS_dt);

/// Gradient-index force shared by both formalisms, -(eps0/2) E^2 grad(n^2).
Vec3 abraham_minkowski_force(const FieldPoint& fp, const Vec3& grad_n2);

/// Source-free, nonmagnetic: abraham_minkowski_force + abraham_term.
Vec3 abraham_force_density(const Medium& medium, const FieldPoint& fp, const Vec3& grad_n2,
                           const Vec3& dS_dt);

/// Momentum carried by the medium alongside the wave, ((n^2 - 1)/c^2) E x H.
Vec3 mechanical_momentum_density(const Medium& medium, const FieldPoint& fp);

/// Net surface force per area from integrating -(eps0/2) E^2 dn^2/dx across
/// a thin transition layer at normal incidence with tangential E_t. Positive
/// values point toward the `n_to` side.
double interface_pressure(double E_t, double n_from, double n_to);

namespace detail {
/// Uniform spacing dt of the time stamps; throws on non-uniform spacing or
/// fewer than two samples.
double uniform_spacing(std::span<const double> times);
}  // namespace detail

/// Mean of a sampled signal over the largest whole number of periods the
/// samples cover, starting at the first sample. Uses the trapezoidal rule,
/// which is exact for trigonometric polynomials sampled over full periods; a
/// trailing partial interval is linearly interpolated.
template <class T>
T time_average(std::span<const std::pair<double, T>> samples, double period) {
    if (!(period > 0.0)) throw PreconditionError("period", "> 0", period);
    std::vector<double> times;
    times.reserve(samples.size());
    for (const auto& s : samples) times.push_back(s.first);
    const double dt = detail::uniform_spacing(times);
    const double span = times.back() - times.front();
    // Tolerate rounding in the time stamps when the span is an exact multiple.
    const double periods = std::floor(span / period * (1.0 + 1e-12));
    if (periods < 1.0) throw PreconditionError("sample span / period", ">= 1", span / period);

    const double window = periods * period;
    const double steps = window / dt;
    const auto full = std::min(static_cast<std::size_t>(std::floor(steps * (1.0 + 1e-12))),
                                samples.size() - 1);
    T sum = 0.5 * samples[0].second;
    for (std::size_t i = 1; i < full; ++i) sum = sum + samples[i].second;
    T integral = dt * (sum + 0.5 * samples[full].second);
    const double rest = window - static_cast<double>(full) * dt;
    if (rest > 1e-12 * dt && full + 1 < samples.size()) {
        const double frac = rest / dt;
        const T end = (1.0 - frac) * samples[full].second + frac * samples[full + 1].second;
        integral = integral + 0.5 * rest * (samples[full].second + end);
    }
    return (1.0 / window) * integral;
}

template <class T>
T time_average(const std::vector<std::pair<double, T>>& samples, double period) {
    return time_average(std::span<const std::pair<double, T>>(samples), period);
}

}  // namespace abmink
