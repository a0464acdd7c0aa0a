#include "abmink/em_core.hpp"

#include <fmt/format.h>

namespace abmink {

PreconditionError::PreconditionError(std::string quantity, std::string bound, double value)
    : std::domain_error(fmt::format("{} must satisfy {} (got {:.9g})", quantity, bound, value)),
      quantity_(std::move(quantity)),
      bound_(std::move(bound)),
      value_(value) {}

std::string_view to_string(MomentumTag tag) {
    return tag == MomentumTag::Abraham ? "Abraham" : "Minkowski";
}

std::optional<MomentumTag> parse_momentum_tag(std::string_view text) {
    if (text == "Abraham" || text == "abraham" || text == "A") return MomentumTag::Abraham;
    if (text == "Minkowski" || text == "minkowski" || text == "M") return MomentumTag::Minkowski;
    return std::nullopt;
}

namespace {

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

void require_nonmagnetic(const Medium& medium) {
    if (!medium.is_nonmagnetic()) throw PreconditionError("mu_r", "== 1 (nonmagnetic medium)", medium.mu_r());
}

}  // namespace

Medium::Medium(double eps_r, double mu_r, double n, double conductivity,
               std::optional<double> viscosity)
    : eps_r_(eps_r), mu_r_(mu_r), n_(n), conductivity_(conductivity), viscosity_(viscosity) {
    if (!(eps_r >= 1.0)) throw PreconditionError("eps_r", ">= 1", eps_r);
    if (!(mu_r > 0.0)) throw PreconditionError("mu_r", "> 0", mu_r);
    if (!(conductivity >= 0.0)) throw PreconditionError("conductivity [S/m]", ">= 0", conductivity);
    if (viscosity && !(*viscosity > 0.0)) throw PreconditionError("viscosity [Pa s]", "> 0", *viscosity);
    const double expected = std::sqrt(eps_r * mu_r);
    if (!(rel_diff(n, expected) <= 1e-12)) {
        throw PreconditionError("n", fmt::format("== sqrt(eps_r mu_r) = {:.15g}", expected), n);
    }
}

Medium Medium::nonmagnetic(double n, double conductivity, std::optional<double> viscosity) {
    return Medium(n * n, 1.0, n, conductivity, viscosity);
}

Medium Medium::from_permittivity(double eps_r, double mu_r) {
    return Medium(eps_r, mu_r, std::sqrt(eps_r * mu_r));
}

double Medium::require_viscosity() const {
    if (!viscosity_) throw PreconditionError("viscosity [Pa s]", "present", std::nan(""));
    return *viscosity_;
}

FieldPoint FieldPoint::in_medium(const Medium& medium, const Vec3& E, const Vec3& H) {
    return FieldPoint{E, si::eps0 * medium.eps_r() * E, H, si::mu0 * medium.mu_r() * H};
}

PlaneWave::PlaneWave(double E0, double omega, const Vec3& direction, const Vec3& polarization,
                     const Medium& medium)
    : E0_(E0), omega_(omega), direction_(direction), polarization_(polarization), medium_(medium) {
    if (!(omega > 0.0)) throw PreconditionError("omega [rad/s]", "> 0", omega);
    if (std::abs(direction.norm() - 1.0) > 1e-12) {
        throw PreconditionError("|direction|", "== 1", direction.norm());
    }
    if (std::abs(polarization.norm() - 1.0) > 1e-12) {
        throw PreconditionError("|polarization|", "== 1", polarization.norm());
    }
    if (std::abs(direction.dot(polarization)) > 1e-12) {
        throw PreconditionError("direction . polarization", "== 0", direction.dot(polarization));
    }
}

double PlaneWave::H0() const noexcept {
    return medium_.n() * E0_ / (si::mu0 * medium_.mu_r() * si::c);
}

FieldPoint PlaneWave::fields_at(const Vec3& r, double t) const {
    const double phase = wavenumber() * direction_.dot(r) - omega_ * t;
    const double cs = std::cos(phase);
    return FieldPoint::in_medium(medium_, E0_ * cs * polarization_,
                                 H0() * cs * direction_.cross(polarization_));
}

FieldPoint PlaneWave::rates_at(const Vec3& r, double t) const {
    // d/dt cos(k.r - w t) = w sin(k.r - w t)
    const double phase = wavenumber() * direction_.dot(r) - omega_ * t;
    const double rate = omega_ * std::sin(phase);
    return FieldPoint::in_medium(medium_, E0_ * rate * polarization_,
                                 H0() * rate * direction_.cross(polarization_));
}

Vec3 PlaneWave::poynting_rate(const Vec3& r, double t) const {
    const FieldPoint f = fields_at(r, t);
    const FieldPoint df = rates_at(r, t);
    return df.E.cross(f.H) + f.E.cross(df.H);
}

Vec3 poynting(const FieldPoint& fp) { return fp.E.cross(fp.H); }

Vec3 momentum_density(const FieldPoint& fp, MomentumTag tag) {
    if (tag == MomentumTag::Minkowski) return fp.D.cross(fp.B);
    return fp.E.cross(fp.H) / (si::c * si::c);
}

double energy_density(const FieldPoint& fp) { return 0.5 * (fp.E.dot(fp.D) + fp.H.dot(fp.B)); }

Mat3 stress_tensor(const FieldPoint& fp) {
    Mat3 s = -fp.E * fp.D.transpose() - fp.H * fp.B.transpose();
    s.diagonal().array() += energy_density(fp);
    return s;
}

EMQuantities quantities(const FieldPoint& fp) {
    return EMQuantities{poynting(fp), energy_density(fp), momentum_density(fp, MomentumTag::Abraham),
                        momentum_density(fp, MomentumTag::Minkowski), stress_tensor(fp)};
}

Vec3 minkowski_force_density(const SourceDensities& src, const FieldPoint& fp,
                             const Vec3& grad_eps, const Vec3& grad_mu) {
    return src.rho * fp.E + src.J.cross(fp.B) - 0.5 * si::eps0 * fp.E.squaredNorm() * grad_eps -
           0.5 * si::mu0 * fp.H.squaredNorm() * grad_mu;
}

Vec3 abraham_term(const Medium& medium, const Vec3& dS_dt) {
    require_nonmagnetic(medium);
    const double n = medium.n();
    return ((n * n - 1.0) / (si::c * si::c)) * dS_dt;
}

Vec3 abraham_minkowski_force(const FieldPoint& fp, const Vec3& grad_n2) {
    return -0.5 * si::eps0 * fp.E.squaredNorm() * grad_n2;
}

Vec3 abraham_force_density(const Medium& medium, const FieldPoint& fp, const Vec3& grad_n2,
                           const Vec3& dS_dt) {
    require_nonmagnetic(medium);
    return abraham_minkowski_force(fp, grad_n2) + abraham_term(medium, dS_dt);
}

Vec3 mechanical_momentum_density(const Medium& medium, const FieldPoint& fp) {
    require_nonmagnetic(medium);
    const double n = medium.n();
    return ((n * n - 1.0) / (si::c * si::c)) * fp.E.cross(fp.H);
}

double interface_pressure(double E_t, double n_from, double n_to) {
    return 0.5 * si::eps0 * E_t * E_t * (n_from * n_from - n_to * n_to);
}

namespace detail {

double uniform_spacing(std::span<const double> times) {
    if (times.size() < 2) throw PreconditionError("sample count", ">= 2", static_cast<double>(times.size()));
    const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(dt > 0.0)) throw PreconditionError("sample spacing [s]", "> 0", dt);
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double step = times[i] - times[i - 1];
        if (std::abs(step - dt) > 1e-6 * dt) {
            throw PreconditionError(fmt::format("sample spacing at index {} [s]", i),
                                    fmt::format("uniform ({:.9g} s)", dt), step);
        }
    }
    return dt;
}

}  // namespace detail

}  // namespace abmink
