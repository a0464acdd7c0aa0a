#include "abmink/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "abmink/covariant.hpp"

namespace abmink::checks {

namespace {

double vec_rel_error(const Vec3& a, const Vec3& b) {
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return scale == 0.0 ? 0.0 : (a - b).cwiseAbs().maxCoeff() / scale;
}

constexpr double kVisibleShort = 400e-9;
constexpr double kVisibleLong = 700e-9;

}  // namespace

std::vector<scenarios::MirrorConfig> mirror_grid(double E0) {
    std::vector<scenarios::MirrorConfig> grid;
    const double omega_lo = 2.0 * M_PI * si::c / kVisibleLong;
    const double omega_hi = 2.0 * M_PI * si::c / kVisibleShort;
    for (int i = 0; i < 5; ++i) {
        const double n = 1.0 + 0.6 * i / 4.0;
        for (int j = 0; j < 5; ++j) {
            const double sigma = std::pow(10.0, 7.0 + j / 4.0);
            for (int l = 0; l < 5; ++l) {
                const double omega = omega_lo + (omega_hi - omega_lo) * l / 4.0;
                grid.push_back({Medium::nonmagnetic(n), E0, omega, sigma});
            }
        }
    }
    return grid;
}

double mirror_max_disagreement(const std::vector<scenarios::MirrorConfig>& grid, double quadrature_tol) {
    double worst = 0.0;
    for (const auto& cfg : grid) {
        worst = std::max(worst, scenarios::compare_mirror_routes(cfg, quadrature_tol).max_disagreement);
    }
    return worst;
}

ConvergenceResult divergence_convergence(double n, double omega, double step_fraction) {
    const Vec3 direction = Vec3(1.0, 2.0, 2.0) / 3.0;
    const Vec3 polarization = Vec3(2.0, -1.0, 0.0).normalized();
    const PlaneWave wave(1.0e3, omega, direction, polarization, Medium::nonmagnetic(n));
    const auto sampler = covariant::plane_wave_sampler(wave);
    const double wavelength = 2.0 * M_PI / wave.wavenumber();
    const double h = step_fraction * wavelength;
    // Phase away from nodes of the residual's leading error term.
    const covariant::SpacetimePoint point(0.13 * wavelength, -0.07 * wavelength, 0.21 * wavelength,
                                          0.05 * wave.period());

    auto momentum_residual = [&](double step) {
        return covariant::divergence_residual(sampler, point, step).head<3>().norm();
    };
    const double coarse = momentum_residual(h);
    const double fine = momentum_residual(h / 2.0);
    const FieldPoint peak = wave.fields_at(Vec3::Zero(), 0.0);
    return ConvergenceResult{coarse, fine, coarse / fine, energy_density(peak) * wave.wavenumber()};
}

LedgerResult momentum_ledger(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> index(1.0, 2.5);
    std::uniform_real_distribution<double> component(-1.0, 1.0);
    std::uniform_real_distribution<double> exponent(-3.0, 6.0);
    LedgerResult result{0.0, 0.0};
    for (int i = 0; i < count; ++i) {
        const Medium medium = Medium::nonmagnetic(index(rng));
        const double e_scale = std::pow(10.0, exponent(rng));
        const double h_scale = std::pow(10.0, exponent(rng) - 2.0);
        const Vec3 E(component(rng), component(rng), component(rng));
        const Vec3 H(component(rng), component(rng), component(rng));
        const FieldPoint fp = FieldPoint::in_medium(medium, e_scale * E, h_scale * H);

        const Vec3 g_A = momentum_density(fp, MomentumTag::Abraham);
        const Vec3 g_M = momentum_density(fp, MomentumTag::Minkowski);
        const Vec3 g_mech = mechanical_momentum_density(medium, fp);
        const double n2 = medium.n() * medium.n();
        result.ledger_error = std::max(result.ledger_error, vec_rel_error(g_A + g_mech, g_M));
        result.ladder_error = std::max({result.ladder_error, vec_rel_error(n2 * g_A, g_M),
                                        vec_rel_error(g_A, poynting(fp) / (si::c * si::c))});
    }
    return result;
}

double abraham_term_average_ratio(double n, double omega, int periods, int samples_per_period) {
    const Medium medium = Medium::nonmagnetic(n);
    const PlaneWave wave(1.0e3, omega, Vec3::UnitX(), Vec3::UnitY(), medium);
    const Vec3 r(0.3 / wave.wavenumber(), 0.0, 0.0);
    const int total = periods * samples_per_period;
    const double dt = wave.period() / samples_per_period;
    std::vector<std::pair<double, Vec3>> samples;
    samples.reserve(total + 1);
    double peak = 0.0;
    for (int i = 0; i <= total; ++i) {
        const double t = i * dt;
        const Vec3 f = abraham_term(medium, wave.poynting_rate(r, t));
        peak = std::max(peak, f.norm());
        samples.emplace_back(t, f);
    }
    // Peak of sin(2 phase) is also reached between samples; use the analytic value.
    const double n2 = n * n;
    const double analytic_peak = (n2 - 1.0) / (si::c * si::c) * wave.E0() * wave.H0() * omega;
    peak = std::max(peak, analytic_peak);
    if (peak == 0.0) return 0.0;
    return time_average(samples, wave.period()).norm() / peak;
}

double rest_frame_reduction_error(double n, double mu_r) {
    const Vec3 E(1.5e3, -2.0e2, 7.0e2);
    const Vec3 B(3.0e-6, 1.0e-6, -4.0e-6);
    const auto F = covariant::field_tensor_from_EB(E, B);
    const auto H = covariant::excitation_from_constitutive(F, covariant::FourVelocity::rest(), n, mu_r);
    const double eps = n * n / mu_r;
    return std::max(vec_rel_error(H.D_normalized(), eps * E), vec_rel_error(mu_r * H.H_normalized(), B));
}

}  // namespace abmink::checks
