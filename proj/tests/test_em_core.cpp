#include <doctest.h>

#include <cmath>
#include <random>

#include "abmink/em_core.hpp"

using namespace abmink;

namespace {

constexpr double c = si::c;
constexpr double eps0 = si::eps0;

bool vec_close(const Vec3& a, const Vec3& b, double rel) {
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return (a - b).cwiseAbs().maxCoeff() <= rel * scale;
}

// Random field points for property tests.
struct FieldGen {
    std::mt19937_64 rng{42};
    std::uniform_real_distribution<double> unit{-1.0, 1.0};
    std::uniform_real_distribution<double> index{1.0, 3.0};

    Vec3 vec(double scale) { return scale * Vec3(unit(rng), unit(rng), unit(rng)); }
    Medium nonmagnetic() { return Medium::nonmagnetic(index(rng)); }
    Medium magnetic() { return Medium::from_permittivity(index(rng) * index(rng), 0.5 + 0.5 * (unit(rng) + 1.0)); }
};

// Composite Simpson; independent of the library quadrature.
template <class F>
double simpson(F f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("physical constants are consistent") {
    CHECK(std::abs(c * c * eps0 * si::mu0 - 1.0) <= 1e-12);
    CHECK(kSI.c > 0);
    CHECK(kSI.eps0 > 0);
    CHECK(kSI.mu0 > 0);
    CHECK(kSI.hbar > 0);
    CHECK(kSI.e_charge > 0);
}

TEST_CASE("medium validation") {
    const Medium water = Medium::nonmagnetic(1.33, 0.0, 1.0e-3);
    CHECK(water.eps_r() == doctest::Approx(1.33 * 1.33));
    CHECK(water.is_nonmagnetic());
    CHECK(water.viscosity().value() == 1.0e-3);

    CHECK_THROWS_AS(Medium(2.25, 1.0, 1.6), PreconditionError);  // n != sqrt(eps mu)
    CHECK_THROWS_AS(Medium::nonmagnetic(0.9), PreconditionError);  // eps_r < 1
    CHECK_THROWS_AS(Medium(2.0, 0.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(Medium::nonmagnetic(1.5, -1.0), PreconditionError);
    CHECK_THROWS_AS(Medium::nonmagnetic(1.5, 0.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(Medium::vacuum().require_viscosity(), PreconditionError);

    try {
        Medium(2.25, 1.0, 1.6);
        FAIL("expected throw");
    } catch (const PreconditionError& e) {
        CHECK(e.quantity() == "n");
        CHECK(e.value() == 1.6);
        CHECK(std::string(e.what()).find("1.6") != std::string::npos);
    }
}

TEST_CASE("field point constitutive relations") {
    const Medium m = Medium::from_permittivity(2.0, 1.5);
    const Vec3 E(1.0, 2.0, 3.0);
    const Vec3 H(-1.0, 0.5, 2.0);
    const FieldPoint fp = FieldPoint::in_medium(m, E, H);
    CHECK(fp.D == eps0 * 2.0 * E);
    CHECK(fp.B == si::mu0 * 1.5 * H);
}

TEST_CASE("poynting") {
    FieldPoint fp;
    fp.E = Vec3(1, 0, 0);
    fp.H = Vec3(0, 1, 0);
    CHECK(poynting(fp) == Vec3(0, 0, 1));

    fp.E = Vec3(2, 0, 0);
    fp.H = Vec3(0, 3, 0);
    CHECK(poynting(fp) == Vec3(0, 0, 6));

    fp.E = Vec3::Zero();
    CHECK(poynting(fp) == Vec3::Zero());
}

TEST_CASE("momentum density") {
    SUBCASE("vacuum: both tags agree") {
        const FieldPoint fp = FieldPoint::in_medium(Medium::vacuum(), Vec3(3, -1, 2), Vec3(0.5, 2, -1));
        CHECK(vec_close(momentum_density(fp, MomentumTag::Abraham), momentum_density(fp, MomentumTag::Minkowski),
                        1e-12));
    }
    SUBCASE("unit fields in vacuum") {
        const FieldPoint fp = FieldPoint::in_medium(Medium::vacuum(), Vec3(1, 0, 0), Vec3(0, 1, 0));
        const Vec3 g = momentum_density(fp, MomentumTag::Abraham);
        // 1 / 299792458^2
        CHECK(g.z() == doctest::Approx(1.1126500560536185e-17).epsilon(1e-14));
        CHECK(g.x() == 0.0);
        CHECK(g.y() == 0.0);
    }
    SUBCASE("plane wave in n = 1.5: g_M = 2.25 g_A") {
        const PlaneWave wave(100.0, 3e15, Vec3::UnitZ(), Vec3::UnitX(), Medium::nonmagnetic(1.5));
        const FieldPoint fp = wave.fields_at(Vec3(0, 0, 1e-8), 1e-16);
        CHECK(vec_close(momentum_density(fp, MomentumTag::Minkowski),
                        2.25 * momentum_density(fp, MomentumTag::Abraham), 1e-12));
    }
}

TEST_CASE("momentum ladder holds for random field points (property)") {
    FieldGen gen;
    for (int i = 0; i < 500; ++i) {
        const Medium m = i % 2 ? gen.nonmagnetic() : gen.magnetic();
        const FieldPoint fp = FieldPoint::in_medium(m, gen.vec(1e3), gen.vec(5.0));
        const Vec3 g_A = momentum_density(fp, MomentumTag::Abraham);
        const Vec3 g_M = momentum_density(fp, MomentumTag::Minkowski);
        REQUIRE(vec_close(g_M, m.n() * m.n() * g_A, 1e-12));
        REQUIRE(vec_close(g_A, poynting(fp) / (c * c), 1e-12));
        if (m.is_nonmagnetic()) REQUIRE(vec_close(g_A + mechanical_momentum_density(m, fp), g_M, 1e-12));
    }
}

TEST_CASE("energy density") {
    CHECK(energy_density(FieldPoint{}) == 0.0);

    const FieldPoint fp = FieldPoint::in_medium(Medium::vacuum(), Vec3(1, 0, 0), Vec3::Zero());
    CHECK(energy_density(fp) == doctest::Approx(4.4270939064001926e-12).epsilon(1e-14));

    SUBCASE("plane wave: electric and magnetic halves average equal") {
        const PlaneWave wave(250.0, 2.0e15, Vec3::UnitX(), Vec3::UnitY(), Medium::nonmagnetic(1.4));
        std::vector<std::pair<double, double>> electric;
        std::vector<std::pair<double, double>> magnetic;
        const int samples = 256;
        for (int i = 0; i <= samples; ++i) {
            const double t = wave.period() * i / samples;
            const FieldPoint f = wave.fields_at(Vec3(1e-7, 0, 0), t);
            electric.emplace_back(t, 0.5 * f.E.dot(f.D));
            magnetic.emplace_back(t, 0.5 * f.H.dot(f.B));
        }
        const double we = time_average(electric, wave.period());
        const double wm = time_average(magnetic, wave.period());
        CHECK(we == doctest::Approx(wm).epsilon(1e-12));
    }

    FieldGen gen;
    for (int i = 0; i < 100; ++i) {
        const FieldPoint f = FieldPoint::in_medium(gen.magnetic(), gen.vec(10.0), gen.vec(1.0));
        REQUIRE(energy_density(f) >= 0.0);
    }
}

TEST_CASE("stress tensor") {
    CHECK(stress_tensor(FieldPoint{}) == Mat3::Zero());

    const double E0 = 7.0;
    const FieldPoint fp = FieldPoint::in_medium(Medium::vacuum(), Vec3(E0, 0, 0), Vec3::Zero());
    const Mat3 s = stress_tensor(fp);
    const double u = eps0 * E0 * E0 / 2.0;
    CHECK(s(0, 0) == doctest::Approx(-u).epsilon(1e-14));
    CHECK(s(1, 1) == doctest::Approx(u).epsilon(1e-14));
    CHECK(s(2, 2) == doctest::Approx(u).epsilon(1e-14));
    CHECK(s(0, 1) == 0.0);

    FieldGen gen;
    for (int i = 0; i < 200; ++i) {
        const Mat3 t = stress_tensor(FieldPoint::in_medium(gen.magnetic(), gen.vec(100.0), gen.vec(1.0)));
        REQUIRE((t - t.transpose()).cwiseAbs().maxCoeff() <= 1e-15 * t.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("quantities bundle agrees with the individual operations") {
    const FieldPoint fp = FieldPoint::in_medium(Medium::nonmagnetic(1.2), Vec3(1, 2, 3), Vec3(3, -2, 1));
    const EMQuantities q = quantities(fp);
    CHECK(q.S == poynting(fp));
    CHECK(q.w == energy_density(fp));
    CHECK(q.g_A == momentum_density(fp, MomentumTag::Abraham));
    CHECK(q.g_M == momentum_density(fp, MomentumTag::Minkowski));
    CHECK(q.stress == stress_tensor(fp));
}

TEST_CASE("Minkowski force density") {
    const Medium m = Medium::nonmagnetic(1.5);
    const FieldPoint fp = FieldPoint::in_medium(m, Vec3(1, 2, 3), Vec3(0.1, 0.2, -0.3));
    CHECK(minkowski_force_density({}, fp, Vec3::Zero(), Vec3::Zero()) == Vec3::Zero());

    FieldPoint coulomb;
    coulomb.E = Vec3(1, 0, 0);
    CHECK(minkowski_force_density({1.0, Vec3::Zero()}, coulomb, Vec3::Zero(), Vec3::Zero()) == Vec3(1, 0, 0));

    const Vec3 f = minkowski_force_density({}, coulomb, Vec3(2, 0, 0), Vec3::Zero());
    CHECK(f.x() == doctest::Approx(-eps0).epsilon(1e-15));
    CHECK(f.y() == 0.0);

    FieldPoint magnetic;
    magnetic.B = Vec3(0, 0, 2);
    magnetic.H = Vec3(0, 0, 3);
    const Vec3 jxb = minkowski_force_density({0.0, Vec3(1, 0, 0)}, magnetic, Vec3::Zero(), Vec3(0, 1, 0));
    // J x B = (0, -2, 0); -(mu0/2) 9 grad mu
    CHECK(jxb.y() == doctest::Approx(-2.0 - 4.5 * si::mu0).epsilon(1e-15));
}

TEST_CASE("Abraham term") {
    const Vec3 rate(9e16, 0, 0);
    CHECK(abraham_term(Medium::vacuum(), rate) == Vec3::Zero());
    CHECK(abraham_term(Medium::nonmagnetic(1.5), Vec3::Zero()) == Vec3::Zero());
    // 1.25 * 9e16 / c^2
    CHECK(abraham_term(Medium::nonmagnetic(1.5), rate).x() == doctest::Approx(1.2517313130603207).epsilon(1e-14));
    CHECK_THROWS_AS(abraham_term(Medium::from_permittivity(2.0, 1.2), rate), PreconditionError);
}

TEST_CASE("Abraham force density") {
    const Medium m = Medium::nonmagnetic(1.5);
    const FieldPoint fp = FieldPoint::in_medium(m, Vec3(3, 1, -2), Vec3(0.01, 0.02, 0.0));
    CHECK(abraham_force_density(m, fp, Vec3::Zero(), Vec3::Zero()) == Vec3::Zero());

    const Vec3 grad(0.5, -1.0, 2.0);
    const Vec3 rate(1e15, 2e14, -3e15);
    CHECK(abraham_force_density(m, fp, grad, Vec3::Zero()) == abraham_minkowski_force(fp, grad));
    // Composition is exact: the two parts are summed once.
    CHECK(abraham_force_density(m, fp, grad, rate) == abraham_minkowski_force(fp, grad) + abraham_term(m, rate));
    CHECK_THROWS_AS(abraham_force_density(Medium::from_permittivity(2.0, 2.0), fp, grad, rate), PreconditionError);

    SUBCASE("static surface forces of both formalisms coincide") {
        FieldGen gen;
        for (int i = 0; i < 200; ++i) {
            const Medium med = gen.nonmagnetic();
            const FieldPoint f = FieldPoint::in_medium(med, gen.vec(1e3), gen.vec(1.0));
            const Vec3 g = gen.vec(1e4);  // grad n^2 = grad eps for mu = 1
            REQUIRE(vec_close(abraham_force_density(med, f, g, Vec3::Zero()),
                              minkowski_force_density({}, f, g, Vec3::Zero()), 1e-14));
        }
    }
}

TEST_CASE("mechanical momentum density") {
    const FieldPoint fp = FieldPoint::in_medium(Medium::vacuum(), Vec3(1, 0, 0), Vec3(0, 1, 0));
    CHECK(mechanical_momentum_density(Medium::vacuum(), fp) == Vec3::Zero());

    FieldPoint unit;
    unit.E = Vec3(1, 0, 0);
    unit.H = Vec3(0, 1, 0);
    const Vec3 g = mechanical_momentum_density(Medium::nonmagnetic(1.5), unit);
    CHECK(g.z() == doctest::Approx(1.25 / (c * c)).epsilon(1e-14));
    CHECK_THROWS_AS(mechanical_momentum_density(Medium::from_permittivity(2.0, 2.0), unit), PreconditionError);
}

TEST_CASE("time average") {
    std::vector<std::pair<double, double>> constant;
    for (int i = 0; i <= 10; ++i) constant.emplace_back(0.1 * i, 3.5);
    CHECK(time_average(constant, 0.5) == doctest::Approx(3.5).epsilon(1e-15));

    SUBCASE("sine over one period") {
        const double omega = 2.0 * M_PI * 5.0;
        const double period = 0.2;
        std::vector<std::pair<double, double>> s;
        for (int i = 0; i <= 64; ++i) {
            const double t = period * i / 64;
            s.emplace_back(t, 2.0 * std::sin(omega * t));
        }
        CHECK(std::abs(time_average(s, period)) <= 1e-9 * 2.0);
    }

    SUBCASE("window is a whole number of periods with a partial tail") {
        // cos^2 over 2.7 periods of samples: average over the 2 full periods is 1/2.
        const double period = 1.0;
        std::vector<std::pair<double, double>> s;
        const int n = 270;
        for (int i = 0; i <= n; ++i) {
            const double t = 2.7 * i / n;
            s.emplace_back(t, std::pow(std::cos(2.0 * M_PI * t), 2));
        }
        CHECK(time_average(s, period) == doctest::Approx(0.5).epsilon(1e-4));
    }

    SUBCASE("Abraham term of a plane wave averages out") {
        const Medium m = Medium::nonmagnetic(1.5);
        const PlaneWave wave(1e3, 3.0e15, Vec3::UnitX(), Vec3::UnitY(), m);
        std::vector<std::pair<double, Vec3>> s;
        double peak = 0.0;
        for (int i = 0; i <= 5 * 100; ++i) {
            const double t = wave.period() * i / 100;
            const Vec3 f = abraham_term(m, wave.poynting_rate(Vec3(2e-8, 0, 0), t));
            peak = std::max(peak, f.norm());
            s.emplace_back(t, f);
        }
        CHECK(time_average(s, wave.period()).norm() <= 1e-9 * peak);
    }

    SUBCASE("errors") {
        std::vector<std::pair<double, double>> uneven{{0.0, 1.0}, {0.1, 1.0}, {0.3, 1.0}, {0.4, 1.0}};
        CHECK_THROWS_AS(time_average(uneven, 0.2), PreconditionError);
        std::vector<std::pair<double, double>> short_span{{0.0, 1.0}, {0.1, 1.0}, {0.2, 1.0}};
        CHECK_THROWS_AS(time_average(short_span, 0.5), PreconditionError);
        CHECK_THROWS_AS(time_average(short_span, 0.0), PreconditionError);
        std::vector<std::pair<double, double>> single{{0.0, 1.0}};
        CHECK_THROWS_AS(time_average(single, 1.0), PreconditionError);
    }
}

TEST_CASE("plane wave") {
    const Medium m = Medium::nonmagnetic(1.5);
    const PlaneWave wave(10.0, 2.0e15, Vec3::UnitX(), Vec3::UnitY(), m);
    CHECK(wave.wavenumber() == doctest::Approx(1.5 * 2.0e15 / c));

    // H = n E / (mu0 c) means |S| = n E^2 / (mu0 c) at peak.
    const FieldPoint peak = wave.fields_at(Vec3::Zero(), 0.0);
    CHECK(poynting(peak).x() == doctest::Approx(1.5 * 100.0 / (si::mu0 * c)).epsilon(1e-14));

    // Analytic rate vs central finite difference.
    const Vec3 r(3e-8, 0, 0);
    const double t = 1.3e-16;
    const double dt = wave.period() * 1e-5;
    const Vec3 fd = (poynting(wave.fields_at(r, t + dt)) - poynting(wave.fields_at(r, t - dt))) / (2 * dt);
    CHECK(vec_close(wave.poynting_rate(r, t), fd, 1e-7));

    CHECK_THROWS_AS(PlaneWave(1.0, 1.0, Vec3::UnitX(), Vec3::UnitX(), m), PreconditionError);
    CHECK_THROWS_AS(PlaneWave(1.0, 1.0, Vec3(2, 0, 0), Vec3::UnitY(), m), PreconditionError);
    CHECK_THROWS_AS(PlaneWave(1.0, -1.0, Vec3::UnitX(), Vec3::UnitY(), m), PreconditionError);
}

TEST_CASE("interface pressure") {
    CHECK(interface_pressure(100.0, 1.33, 1.33) == 0.0);
    // Light going from air into water pulls the surface toward the air.
    CHECK(interface_pressure(100.0, 1.0, 1.33) < 0.0);
    CHECK(interface_pressure(1.0, std::sqrt(2.0), 1.0) == doctest::Approx(4.4270939064001926e-12).epsilon(1e-12));

    SUBCASE("matches the boundary-layer integral for a smooth profile") {
        // n^2(x) = n1^2 + (n2^2 - n1^2)(1 + tanh(x/d))/2, E tangential and continuous.
        const double n1 = 1.0;
        const double n2 = 1.33;
        const double E_t = 250.0;
        const double d = 1e-9;
        auto dn2 = [&](double x) {
            const double sech = 1.0 / std::cosh(x / d);
            return (n2 * n2 - n1 * n1) * 0.5 * sech * sech / d;
        };
        const double integral = simpson([&](double x) { return -0.5 * eps0 * E_t * E_t * dn2(x); }, -40 * d, 40 * d,
                                        4000);
        CHECK(interface_pressure(E_t, n1, n2) == doctest::Approx(integral).epsilon(1e-9));
    }
}

TEST_CASE("momentum tag names") {
    CHECK(to_string(MomentumTag::Abraham) == "Abraham");
    CHECK(parse_momentum_tag("Minkowski") == MomentumTag::Minkowski);
    CHECK(parse_momentum_tag("minkowski") == MomentumTag::Minkowski);
    CHECK_FALSE(parse_momentum_tag("Einstein-Laub").has_value());
}
