#include "abmink/covariant.hpp"

#include <cmath>

#include <fmt/format.h>

namespace abmink::covariant {

namespace {

constexpr double kC2 = si::c * si::c;

// Spatial block of an antisymmetric tensor from an axial vector, T_ik = a_l (cyclic).
void set_axial(Mat4& m, const Vec3& a) {
    m(0, 1) = a[2];
    m(1, 2) = a[0];
    m(2, 0) = a[1];
    m(1, 0) = -a[2];
    m(2, 1) = -a[0];
    m(0, 2) = -a[1];
}

Vec3 axial(const Mat4& m) { return Vec3(m(1, 2), m(2, 0), m(0, 1)); }

// Time row: T_{4k} = (i/c) v_k is stored as v_k; T_{k4} = -T_{4k}.
void set_time_row(Mat4& m, const Vec3& v) {
    for (int k = 0; k < 3; ++k) {
        m(3, k) = v[k];
        m(k, 3) = -v[k];
    }
}

Mat4 antisymmetric(const Vec3& time_row, const Vec3& axial_part) {
    Mat4 m = Mat4::Zero();
    set_time_row(m, time_row);
    set_axial(m, axial_part);
    return m;
}

}  // namespace

Vec4 contraction_metric() { return Vec4(1.0, 1.0, 1.0, -1.0 / kC2); }

FourVelocity FourVelocity::from_velocity(const Vec3& v) {
    const double beta2 = v.squaredNorm() / kC2;
    if (!(beta2 < 1.0)) throw PreconditionError("|v| / c", "< 1", std::sqrt(beta2));
    const double gamma = 1.0 / std::sqrt(1.0 - beta2);
    Vec4 s;
    s << gamma * v, kC2 * gamma;
    return FourVelocity(s);
}

double FourVelocity::square() const {
    return (v_.array() * v_.array() * contraction_metric().array()).sum();
}

bool FourVelocity::is_normalized(double rel_tol) const {
    // Both terms of V.V grow like gamma^2, so scale the tolerance with them.
    const double gamma = v_[3] / kC2;
    return std::abs(square() + kC2) <= rel_tol * kC2 * std::max(1.0, gamma * gamma);
}

FieldTensor4 FieldTensor4::from_EB(const Vec3& E, const Vec3& B) { return FieldTensor4(antisymmetric(E, B)); }

Vec3 FieldTensor4::E() const { return m_.block<1, 3>(3, 0).transpose(); }
Vec3 FieldTensor4::B() const { return axial(m_); }

ExcitationTensor4 ExcitationTensor4::from_DH(const Vec3& D, const Vec3& H) {
    return from_normalized(D / si::eps0, si::mu0 * H);
}

ExcitationTensor4 ExcitationTensor4::from_normalized(const Vec3& D_norm, const Vec3& H_norm) {
    return ExcitationTensor4(antisymmetric(D_norm, H_norm));
}

ExcitationTensor4 ExcitationTensor4::from_storage(const Mat4& m) {
    const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (asym != 0.0) throw PreconditionError("|H + H^T|", "== 0 (antisymmetric)", asym);
    return ExcitationTensor4(m);
}

Vec3 ExcitationTensor4::D_normalized() const { return m_.block<1, 3>(3, 0).transpose(); }
Vec3 ExcitationTensor4::H_normalized() const { return axial(m_); }

std::string_view to_string(Causality c) {
    switch (c) {
        case Causality::timelike: return "timelike";
        case Causality::spacelike: return "spacelike";
        case Causality::null: return "null";
    }
    return "unknown";
}

FieldTensor4 field_tensor_from_EB(const Vec3& E, const Vec3& B) { return FieldTensor4::from_EB(E, B); }

ExcitationTensor4 excitation_from_constitutive(const FieldTensor4& F, const FourVelocity& V, double n,
                                               double mu_r) {
    if (!V.is_normalized()) throw PreconditionError("V_mu V_mu / -c^2", "== 1", V.square() / -kC2);
    if (!(mu_r > 0.0)) throw PreconditionError("mu_r", "> 0", mu_r);

    const Mat4& f = F.storage();
    const Vec4& v = V.storage();
    const Vec4 g = contraction_metric();
    // u_mu = F_{mu a} V_a
    const Vec4 u = f * g.cwiseProduct(v);
    const Mat4 moving = u * v.transpose() - v * u.transpose();
    const Mat4 h = (f - ((n * n - 1.0) / kC2) * moving) / mu_r;
    return ExcitationTensor4::from_storage(h);
}

EMTensor4 minkowski_tensor4(const FieldTensor4& F, const ExcitationTensor4& H) {
    const Mat4& f = F.storage();
    const Mat4& h = H.storage();
    const Vec4 g = contraction_metric();
    const double invariant = (g * g.transpose()).cwiseProduct(f.cwiseProduct(h)).sum();
    Mat4 s = f * g.asDiagonal() * h.transpose();
    // delta_{mu nu} in storage is the inverse metric, diag(1, 1, 1, -c^2).
    s.diagonal() -= 0.25 * invariant * g.cwiseInverse();
    return EMTensor4(s / si::mu0);
}

Vec4 divergence_residual(const FieldSampler& sampler, const SpacetimePoint& point, double grid_step) {
    if (!(grid_step > 0.0)) throw PreconditionError("grid_step [m]", "> 0", grid_step);

    auto tensor_at = [&](const SpacetimePoint& p) {
        const auto [F, H] = sampler(p);
        return minkowski_tensor4(F, H).storage();
    };

    Vec4 residual = Vec4::Zero();
    for (int axis = 0; axis < 4; ++axis) {
        // Step h along x_4 = ict is a time step h/c; the leftover factor
        // 1/(ic) against the column's implicit i/c gives 1/c^2.
        const double step = axis < 3 ? grid_step : grid_step / si::c;
        const double weight = axis < 3 ? 1.0 : 1.0 / kC2;
        SpacetimePoint plus = point;
        SpacetimePoint minus = point;
        plus[axis] += step;
        minus[axis] -= step;
        const Vec4 column = (tensor_at(plus).col(axis) - tensor_at(minus).col(axis)) / (2.0 * step);
        residual += weight * column;
    }
    return residual;
}

FieldSampler plane_wave_sampler(const PlaneWave& wave) {
    return [wave](const SpacetimePoint& p) {
        const FieldPoint fp = wave.fields_at(p.head<3>(), p[3]);
        return std::make_pair(FieldTensor4::from_EB(fp.E, fp.B), ExcitationTensor4::from_DH(fp.D, fp.H));
    };
}

Causality classify_four_momentum(const FourMomentum& p, double rel_tol) {
    const double momentum_term = kC2 * p.G.squaredNorm();
    const double energy_term = p.W * p.W;
    const double scale = std::max(momentum_term, energy_term);
    const double q = momentum_term - energy_term;
    if (std::abs(q) <= rel_tol * scale) return Causality::null;
    return q > 0.0 ? Causality::spacelike : Causality::timelike;
}

FourMomentum pulse_four_momentum(const PlaneWave& wave, MomentumTag tag) {
    const FieldPoint peak = wave.fields_at(Vec3::Zero(), 0.0);
    return FourMomentum{momentum_density(peak, tag), energy_density(peak)};
}

}  // namespace abmink::covariant
