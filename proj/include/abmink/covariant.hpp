#pragma once

// Four-tensor form of the field equations in the imaginary-time convention
// x_mu = (x, y, z, ict).
//
// Storage convention. Every component with an index equal to 4 carries an
// implicit factor i/c per such index; the stored 4x4 real arrays hold what
// remains. F_{4k} = (i/c) E_k is therefore stored as E_k and V_4 = ic gamma
// as c^2 gamma. Contracting over a repeated index then uses the real metric
//
//     g = diag(1, 1, 1, -1/c^2)
//
// which reproduces the complex arithmetic exactly. Stored index 3 is the
// fourth (time) index.
//
// Units. F is built from SI (E, B). The excitation tensor follows the
// normalized convention eps0 = mu0 = 1 under which the moving-medium
// constitutive relation is written: it stores D/eps0 and mu0 H. EMTensor4
// converts back to SI so its accessors compare directly with em-core.

#include <functional>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "abmink/em_core.hpp"

namespace abmink::covariant {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

/// Real stand-in for the imaginary-time metric; see the header comment.
Vec4 contraction_metric();

class FourVelocity {
public:
    /// gamma (v, ic); requires |v| < c.
    static FourVelocity from_velocity(const Vec3& v);
    static FourVelocity rest() { return from_velocity(Vec3::Zero()); }
    /// Raw stored components (gamma v, c^2 gamma); not checked.
    static FourVelocity from_storage(const Vec4& stored) { return FourVelocity(stored); }

    const Vec4& storage() const noexcept { return v_; }
    Vec3 velocity() const { return v_.head<3>() * (si::c * si::c / v_[3]); }
    /// V_mu V_mu, which is -c^2 for a physical four-velocity.
    double square() const;
    bool is_normalized(double rel_tol = 1e-12) const;

private:
    explicit FourVelocity(const Vec4& v) : v_(v) {}
    Vec4 v_;
};

class FieldTensor4 {
public:
    static FieldTensor4 from_EB(const Vec3& E, const Vec3& B);
    static FieldTensor4 zero() { return FieldTensor4(Mat4::Zero()); }

    Vec3 E() const;
    Vec3 B() const;
    const Mat4& storage() const noexcept { return m_; }

private:
    explicit FieldTensor4(const Mat4& m) : m_(m) {}
    friend class ExcitationTensor4;
    Mat4 m_;
};

class ExcitationTensor4 {
public:
    /// From SI D [C/m^2] and H [A/m].
    static ExcitationTensor4 from_DH(const Vec3& D, const Vec3& H);
    /// From the normalized-unit pair (D/eps0, mu0 H).
    static ExcitationTensor4 from_normalized(const Vec3& D_norm, const Vec3& H_norm);
    /// Takes storage that must already be antisymmetric.
    static ExcitationTensor4 from_storage(const Mat4& m);

    /// Normalized-unit components: D/eps0 and mu0 H.
    Vec3 D_normalized() const;
    Vec3 H_normalized() const;
    Vec3 D() const { return si::eps0 * D_normalized(); }
    Vec3 H() const { return H_normalized() / si::mu0; }
    const Mat4& storage() const noexcept { return m_; }

private:
    explicit ExcitationTensor4(const Mat4& m) : m_(m) {}
    Mat4 m_;
};

/// Minkowski energy-momentum tensor, SI.
class EMTensor4 {
public:
    explicit EMTensor4(const Mat4& si_storage) : m_(si_storage) {}

    /// S_ik, the 3x3 spatial block [Pa].
    Mat3 stress() const { return m_.topLeftCorner<3, 3>(); }
    /// From S_{4k} = (i/c) S_k [W/m^2].
    Vec3 poynting() const { return m_.block<1, 3>(3, 0).transpose(); }
    /// From S_{k4} = i c g_k [kg m^-2 s^-1].
    Vec3 momentum() const { return m_.block<3, 1>(0, 3) / (si::c * si::c); }
    /// From S_44 = -w [J/m^3].
    double energy() const { return m_(3, 3) / (si::c * si::c); }
    const Mat4& storage() const noexcept { return m_; }

private:
    Mat4 m_;
};

struct FourMomentum {
    Vec3 G;
    double W;
};

enum class Causality { timelike, spacelike, null };
std::string_view to_string(Causality c);

FieldTensor4 field_tensor_from_EB(const Vec3& E, const Vec3& B);

/// Solves mu H_{mu nu} = F_{mu nu} - ((n^2-1)/c^2)(F_{mu a} V_nu - F_{nu a} V_mu) V_a
/// for H (normalized units). Throws PreconditionError for an unnormalized V.
ExcitationTensor4 excitation_from_constitutive(const FieldTensor4& F, const FourVelocity& V, double n,
                                               double mu_r);

/// S_{mu nu} = F_{mu a} H_{nu a} - (1/4) delta_{mu nu} F_{a b} H_{a b}, returned in SI.
EMTensor4 minkowski_tensor4(const FieldTensor4& F, const ExcitationTensor4& H);

/// Spacetime point (x, y, z, t) in SI.
using SpacetimePoint = Vec4;
using FieldSampler = std::function<std::pair<FieldTensor4, ExcitationTensor4>(const SpacetimePoint&)>;

/// Central-difference estimate of d_nu S_{mu nu} at `point` using spatial step
/// h and time step h/c (a step h along x_4). Components are in storage units:
/// the first three are the momentum balance [N/m^3], the fourth the energy
/// balance dw/dt + div S [W/m^3].
Vec4 divergence_residual(const FieldSampler& sampler, const SpacetimePoint& point, double grid_step);

/// Field and excitation tensors of a plane wave at a spacetime point.
FieldSampler plane_wave_sampler(const PlaneWave& wave);

/// Sign of c^2 |G|^2 - W^2; values within rel_tol of the larger term are null.
Causality classify_four_momentum(const FourMomentum& p, double rel_tol = 1e-12);

/// Momentum and energy densities of a plane-wave pulse at peak phase, with the
/// momentum density chosen by `tag`.
FourMomentum pulse_four_momentum(const PlaneWave& wave, MomentumTag tag);

}  // namespace abmink::covariant
