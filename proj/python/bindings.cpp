#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abmink/checks.hpp"
#include "abmink/cli_io.hpp"
#include "abmink/covariant.hpp"
#include "abmink/em_core.hpp"
#include "abmink/scenarios.hpp"

namespace py = pybind11;
using namespace abmink;

PYBIND11_MODULE(_abmink, m) {
    m.doc() = "Abraham and Minkowski momentum in media: field quantities, four-tensors, scenarios";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<MomentumTag>(m, "MomentumTag")
        .value("Abraham", MomentumTag::Abraham)
        .value("Minkowski", MomentumTag::Minkowski);

    auto constants = m.def_submodule("constants", "SI constants");
    constants.attr("c") = si::c;
    constants.attr("eps0") = si::eps0;
    constants.attr("mu0") = si::mu0;
    constants.attr("hbar") = si::hbar;
    constants.attr("e_charge") = si::e_charge;

    py::class_<Medium>(m, "Medium")
        .def(py::init<double, double, double, double, std::optional<double>>(), py::arg("eps_r"),
             py::arg("mu_r"), py::arg("n"), py::arg("conductivity") = 0.0, py::arg("viscosity") = py::none())
        .def_static("nonmagnetic", &Medium::nonmagnetic, py::arg("n"), py::arg("conductivity") = 0.0,
                    py::arg("viscosity") = py::none())
        .def_property_readonly("eps_r", &Medium::eps_r)
        .def_property_readonly("mu_r", &Medium::mu_r)
        .def_property_readonly("n", &Medium::n)
        .def_property_readonly("conductivity", &Medium::conductivity)
        .def_property_readonly("viscosity", &Medium::viscosity);

    py::class_<FieldPoint>(m, "FieldPoint")
        .def(py::init<>())
        .def_static("in_medium", &FieldPoint::in_medium, py::arg("medium"), py::arg("E"), py::arg("H"))
        .def_readwrite("E", &FieldPoint::E)
        .def_readwrite("D", &FieldPoint::D)
        .def_readwrite("H", &FieldPoint::H)
        .def_readwrite("B", &FieldPoint::B);

    py::class_<SourceDensities>(m, "SourceDensities")
        .def(py::init<>())
        .def(py::init<double, Vec3>(), py::arg("rho"), py::arg("J"))
        .def_readwrite("rho", &SourceDensities::rho)
        .def_readwrite("J", &SourceDensities::J);

    py::class_<PlaneWave>(m, "PlaneWave")
        .def(py::init<double, double, const Vec3&, const Vec3&, const Medium&>(), py::arg("E0"), py::arg("omega"),
             py::arg("direction"), py::arg("polarization"), py::arg("medium"))
        .def_property_readonly("wavenumber", &PlaneWave::wavenumber)
        .def("fields_at", &PlaneWave::fields_at, py::arg("r"), py::arg("t"))
        .def("poynting_rate", &PlaneWave::poynting_rate, py::arg("r"), py::arg("t"));

    m.def("poynting", &poynting, py::arg("fp"));
    m.def("momentum_density", &momentum_density, py::arg("fp"), py::arg("tag"));
    m.def("energy_density", &energy_density, py::arg("fp"));
    m.def("stress_tensor", &stress_tensor, py::arg("fp"));
    m.def("minkowski_force_density", &minkowski_force_density, py::arg("src"), py::arg("fp"),
          py::arg("grad_eps"), py::arg("grad_mu"));
    m.def("abraham_term", &abraham_term, py::arg("medium"), py::arg("dS_dt"));
    m.def("abraham_force_density", &abraham_force_density, py::arg("medium"), py::arg("fp"), py::arg("grad_n2"),
          py::arg("dS_dt"));
    m.def("mechanical_momentum_density", &mechanical_momentum_density, py::arg("medium"), py::arg("fp"));
    m.def("interface_pressure", &interface_pressure, py::arg("E_t"), py::arg("n_from"), py::arg("n_to"));
    m.def(
        "time_average",
        [](const std::vector<std::pair<double, double>>& samples, double period) {
            return time_average(samples, period);
        },
        py::arg("samples"), py::arg("period"));

    // covariant
    auto cov = m.def_submodule("covariant", "Four-tensor formalism");
    py::enum_<covariant::Causality>(cov, "Causality")
        .value("timelike", covariant::Causality::timelike)
        .value("spacelike", covariant::Causality::spacelike)
        .value("null", covariant::Causality::null);
    py::class_<covariant::FourVelocity>(cov, "FourVelocity")
        .def_static("from_velocity", &covariant::FourVelocity::from_velocity, py::arg("v"))
        .def_static("rest", &covariant::FourVelocity::rest)
        .def_property_readonly("storage", &covariant::FourVelocity::storage);
    py::class_<covariant::FieldTensor4>(cov, "FieldTensor4")
        .def_static("from_EB", &covariant::FieldTensor4::from_EB, py::arg("E"), py::arg("B"))
        .def_property_readonly("E", &covariant::FieldTensor4::E)
        .def_property_readonly("B", &covariant::FieldTensor4::B)
        .def_property_readonly("storage", &covariant::FieldTensor4::storage);
    py::class_<covariant::ExcitationTensor4>(cov, "ExcitationTensor4")
        .def_static("from_DH", &covariant::ExcitationTensor4::from_DH, py::arg("D"), py::arg("H"))
        .def_property_readonly("D", &covariant::ExcitationTensor4::D)
        .def_property_readonly("H", &covariant::ExcitationTensor4::H)
        .def_property_readonly("D_normalized", &covariant::ExcitationTensor4::D_normalized)
        .def_property_readonly("H_normalized", &covariant::ExcitationTensor4::H_normalized);
    py::class_<covariant::EMTensor4>(cov, "EMTensor4")
        .def_property_readonly("stress", &covariant::EMTensor4::stress)
        .def_property_readonly("poynting", &covariant::EMTensor4::poynting)
        .def_property_readonly("momentum", &covariant::EMTensor4::momentum)
        .def_property_readonly("energy", &covariant::EMTensor4::energy);
    py::class_<covariant::FourMomentum>(cov, "FourMomentum")
        .def(py::init<Vec3, double>(), py::arg("G"), py::arg("W"))
        .def_readwrite("G", &covariant::FourMomentum::G)
        .def_readwrite("W", &covariant::FourMomentum::W);
    cov.def("excitation_from_constitutive", &covariant::excitation_from_constitutive, py::arg("F"), py::arg("V"),
            py::arg("n"), py::arg("mu_r"));
    cov.def("minkowski_tensor4", &covariant::minkowski_tensor4, py::arg("F"), py::arg("H"));
    cov.def("classify_four_momentum", &covariant::classify_four_momentum, py::arg("p"),
            py::arg("rel_tol") = 1e-12);
    cov.def("pulse_four_momentum", &covariant::pulse_four_momentum, py::arg("wave"), py::arg("tag"));
    cov.def(
        "plane_wave_divergence_residual",
        [](const PlaneWave& wave, const covariant::Vec4& point, double step) {
            return covariant::divergence_residual(covariant::plane_wave_sampler(wave), point, step);
        },
        py::arg("wave"), py::arg("point"), py::arg("grid_step"));

    // scenarios
    namespace sc = scenarios;
    auto scn = m.def_submodule("scenarios", "Radiation-force experiments");
    py::class_<sc::MirrorConfig>(scn, "MirrorConfig")
        .def(py::init([](const Medium& medium, double E0, double omega, double conductivity, double max_ratio) {
                 return sc::MirrorConfig{medium, E0, omega, conductivity, max_ratio};
             }),
             py::arg("medium"), py::arg("E0"), py::arg("omega"), py::arg("conductivity"),
             py::arg("max_k_over_alpha") = 0.2)
        .def_property_readonly("alpha", &sc::MirrorConfig::alpha)
        .def_property_readonly("k", &sc::MirrorConfig::k)
        .def_property_readonly("incident_flux", &sc::MirrorConfig::incident_flux);
    py::class_<sc::MirrorPressure>(scn, "MirrorPressure")
        .def_readonly("pressure", &sc::MirrorPressure::pressure)
        .def_readonly("reflectance", &sc::MirrorPressure::reflectance)
        .def_readonly("phase", &sc::MirrorPressure::phase);
    scn.def("mirror_pressure_flux", &sc::mirror_pressure_flux, py::arg("cfg"));
    scn.def("mirror_pressure_lorentz", &sc::mirror_pressure_lorentz, py::arg("cfg"),
            py::arg("quadrature_tol") = 1e-8);
    scn.def("mirror_pressure_divergence", &sc::mirror_pressure_divergence, py::arg("cfg"));
    scn.def(
        "metal_fields",
        [](const sc::MirrorConfig& cfg, double x) {
            const auto s = sc::metal_fields(cfg, x);
            return py::make_tuple(s.E_y, s.H_z);
        },
        py::arg("cfg"), py::arg("x"));
    scn.def(
        "photon_drag_field",
        [](double I, double sigma_a, double omega, double n, MomentumTag tag) {
            return sc::photon_drag_field(sc::DragConfig{I, sigma_a, omega, n}, tag);
        },
        py::arg("intensity"), py::arg("sigma_a"), py::arg("omega"), py::arg("n"), py::arg("tag"));
    scn.def("bec_recoil", &sc::bec_recoil, py::arg("n"), py::arg("omega"));
    scn.def("fiber_exit_impulse", &sc::fiber_exit_impulse, py::arg("pulse_energy"), py::arg("n"));
    scn.def(
        "wgm_torque",
        [](double n, double a, double P0, double omega0, double t, MomentumTag tag) {
            const auto r = sc::wgm_torque(sc::TorqueConfig{n, a, P0, omega0}, t, tag);
            return py::make_tuple(r.torque, r.amplitude);
        },
        py::arg("n"), py::arg("a"), py::arg("P0"), py::arg("omega0"), py::arg("t") = 0.0,
        py::arg("tag") = MomentumTag::Abraham);

    py::class_<sc::SphereKickConfig>(scn, "SphereKickConfig")
        .def(py::init([](double M, double a, double deltaG, double pulse_energy, const Medium& fluid,
                         const Medium& reference_fluid, double L0) {
                 return sc::SphereKickConfig{M, a, deltaG, pulse_energy, fluid, reference_fluid, L0};
             }),
             py::arg("M"), py::arg("a"), py::arg("deltaG"), py::arg("pulse_energy"), py::arg("fluid"),
             py::arg("reference_fluid"), py::arg("L0"));
    scn.def("sphere_kick_vmax", &sc::sphere_kick_vmax, py::arg("cfg"), py::arg("tag"));
    scn.def(
        "sphere_kick_trajectory",
        [](const sc::SphereKickConfig& cfg, MomentumTag tag, double t) {
            const auto s = sc::sphere_kick_trajectory(cfg, tag, t);
            return py::make_tuple(s.velocity, s.displacement);
        },
        py::arg("cfg"), py::arg("tag"), py::arg("t"));
    scn.def(
        "total_displacement",
        [](const sc::SphereKickConfig& cfg, MomentumTag tag) {
            return sc::SphereKickTrajectory(cfg, tag).total_displacement();
        },
        py::arg("cfg"), py::arg("tag"));
    scn.def("displacement_correction", &sc::displacement_correction, py::arg("cfg"));
    scn.def("displacement_ratio", &sc::displacement_ratio, py::arg("cfg"), py::arg("tag"));

    // cli-io
    m.def("scenario_names", [] {
        std::vector<std::string> names;
        for (auto s : cli::all_scenarios()) names.emplace_back(cli::to_string(s));
        return names;
    });
    py::class_<cli::ScenarioRequest>(m, "ScenarioRequest")
        .def_property_readonly("scenario",
                               [](const cli::ScenarioRequest& r) { return std::string(cli::to_string(r.scenario)); })
        .def_readonly("params", &cli::ScenarioRequest::params)
        .def_readonly("tag", &cli::ScenarioRequest::tag)
        .def_property_readonly("point_count", [](const cli::ScenarioRequest& r) { return r.points().size(); });
    m.def("parse_config", [](const std::string& text) { return cli::parse_config(text); }, py::arg("text"));
    m.def(
        "run_config",
        [](const std::string& text, const std::string& format) {
            const auto fmt = cli::parse_format(format);
            if (!fmt) throw py::value_error("format must be table, csv or json");
            return cli::emit(cli::run(cli::parse_config(text)), *fmt);
        },
        py::arg("text"), py::arg("format") = "json");
    m.def("run_checks", [](double tol) {
        py::list out;
        for (const auto& c : cli::run_checks(tol)) {
            out.append(py::dict(py::arg("name") = c.name, py::arg("value") = c.value,
                                py::arg("tolerance") = c.tolerance, py::arg("passed") = c.passed));
        }
        return out;
    }, py::arg("mirror_tol") = 1e-6);
}
