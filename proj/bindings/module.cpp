#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyperq/algebra.hpp"
#include "hyperq/cosmology.hpp"
#include "hyperq/dynamics.hpp"
#include "hyperq/errors.hpp"
#include "hyperq/hyperkahler.hpp"
#include "hyperq/qhilbert.hpp"
#include "hyperq/quaternion.hpp"
#include "hyperq/semantics.hpp"

namespace py = pybind11;
using namespace hyperq;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quaternionic observer formalism: algebras, quaternionic Hilbert spaces, "
            "hyperkahler structures, flows, cosmology, measurement and finite semantics";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  py::class_<Quaternion>(m, "Quaternion")
      .def(py::init<>())
      .def(py::init<double, double, double, double>(), py::arg("w"), py::arg("x"), py::arg("y"),
           py::arg("z"))
      .def_readwrite("w", &Quaternion::w)
      .def_readwrite("x", &Quaternion::x)
      .def_readwrite("y", &Quaternion::y)
      .def_readwrite("z", &Quaternion::z)
      .def_static("unit", &Quaternion::unit, py::arg("beta"))
      .def("conjugate", &Quaternion::conjugate)
      .def("norm", &Quaternion::norm)
      .def("norm2", &Quaternion::norm2)
      .def("inverse", &Quaternion::inverse)
      .def("is_zero", &Quaternion::is_zero)
      .def("__getitem__",
           [](const Quaternion& q, int k) {
             if (k < 0 || k > 3) throw py::index_error();
             return q[k];
           })
      .def(
          "__mul__", [](const Quaternion& a, const Quaternion& b) { return a * b; },
          py::is_operator())
      .def(
          "__add__", [](const Quaternion& a, const Quaternion& b) { return a + b; },
          py::is_operator())
      .def(
          "__sub__", [](const Quaternion& a, const Quaternion& b) { return a - b; },
          py::is_operator())
      .def(
          "__neg__", [](const Quaternion& a) { return -a; }, py::is_operator())
      .def(
          "__eq__", [](const Quaternion& a, const Quaternion& b) { return a == b; },
          py::is_operator())
      .def("__repr__", [](const Quaternion& q) {
        std::ostringstream out;
        out << "Quaternion" << q;
        return out.str();
      });

  // algebra
  py::class_<algebra::StructureTensor>(m, "StructureTensor")
      .def(py::init<int, std::vector<double>>(), py::arg("dim"), py::arg("components"))
      .def_static("quaternion", &algebra::StructureTensor::quaternion)
      .def_property_readonly("dim", &algebra::StructureTensor::dim)
      .def("at", &algebra::StructureTensor::at, py::arg("gamma"), py::arg("alpha"),
           py::arg("beta"))
      .def_property_readonly("components", &algebra::StructureTensor::components);

  py::class_<algebra::CanonicalFrame>(m, "CanonicalFrame")
      .def(py::init<>())
      .def(py::init([](const std::array<std::array<double, 3>, 3>& rotation) {
             algebra::CanonicalFrame f{rotation};
             if (!f.is_valid()) {
               throw ValidationError("frame rotation must be orthogonal with determinant +1");
             }
             return f;
           }),
           py::arg("rotation"))
      .def_readwrite("rotation", &algebra::CanonicalFrame::rotation)
      .def("is_valid", &algebra::CanonicalFrame::is_valid, py::arg("tol") = 1e-12);

  py::class_<algebra::ConjugateNormInverse>(m, "ConjugateNormInverse")
      .def_readonly("conjugate", &algebra::ConjugateNormInverse::conjugate)
      .def_readonly("norm", &algebra::ConjugateNormInverse::norm)
      .def_readonly("inverse", &algebra::ConjugateNormInverse::inverse);

  py::class_<algebra::ClassificationReport>(m, "ClassificationReport")
      .def_readonly("unital", &algebra::ClassificationReport::unital)
      .def_readonly("identity", &algebra::ClassificationReport::identity)
      .def_readonly("associative", &algebra::ClassificationReport::associative)
      .def_readonly("zero_divisor_witness", &algebra::ClassificationReport::zero_divisor_witness)
      .def_readonly("division_candidate", &algebra::ClassificationReport::division_candidate)
      .def_readonly("trials", &algebra::ClassificationReport::trials)
      .def_readonly("seed", &algebra::ClassificationReport::seed);

  m.def("multiply", &algebra::multiply, py::arg("a"), py::arg("b"), py::arg("tensor"));
  m.def("conjugate_norm_inverse", &algebra::conjugate_norm_inverse, py::arg("a"));
  m.def("frame_basis", &algebra::frame_basis, py::arg("frame"));
  m.def("is_canonical", &algebra::is_canonical, py::arg("basis"), py::arg("tensor"),
        py::arg("tol") = 1e-12);
  m.def("classify", &algebra::classify, py::arg("tensor"), py::arg("trials") = 1000,
        py::arg("seed") = 0);

  // qhilbert
  m.def("inner", &hilbert::inner, py::arg("phi"), py::arg("psi"));
  m.def("apply", &hilbert::apply, py::arg("operator"), py::arg("phi"));
  m.def("adjoint", &hilbert::adjoint, py::arg("operator"));
  m.def("expectation", &hilbert::expectation, py::arg("operator"), py::arg("phi"));
  m.def("is_antihermitian", &hilbert::is_antihermitian, py::arg("operator"),
        py::arg("tol") = 1e-12);

  // hyperkahler
  py::class_<hyperkahler::FieldSample>(m, "FieldSample")
      .def(py::init<>())
      .def(py::init([](hyperkahler::RealPoint point, hyperkahler::RealVector vector) {
             return hyperkahler::FieldSample{std::move(point), std::move(vector)};
           }),
           py::arg("point"), py::arg("vector"))
      .def_readwrite("point", &hyperkahler::FieldSample::point)
      .def_readwrite("vector", &hyperkahler::FieldSample::vector);

  py::class_<hyperkahler::HyperkahlerStructure>(m, "HyperkahlerStructure")
      .def(py::init<int, algebra::CanonicalFrame>(), py::arg("n"),
           py::arg("frame") = algebra::CanonicalFrame{})
      .def_property_readonly("n", &hyperkahler::HyperkahlerStructure::n)
      .def_property_readonly("dim", &hyperkahler::HyperkahlerStructure::dim)
      .def_property_readonly("frame", &hyperkahler::HyperkahlerStructure::frame)
      .def("g", &hyperkahler::HyperkahlerStructure::g, py::return_value_policy::copy)
      .def("omega", &hyperkahler::HyperkahlerStructure::omega, py::arg("p"),
           py::return_value_policy::copy)
      .def("cplx", &hyperkahler::HyperkahlerStructure::cplx, py::arg("p"),
           py::return_value_policy::copy)
      .def("metric_sharp", &hyperkahler::HyperkahlerStructure::metric_sharp, py::arg("covector"))
      .def("symplectic_sharp", &hyperkahler::HyperkahlerStructure::symplectic_sharp, py::arg("p"),
           py::arg("covector"));

  m.def("realify", &hyperkahler::realify, py::arg("phi"),
        py::arg("frame") = algebra::CanonicalFrame{});
  m.def("derealify", &hyperkahler::derealify, py::arg("point"),
        py::arg("frame") = algebra::CanonicalFrame{});
  m.def("build_structure", &hyperkahler::build_structure, py::arg("n"),
        py::arg("frame") = algebra::CanonicalFrame{});
  m.def("regularity_residual", &hyperkahler::regularity_residual, py::arg("df"), py::arg("b"),
        py::arg("src"), py::arg("dst"));
  m.def("fd_gradient", &hyperkahler::fd_gradient, py::arg("f"), py::arg("point"),
        py::arg("step") = 1e-5);
  m.def("hyperhamiltonian_field", &hyperkahler::hyperhamiltonian_field, py::arg("f0_grad"),
        py::arg("structure"), py::arg("point"));
  m.def("decompose_field", &hyperkahler::decompose_field, py::arg("f_constituents"),
        py::arg("structure"), py::arg("point"), py::arg("fd_step") = 1e-5);
  m.def("decompose_field_gradients", &hyperkahler::decompose_field_gradients, py::arg("grads"),
        py::arg("structure"), py::arg("point"));
  m.def("hyperfield", &hyperkahler::hyperfield, py::arg("operator"), py::arg("point"),
        py::arg("frame") = algebra::CanonicalFrame{});
  m.def("generating_triple", &hyperkahler::generating_triple, py::arg("operator"),
        py::arg("structure"));

  // dynamics
  py::class_<dynamics::SystemConfig>(m, "SystemConfig")
      .def(py::init([](int n, hyperkahler::HyperkahlerStructure structure,
                       hyperkahler::ScalarMap ambient_time,
                       std::optional<hyperkahler::GradientMap> grad) {
             return dynamics::SystemConfig{n, std::move(structure), std::move(ambient_time),
                                           std::move(grad)};
           }),
           py::arg("n"), py::arg("structure"), py::arg("ambient_time"),
           py::arg("ambient_time_grad") = std::nullopt)
      .def_readwrite("n", &dynamics::SystemConfig::n)
      .def_readwrite("structure", &dynamics::SystemConfig::structure)
      .def_readwrite("ambient_time", &dynamics::SystemConfig::ambient_time)
      .def_readwrite("ambient_time_grad", &dynamics::SystemConfig::ambient_time_grad);

  py::class_<dynamics::Observable>(m, "Observable")
      .def(py::init([](std::function<Quaternion(const dynamics::RealPoint&)> value,
                       std::optional<hilbert::QuaternionMatrix> generator) {
             return dynamics::Observable{std::move(value), std::move(generator)};
           }),
           py::arg("value"), py::arg("generator") = std::nullopt)
      .def_readwrite("value", &dynamics::Observable::value)
      .def_readwrite("generator", &dynamics::Observable::generator);

  py::class_<dynamics::Observation>(m, "Observation")
      .def(py::init([](dynamics::Observable obs, dynamics::RealPoint initial,
                       dynamics::RealPoint final) {
             return dynamics::Observation{std::move(obs), std::move(initial), std::move(final)};
           }),
           py::arg("observable"), py::arg("initial"), py::arg("final"))
      .def_readwrite("observable", &dynamics::Observation::observable)
      .def_readwrite("initial", &dynamics::Observation::initial)
      .def_readwrite("final", &dynamics::Observation::final);

  py::class_<dynamics::MeasurementOutcome>(m, "MeasurementOutcome")
      .def_readonly("success", &dynamics::MeasurementOutcome::success)
      .def_readonly("world_witness", &dynamics::MeasurementOutcome::world_witness)
      .def_readonly("present_time", &dynamics::MeasurementOutcome::present_time)
      .def_readonly("property", &dynamics::MeasurementOutcome::property)
      .def_readonly("propensity", &dynamics::MeasurementOutcome::propensity);

  py::class_<dynamics::TrajectorySample>(m, "TrajectorySample")
      .def_readonly("t", &dynamics::TrajectorySample::t)
      .def_readonly("state", &dynamics::TrajectorySample::state);

  m.def("make_operator_observable", &dynamics::make_operator_observable, py::arg("operator"),
        py::arg("frame") = algebra::CanonicalFrame{});
  m.def("evolution_field", &dynamics::evolution_field, py::arg("config"), py::arg("point"));
  m.def("integrate", &dynamics::integrate, py::arg("field"), py::arg("start"), py::arg("t_end"),
        py::arg("dt"));
  m.def("same_world", &dynamics::same_world, py::arg("phi"), py::arg("psi"),
        py::arg("tol") = 1e-12);
  m.def("is_proper_state", &dynamics::is_proper_state, py::arg("config"), py::arg("field_value"));
  m.def("propensity", &dynamics::propensity, py::arg("config"), py::arg("phi"), py::arg("psi"));
  m.def("measure", &dynamics::measure, py::arg("config"), py::arg("observation"), py::arg("b"));
  m.def("matches_evolution_field", &dynamics::matches_evolution_field, py::arg("config"),
        py::arg("observable"), py::arg("points"), py::arg("tol") = 1e-8);

  // cosmology
  py::class_<cosmology::TimeProfile>(m, "TimeProfile")
      .def(py::init([](std::function<double(double)> t, std::function<double(double)> dt) {
             return cosmology::TimeProfile{std::move(t), std::move(dt)};
           }),
           py::arg("T"), py::arg("dT"))
      .def_readwrite("T", &cosmology::TimeProfile::T)
      .def_readwrite("dT", &cosmology::TimeProfile::dT);

  py::class_<cosmology::CosmologyConfig>(m, "CosmologyConfig")
      .def(py::init([](cosmology::TimeProfile profile, int branch, double eta0, double r0) {
             return cosmology::CosmologyConfig{std::move(profile), branch, eta0, r0};
           }),
           py::arg("profile"), py::arg("branch") = 1, py::arg("eta0") = 0.0, py::arg("R0") = 1.0)
      .def_readwrite("profile", &cosmology::CosmologyConfig::profile)
      .def_readwrite("branch", &cosmology::CosmologyConfig::branch)
      .def_readwrite("eta0", &cosmology::CosmologyConfig::eta0)
      .def_readwrite("R0", &cosmology::CosmologyConfig::R0);

  py::class_<cosmology::FrameComponents>(m, "FrameComponents")
      .def_readonly("metric", &cosmology::FrameComponents::metric)
      .def_readonly("structure", &cosmology::FrameComponents::structure)
      .def_readonly("ether", &cosmology::FrameComponents::ether);

  py::class_<cosmology::SphericalCoords>(m, "SphericalCoords")
      .def(py::init([](double eta, double chi, std::optional<double> theta,
                       std::optional<double> phi) {
             cosmology::SphericalCoords s;
             s.eta = eta;
             s.chi = chi;
             s.theta = theta;
             s.phi = phi;
             return s;
           }),
           py::arg("eta"), py::arg("chi"), py::arg("theta") = std::nullopt,
           py::arg("phi") = std::nullopt)
      .def_readwrite("eta", &cosmology::SphericalCoords::eta)
      .def_readwrite("chi", &cosmology::SphericalCoords::chi)
      .def_readwrite("theta", &cosmology::SphericalCoords::theta)
      .def_readwrite("phi", &cosmology::SphericalCoords::phi)
      .def_readonly("degenerate", &cosmology::SphericalCoords::degenerate);

  py::enum_<cosmology::Chirality>(m, "Chirality")
      .value("left", cosmology::Chirality::left)
      .value("right", cosmology::Chirality::right);

  py::class_<cosmology::VistaSpec>(m, "VistaSpec")
      .def(py::init([](Quaternion u, Quaternion a, cosmology::Chirality chirality) {
             return cosmology::VistaSpec{u, a, chirality};
           }),
           py::arg("u"), py::arg("a"), py::arg("chirality") = cosmology::Chirality::left)
      .def_readwrite("u", &cosmology::VistaSpec::u)
      .def_readwrite("a", &cosmology::VistaSpec::a)
      .def_readwrite("chirality", &cosmology::VistaSpec::chirality);

  m.def("linear_profile", &cosmology::linear_profile);
  m.def("table_profile", &cosmology::table_profile, py::arg("etas"), py::arg("values"));
  m.def("validate_time_profile", &cosmology::validate_time_profile, py::arg("profile"),
        py::arg("lo"), py::arg("hi"), py::arg("samples") = 129);
  m.def("scale_factor", &cosmology::scale_factor, py::arg("config"), py::arg("eta"));
  m.def("canonical_from_spherical", &cosmology::canonical_from_spherical, py::arg("config"),
        py::arg("spherical"));
  m.def("spherical_from_canonical", &cosmology::spherical_from_canonical, py::arg("config"),
        py::arg("point"));
  m.def("frame_components", &cosmology::frame_components, py::arg("config"), py::arg("eta"),
        py::arg("chi"), py::arg("theta"));
  m.def("left_invariant_field", &cosmology::left_invariant_field, py::arg("u"), py::arg("a"));
  m.def("vista", &cosmology::vista, py::arg("spec"), py::arg("t"));

  // semantics
  py::class_<semantics::FiniteMonoid>(m, "FiniteMonoid")
      .def(py::init([](int size, std::vector<std::vector<int>> table, int identity) {
             return semantics::FiniteMonoid{size, std::move(table), identity};
           }),
           py::arg("size"), py::arg("table"), py::arg("identity"))
      .def_readwrite("size", &semantics::FiniteMonoid::size)
      .def_readwrite("table", &semantics::FiniteMonoid::table)
      .def_readwrite("identity", &semantics::FiniteMonoid::identity);

  py::class_<semantics::FiniteAction>(m, "FiniteAction")
      .def(py::init([](semantics::FiniteMonoid monoid, int carrier_size,
                       std::vector<std::vector<int>> action) {
             return semantics::FiniteAction{std::move(monoid), carrier_size, std::move(action)};
           }),
           py::arg("monoid"), py::arg("carrier_size"), py::arg("action"))
      .def_readwrite("monoid", &semantics::FiniteAction::monoid)
      .def_readwrite("carrier_size", &semantics::FiniteAction::carrier_size)
      .def_readwrite("action", &semantics::FiniteAction::action);

  py::class_<semantics::ValidationReport>(m, "ValidationReport")
      .def_readonly("valid", &semantics::ValidationReport::valid)
      .def_readonly("violations", &semantics::ValidationReport::violations);

  py::class_<semantics::ModeReport>(m, "ModeReport")
      .def_readonly("existence_mode", &semantics::ModeReport::existence_mode)
      .def_readonly("presence_mode", &semantics::ModeReport::presence_mode)
      .def_readonly("imperceptible", &semantics::ModeReport::imperceptible)
      .def_readonly("existence_families", &semantics::ModeReport::existence_families)
      .def_readonly("presence_families", &semantics::ModeReport::presence_families)
      .def_readonly("units", &semantics::ModeReport::units)
      .def_readonly("boolean_proxy", &semantics::ModeReport::boolean_proxy);

  m.def("validate_model", &semantics::validate_model, py::arg("monoid"), py::arg("action"));
  m.def("unit_group", &semantics::unit_group, py::arg("monoid"));
  m.def("orbits", &semantics::orbits, py::arg("action"));
  m.def("is_equivariant", &semantics::is_equivariant, py::arg("f"), py::arg("a"), py::arg("a2"));
  m.def("stability_report", &semantics::stability_report, py::arg("action"), py::arg("views"));
}
