#include "gaussbreak/classification.hpp"
#include "gaussbreak/compatibility.hpp"
#include "gaussbreak/distributions.hpp"
#include "gaussbreak/documents.hpp"
#include "gaussbreak/error.hpp"
#include "gaussbreak/witness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace gaussbreak;

namespace {

// Reports cross the boundary as plain dicts.
py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

template <typename T>
py::object report(const T& value) {
  return to_python(to_json(value));
}

std::string repr(const char* name, const nlohmann::json& doc) {
  return std::string("<gaussbreak.") + name + " " + doc.dump() + ">";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian states, channels and observables; incompatibility, entanglement and "
            "steering breaking tests.";
  m.attr("__version__") = "0.1.0";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

  py::class_<GaussianState>(m, "State")
      .def(py::init<RealMatrix, RealVector>(), py::arg("V"), py::arg("r"))
      .def_property_readonly("modes", &GaussianState::modes)
      .def_property_readonly("V", &GaussianState::covariance)
      .def_property_readonly("r", &GaussianState::displacement)
      .def("__repr__", [](const GaussianState& s) { return repr("State", to_document(s)); });

  py::class_<GaussianChannel>(m, "Channel")
      .def(py::init<RealMatrix, RealMatrix, RealVector>(), py::arg("A"), py::arg("B"), py::arg("c"))
      .def(py::init<std::size_t, std::size_t, RealMatrix, RealMatrix, RealVector>(),
           py::arg("in_modes"), py::arg("out_modes"), py::arg("A"), py::arg("B"), py::arg("c"))
      .def_property_readonly("in_modes", &GaussianChannel::in_modes)
      .def_property_readonly("out_modes", &GaussianChannel::out_modes)
      .def_property_readonly("A", &GaussianChannel::a)
      .def_property_readonly("B", &GaussianChannel::b)
      .def_property_readonly("c", &GaussianChannel::c)
      .def("__repr__", [](const GaussianChannel& c) { return repr("Channel", to_document(c)); });

  py::class_<GaussianObservable>(m, "Observable")
      .def(py::init<RealMatrix, RealMatrix, RealVector>(), py::arg("K"), py::arg("L"), py::arg("m"))
      .def_property_readonly("modes", &GaussianObservable::modes)
      .def_property_readonly("outcome_dim", &GaussianObservable::outcome_dim)
      .def_property_readonly("K", &GaussianObservable::k)
      .def_property_readonly("L", &GaussianObservable::l)
      .def_property_readonly("m", &GaussianObservable::m)
      .def("__repr__",
           [](const GaussianObservable& o) { return repr("Observable", to_document(o)); });

  py::class_<GaussianPostprocessing>(m, "Postprocessing")
      .def(py::init<RealMatrix, RealMatrix, RealVector>(), py::arg("A"), py::arg("B"), py::arg("c"))
      .def_property_readonly("source_dim", &GaussianPostprocessing::source_dim)
      .def_property_readonly("target_dim", &GaussianPostprocessing::target_dim)
      .def_property_readonly("A", &GaussianPostprocessing::a)
      .def_property_readonly("B", &GaussianPostprocessing::b)
      .def_property_readonly("c", &GaussianPostprocessing::c);

  m.def("symplectic_form", &symplectic_form, py::arg("modes"));

  m.def("vacuum_state", &vacuum_state, py::arg("modes"));
  m.def("epr_state", &epr_state, py::arg("modes_per_side"), py::arg("r"));
  m.def("quadrature_observable", &quadrature_observable, py::arg("k"));
  m.def("canonical_position", &canonical_position, py::arg("modes"));
  m.def("identity_channel", &identity_channel, py::arg("modes"));
  m.def("attenuator_channel", &attenuator_channel, py::arg("eta"), py::arg("modes") = 1);
  m.def("amplifier_channel", &amplifier_channel, py::arg("gain"), py::arg("modes") = 1);
  m.def("classical_noise_channel", &classical_noise_channel, py::arg("B"));

  m.def("validate", [](const GaussianState& s) { return report(validate(s)); });
  m.def("validate", [](const GaussianChannel& c) { return report(validate(c)); });
  m.def("validate", [](const GaussianObservable& o) { return report(validate(o)); });
  m.def("validate", [](const GaussianPostprocessing& p) { return report(validate(p)); });

  m.def("apply_channel_to_state", &apply_channel_to_state, py::arg("channel"), py::arg("state"));
  m.def("apply_channel_to_observable", &apply_channel_to_observable, py::arg("channel"),
        py::arg("observable"));
  m.def("apply_postprocessing", &apply_postprocessing, py::arg("postprocessing"),
        py::arg("observable"));
  m.def("compose_channels", &compose_channels, py::arg("second"), py::arg("first"));

  m.def("is_gib", [](const GaussianChannel& c) { return report(is_gib(c)); }, py::arg("channel"));
  m.def("is_eb", [](const GaussianChannel& c) { return report(is_eb(c)); }, py::arg("channel"));
  m.def(
      "classify",
      [](const GaussianChannel& c, const std::vector<double>& grid) {
        return report(classify(c, grid));
      },
      py::arg("channel"), py::arg("r_grid") = kDefaultEprGrid);
  m.def(
      "is_steerable",
      [](const GaussianState& s, std::size_t a, std::size_t b) {
        return report(is_steerable(s, ModeSplit{a, b}));
      },
      py::arg("state"), py::arg("a_modes"), py::arg("b_modes"));
  m.def(
      "epr_sweep",
      [](const GaussianChannel& c, const std::vector<double>& grid) {
        return report(is_steerability_breaking(c, grid));
      },
      py::arg("channel"), py::arg("r_grid") = kDefaultEprGrid);

  m.def(
      "build_witness",
      [](const GaussianChannel& c) {
        const IncompatibilityWitness w = build_witness(c);
        py::dict d = report(w);
        d["verified"] = verify_witness(w, c);
        return d;
      },
      py::arg("channel"));
  m.def(
      "verify_witness",
      [](const RealVector& x, const RealVector& y, const GaussianChannel& c) {
        // verify_witness only reads x and y.
        const GaussianObservable ex = quadrature_observable(x), ey = quadrature_observable(y);
        const IncompatibilityWitness w{x, y, ex, ey, ex, ey, 0.0, 0.0};
        return verify_witness(w, c);
      },
      py::arg("x"), py::arg("y"), py::arg("channel"));

  m.def(
      "pair_compatible",
      [](const GaussianObservable& a, const GaussianObservable& b) {
        return report(pair_compatible(a, b));
      },
      py::arg("e1"), py::arg("e2"));
  m.def(
      "quad_pair_compatible",
      [](const RealVector& x, double lx, const RealVector& y, double ly) {
        return report(quad_pair_compatible(x, lx, y, ly));
      },
      py::arg("x"), py::arg("lx"), py::arg("y"), py::arg("ly"));

  m.def(
      "outcome_distribution",
      [](const GaussianState& s, const GaussianObservable& o) {
        const OutcomeGaussian d = outcome_distribution(s, o);
        return py::make_tuple(d.mean, d.covariance);
      },
      py::arg("state"), py::arg("observable"));
  m.def(
      "sample",
      [](const GaussianState& s, const GaussianObservable& o, std::size_t n, std::uint64_t seed) {
        const std::vector<RealVector> rows = sample(outcome_distribution(s, o), n, seed);
        RealMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(o.outcome_dim()));
        for (std::size_t i = 0; i < n; ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i];
        return out;
      },
      py::arg("state"), py::arg("observable"), py::arg("n"), py::arg("seed"));

  m.def(
      "load",
      [](const std::filesystem::path& path) {
        return std::visit([](auto&& o) { return py::cast(std::move(o)); }, load_object(path));
      },
      py::arg("path"));
  m.def("to_document", [](const GaussianState& s) { return to_python(to_document(s)); });
  m.def("to_document", [](const GaussianChannel& c) { return to_python(to_document(c)); });
  m.def("to_document", [](const GaussianObservable& o) { return to_python(to_document(o)); });
  m.def("to_document", [](const GaussianPostprocessing& p) { return to_python(to_document(p)); });
}
