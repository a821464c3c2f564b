#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "cli.hpp"
#include "wedge/errors.hpp"
#include "wedge/ideal_edge_source.hpp"
#include "wedge/impedance.hpp"
#include "wedge/impedance_edge.hpp"
#include "wedge/sommerfeld.hpp"

namespace py = pybind11;
using namespace wedge;

namespace {

BoundaryKind kind_of(const std::string& name) {
  if (name == "dirichlet") return BoundaryKind::Dirichlet;
  if (name == "neumann") return BoundaryKind::Neumann;
  if (name == "dirichlet-neumann") return BoundaryKind::DirichletNeumann;
  if (name == "neumann-dirichlet") return BoundaryKind::NeumannDirichlet;
  throw py::value_error("boundary must be dirichlet, neumann, dirichlet-neumann or neumann-dirichlet");
}

ComplexAngle angle(Complex z) { return ComplexAngle(z); }

FieldDecomposition ideal_field(const std::string& bc, Complex theta0, double k, double r, double theta,
                               const std::string& representation, const QuadratureConfig& q) {
  const IncidentPlaneWave inc(angle(theta0), k);
  const FieldPoint p{r, theta, 0.0};
  const BoundaryKind kind = kind_of(bc);
  if (representation == "edge") return ideal_total_field(inc, p, {kind, {}}, q);
  if (representation != "contour") throw py::value_error("representation must be edge or contour");
  if (kind == BoundaryKind::Dirichlet) return dirichlet_total_contour(inc, p, q);
  if (kind == BoundaryKind::Neumann) return impedance_total_contour(inc, p, ImpedanceFaces::from_admittance(0.0, 0.0), q);
  throw py::value_error("mixed wedges have no contour form");
}

FieldDecomposition impedance_field(Complex mu1, Complex mu2, double theta0, double k, double r, double theta,
                                   const std::string& representation, const QuadratureConfig& q) {
  const IncidentPlaneWave inc(theta0, k);
  const FieldPoint p{r, theta, 0.0};
  const auto faces = ImpedanceFaces::from_admittance(mu1, mu2);
  if (representation == "edge") return impedance_total_edge_source(inc, p, faces, q);
  if (representation == "contour") return impedance_total_contour(inc, p, faces, q);
  throw py::value_error("representation must be edge or contour");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Plane-wave diffraction by a right-angled wedge with ideal or impedance faces";
  m.attr("__version__") = std::string(cli::version());

  static py::exception<QuadratureFailure> quad_exc(m, "QuadratureFailure", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const QuadratureFailure& e) {
      quad_exc(e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const cli::ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
      .def_readwrite("max_nodes", &QuadratureConfig::max_nodes)
      .def_readwrite("principal_value", &QuadratureConfig::principal_value)
      .def("tightened", &QuadratureConfig::tightened);

  py::class_<QuadratureReport>(m, "QuadratureReport")
      .def_readonly("value", &QuadratureReport::value)
      .def_readonly("error_estimate", &QuadratureReport::error_estimate)
      .def_readonly("nodes_used", &QuadratureReport::nodes_used)
      .def_readonly("truncation_point", &QuadratureReport::truncation_point)
      .def_readonly("pv_applied", &QuadratureReport::pv_applied)
      .def_readonly("converged", &QuadratureReport::converged)
      .def("__repr__", &QuadratureReport::describe);

  py::class_<FieldDecomposition>(m, "FieldDecomposition")
      .def_property_readonly("total", &FieldDecomposition::total)
      .def_property_readonly("geometrical", &FieldDecomposition::geometrical_total)
      .def_readonly("diffracted", &FieldDecomposition::diffracted)
      .def_readonly("report", &FieldDecomposition::diffracted_report)
      .def_property_readonly("terms", [](const FieldDecomposition& d) {
        py::dict out;
        for (const auto& t : d.geometrical) out[py::str(std::string(to_string(t.kind)))] = t.value();
        return out;
      })
      .def_property_readonly("gates", [](const FieldDecomposition& d) {
        py::dict out;
        for (const auto& t : d.geometrical) out[py::str(std::string(to_string(t.kind)))] = t.heaviside_arg;
        return out;
      });

  m.def("ideal_field", &ideal_field, py::arg("bc"), py::arg("theta0"), py::arg("k"), py::arg("r"),
        py::arg("theta"), py::arg("representation") = "edge", py::arg("quadrature") = QuadratureConfig{},
        "Total field of a right-angled wedge with ideal faces.");
  m.def("impedance_field", &impedance_field, py::arg("mu1"), py::arg("mu2"), py::arg("theta0"), py::arg("k"),
        py::arg("r"), py::arg("theta"), py::arg("representation") = "contour",
        py::arg("quadrature") = QuadratureConfig{}, "Total field of a right-angled impedance wedge.");

  m.def(
      "ideal_diffraction_coefficient",
      [](const std::string& bc, double theta, Complex theta0) {
        return ideal_diffraction_coefficient(kind_of(bc), theta, angle(theta0));
      },
      py::arg("bc"), py::arg("theta"), py::arg("theta0"));
  m.def(
      "diffraction_coefficient",
      [](Complex mu1, Complex mu2, double theta, double theta0) {
        const auto f = far_field_coefficient(theta, theta0, ImpedanceFaces::from_admittance(mu1, mu2));
        return py::make_tuple(f.value, f.near_zone_boundary);
      },
      py::arg("mu1"), py::arg("mu2"), py::arg("theta"), py::arg("theta0"),
      "Far-field coefficient of the impedance wedge and its near-boundary flag.");

  m.def(
      "ideal_kernel",
      [](const std::string& bc, double wedge_angle, double theta, Complex theta0, const std::vector<double>& eta) {
        const DirectivityKernel kernel(kind_of(bc), WedgeGeometry(wedge_angle), theta, angle(theta0));
        std::vector<Complex> out;
        for (const double e : eta) out.push_back(kernel(e));
        return out;
      },
      py::arg("bc"), py::arg("wedge_angle"), py::arg("theta"), py::arg("theta0"), py::arg("eta"));
  m.def(
      "impedance_kernel",
      [](Complex mu1, Complex mu2, double theta, double theta0, const std::vector<double>& eta) {
        const ImpedanceKernel kernel(theta, theta0, ImpedanceFaces::from_admittance(mu1, mu2));
        std::vector<Complex> out;
        for (const double e : eta) out.push_back(kernel(e));
        return out;
      },
      py::arg("mu1"), py::arg("mu2"), py::arg("theta"), py::arg("theta0"), py::arg("eta"));

  m.def(
      "surface_waves",
      [](Complex mu1, Complex mu2) {
        const auto faces = ImpedanceFaces::from_admittance(mu1, mu2);
        const auto s = surface_wave_status(faces.theta1, faces.theta2);
        py::dict out;
        out["face1"] = s.face1_excited;
        out["face2"] = s.face2_excited;
        out["region1"] = py::make_tuple(s.region1.lo, s.region1.hi);
        out["region2"] = py::make_tuple(s.region2.lo, s.region2.hi);
        return out;
      },
      py::arg("mu1"), py::arg("mu2"), "Which faces carry a surface wave, and the angular regions.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> owned{"wedgediff"};
        owned.insert(owned.end(), args.begin(), args.end());
        std::vector<char*> argv;
        for (auto& s : owned) argv.push_back(s.data());
        py::gil_scoped_release release;
        return cli::run(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"), "Run the command-line tool in-process; returns its exit status.");
}
