#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "axivort/biot_savart.hpp"
#include "axivort/diagnostics.hpp"
#include "axivort/error.hpp"
#include "axivort/initial_data.hpp"
#include "axivort/kernels.hpp"
#include "axivort/mild_solver.hpp"
#include "axivort/parallel.hpp"
#include "axivort/semigroup.hpp"

namespace py = pybind11;
using namespace axivort;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Fields cross the boundary as (n_r, n_z) arrays on a given grid.
ScalarField to_field(const HalfPlaneGrid& g, const Array& a, Quantity tag = Quantity::omega_theta) {
  if (a.ndim() != 2 || a.shape(0) != g.n_r() || a.shape(1) != g.n_z()) {
    throw UsageError("array shape must be (n_r, n_z) = (" + std::to_string(g.n_r()) + ", " +
                     std::to_string(g.n_z()) + ")");
  }
  return ScalarField(g, std::vector<double>(a.data(), a.data() + a.size()), tag);
}

Array to_array(const HalfPlaneGrid& g, const std::vector<double>& v) {
  Array out({g.n_r(), g.n_z()});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Array vectorize(const Array& x, double (*f)(double, const kernels::KernelEvalPolicy&)) {
  Array out(x.request().shape);
  const double* in = x.data();
  double* o = out.mutable_data();
  for (py::ssize_t n = 0; n < x.size(); ++n) o[n] = f(in[n], {});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Axisymmetric Navier-Stokes vorticity: kernels, Biot-Savart, semigroup, mild solver";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_ValueError);
  py::register_exception<StepFailure>(m, "StepFailure", PyExc_RuntimeError);

  m.def("eval_F", [](const Array& s) { return vectorize(s, kernels::eval_F); }, py::arg("s"));
  m.def("eval_F_prime", [](const Array& s) { return vectorize(s, kernels::eval_F_prime); }, py::arg("s"));
  m.def("eval_H", [](const Array& t) { return vectorize(t, kernels::eval_H); }, py::arg("tau"));
  m.def("eval_H_prime", [](const Array& t) { return vectorize(t, kernels::eval_H_prime); }, py::arg("tau"));
  m.def("set_num_threads", &set_num_threads, py::arg("n"));

  py::class_<HalfPlaneGrid>(m, "Grid")
      .def(py::init<int, int, double, double>(), py::arg("n_r"), py::arg("n_z"), py::arg("r_max"),
           py::arg("z_half"))
      .def_property_readonly("n_r", &HalfPlaneGrid::n_r)
      .def_property_readonly("n_z", &HalfPlaneGrid::n_z)
      .def_property_readonly("h_r", &HalfPlaneGrid::h_r)
      .def_property_readonly("h_z", &HalfPlaneGrid::h_z)
      .def_property_readonly("r", [](const HalfPlaneGrid& g) {
        Array out(g.n_r());
        for (int i = 0; i < g.n_r(); ++i) out.mutable_data()[i] = g.r(i);
        return out;
      })
      .def_property_readonly("z", [](const HalfPlaneGrid& g) {
        Array out(g.n_z());
        for (int k = 0; k < g.n_z(); ++k) out.mutable_data()[k] = g.z(k);
        return out;
      })
      .def("__repr__", [](const HalfPlaneGrid& g) {
        return "Grid(" + std::to_string(g.n_r()) + ", " + std::to_string(g.n_z()) + ", " +
               std::to_string(g.r_max()) + ", " + std::to_string(g.z_half()) + ")";
      });

  m.def(
      "gaussian_ring",
      [](const HalfPlaneGrid& g, double radius, double z0, double width, std::optional<double> l1) {
        GaussianRing ring;
        ring.radius = radius;
        ring.z0 = z0;
        ring.width = width;
        ring.l1_target = l1;
        return to_array(g, gaussian_ring(g, ring).values());
      },
      py::arg("grid"), py::arg("radius") = 3.0, py::arg("z0") = 0.0, py::arg("width") = 1.0,
      py::arg("l1") = py::none());
  m.def(
      "profile", [](double impulse, const HalfPlaneGrid& g) { return to_array(g, profile(impulse, g).values()); },
      py::arg("impulse"), py::arg("grid"));

  m.def(
      "norms",
      [](const HalfPlaneGrid& g, const Array& w) {
        const ScalarField f = to_field(g, w);
        py::dict d;
        d["l1"] = norm_2d(f, 1.0);
        d["l2"] = norm_2d(f, 2.0);
        d["linf"] = norm_2d(f, kInf);
        d["mass"] = mass(f);
        d["impulse"] = impulse(f);
        return d;
      },
      py::arg("grid"), py::arg("omega"));

  m.def(
      "velocity",
      [](const HalfPlaneGrid& g, const Array& w) {
        const VelocityField u = velocity(to_field(g, w));
        return py::make_tuple(to_array(g, u.u_r), to_array(g, u.u_z));
      },
      py::arg("grid"), py::arg("omega"), "Returns (u_r, u_z).");
  m.def(
      "stream_function",
      [](const HalfPlaneGrid& g, const Array& w) { return to_array(g, stream_function(to_field(g, w)).values()); },
      py::arg("grid"), py::arg("omega"));

  m.def(
      "apply_S",
      [](const HalfPlaneGrid& g, double t, const Array& w) { return to_array(g, apply_S(t, to_field(g, w)).values()); },
      py::arg("grid"), py::arg("t"), py::arg("omega"));
  m.def(
      "semigroup_defect",
      [](const HalfPlaneGrid& g, double t1, double t2, const Array& w) {
        return semigroup_defect(t1, t2, to_field(g, w));
      },
      py::arg("grid"), py::arg("t1"), py::arg("t2"), py::arg("omega"));

  m.def(
      "evolve",
      [](const HalfPlaneGrid& g, const Array& w, double t_final, double dt, bool nonlinear) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.nonlinear = nonlinear;
        const ScalarField initial = to_field(g, w);
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = evolve(initial, t_final, cfg);
        }
        std::vector<double> t, l1, imp, usup;
        for (const auto& r : tr.records) {
          t.push_back(r.time);
          l1.push_back(r.l1_2d);
          imp.push_back(r.impulse);
          usup.push_back(r.u_sup);
        }
        py::dict d;
        d["time"] = t;
        d["l1"] = l1;
        d["impulse"] = imp;
        d["u_sup"] = usup;
        d["picard_iterations"] = tr.picard_iterations;
        d["warnings"] = tr.warnings;
        d["omega"] = to_array(g, tr.snapshots.back().second.values());
        return d;
      },
      py::arg("grid"), py::arg("omega"), py::arg("t_final"), py::arg("dt") = 0.05,
      py::arg("nonlinear") = true);
}
