#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "incrprox/bounds.hpp"
#include "incrprox/config.hpp"
#include "incrprox/prox.hpp"
#include "incrprox/sets.hpp"
#include "incrprox/trace_io.hpp"

namespace py = pybind11;
using namespace incrprox;

namespace {

BoundInputs inputs(double alpha, std::size_t m, double c, double dist0 = 0.0,
                   double epsilon = 1.0) {
  BoundInputs b;
  b.alpha = alpha;
  b.m = m;
  b.c = c;
  b.dist0 = dist0;
  b.epsilon = epsilon;
  return b;
}

// pybind11 holders cannot point to const, so sets travel in a handle.
struct SetHandle {
  SetPtr set;
};

// JSON crosses the boundary as text; the Python side decodes it.
py::dict run_text(const std::string &config) {
  const RunSpec spec = parse_config(json::parse(config));
  RunOutcome out;
  {
    py::gil_scoped_release release;
    out = execute(spec);
  }
  py::dict d;
  d["status"] = out.trace.status == RunStatus::Completed ? "completed" : "solver_failure";
  d["message"] = out.trace.message;
  d["csv"] = trace_csv(out.trace);
  d["trace"] = trace_json(out.trace, spec.source).dump();
  d["bounds"] = bounds_json(out).dump();
  d["warnings"] = spec.warnings;
  return d;
}

} // namespace

PYBIND11_MODULE(_incrprox, m) {
  m.doc() = "incremental subgradient-proximal methods";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<EstimationError>(m, "EstimationError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const json::exception &e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("run_text", &run_text, py::arg("config"));

  m.def(
      "cyclic_error_bound",
      [](double alpha, std::size_t m, double c) { return cyclic_error_bound(inputs(alpha, m, c)); },
      py::arg("alpha"), py::arg("m"), py::arg("c"));
  m.def(
      "randomized_error_bound",
      [](double alpha, std::size_t m, double c) {
        return randomized_error_bound(inputs(alpha, m, c));
      },
      py::arg("alpha"), py::arg("m"), py::arg("c"));
  m.def(
      "cyclic_iteration_estimate",
      [](double alpha, std::size_t m, double c, double dist0, double epsilon) {
        return cyclic_iteration_estimate(inputs(alpha, m, c, dist0, epsilon));
      },
      py::arg("alpha"), py::arg("m"), py::arg("c"), py::arg("dist0"), py::arg("epsilon"));
  m.def(
      "randomized_expected_iterations",
      [](double alpha, std::size_t m, double c, double dist0, double epsilon) {
        return randomized_expected_iterations(inputs(alpha, m, c, dist0, epsilon));
      },
      py::arg("alpha"), py::arg("m"), py::arg("c"), py::arg("dist0"), py::arg("epsilon"));

  py::class_<SetHandle>(m, "ConstraintSet")
      .def("project", [](const SetHandle &h, const Vector &x) { return h.set->project(x); },
           py::arg("x"))
      .def("distance", [](const SetHandle &h, const Vector &x) { return h.set->distance(x); },
           py::arg("x"))
      .def(
          "contains",
          [](const SetHandle &h, const Vector &x, double tol) { return h.set->contains(x, tol); },
          py::arg("x"), py::arg("tol") = 0.0)
      .def("__repr__", [](const SetHandle &h) { return h.set->description(); });
  m.def("whole_space", [] { return SetHandle{make_whole_space()}; });
  m.def(
      "box", [](Vector lo, Vector hi) { return SetHandle{make_box(std::move(lo), std::move(hi))}; },
      py::arg("lo"), py::arg("hi"));
  m.def(
      "ball", [](Vector c, double r) { return SetHandle{make_ball(std::move(c), r)}; },
      py::arg("center"), py::arg("radius"));
  m.def(
      "halfspace", [](Vector a, double b) { return SetHandle{make_halfspace(std::move(a), b)}; },
      py::arg("a"), py::arg("b"));
  m.def(
      "hyperplane", [](Vector a, double b) { return SetHandle{make_hyperplane(std::move(a), b)}; },
      py::arg("a"), py::arg("b"));
  m.def(
      "intersection",
      [](const std::vector<SetHandle> &hs) {
        std::vector<SetPtr> sets;
        for (const auto &h : hs)
          sets.push_back(h.set);
        return SetHandle{make_intersection(std::move(sets))};
      },
      py::arg("sets"));

  m.def("shrink", &shrink, py::arg("x"), py::arg("gamma"), py::arg("alpha"));
  m.def(
      "interpolated_projection",
      [](const Vector &x, const SetHandle &h, double gamma, double alpha) {
        return interpolated_projection(x, *h.set, gamma, alpha);
      },
      py::arg("x"), py::arg("set"), py::arg("gamma"), py::arg("alpha"));
}
