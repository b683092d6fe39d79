#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdnls/criterion.hpp"
#include "gdnls/evolve.hpp"
#include "gdnls/functionals.hpp"
#include "gdnls/variational.hpp"
#include "gdnls/waves.hpp"

namespace py = pybind11;
using namespace gdnls;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Field to_field(const ComplexArray& values, double length) {
  if (values.ndim() != 1) throw InvalidArgument("expected a one-dimensional array");
  const auto n = static_cast<std::size_t>(values.shape(0));
  std::vector<cplx> v(values.data(), values.data() + n);
  return Field(Grid(length, n), std::move(v));
}

ComplexArray to_array(const Field& f) {
  ComplexArray out(static_cast<py::ssize_t>(f.size()));
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

py::dict certificate_dict(const Certificate& c) {
  py::dict d;
  d["params"] = c.params;
  d["action"] = c.action;
  d["level"] = c.level;
  d["virial"] = c.virial;
  d["strategy"] = to_string(c.strategy);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solitary waves, action and virial functionals, variational levels, "
            "global-existence certificates and time integration for the generalized DNLS.";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Params>(m, "Params")
      .def(py::init([](double sigma, double omega, double c, double alpha, double beta) {
             return Params{sigma, omega, c, alpha, beta};
           }),
           py::arg("sigma") = 1.0, py::arg("omega") = 1.0, py::arg("c") = 0.0, py::arg("alpha") = 1.0,
           py::arg("beta") = 0.0)
      .def_readwrite("sigma", &Params::sigma)
      .def_readwrite("omega", &Params::omega)
      .def_readwrite("c", &Params::c)
      .def_readwrite("alpha", &Params::alpha)
      .def_readwrite("beta", &Params::beta)
      .def("massless", &Params::massless)
      .def("__repr__", [](const Params& p) {
        return "Params(sigma=" + std::to_string(p.sigma) + ", omega=" + std::to_string(p.omega) +
               ", c=" + std::to_string(p.c) + ", alpha=" + std::to_string(p.alpha) +
               ", beta=" + std::to_string(p.beta) + ")";
      });

  m.def("validate", &validate_params, py::arg("params"));

  m.def(
      "nodes",
      [](double length, std::size_t n) {
        const std::vector<double> x = Grid(length, n).nodes();
        return py::array_t<double>(static_cast<py::ssize_t>(x.size()), x.data());
      },
        py::arg("L"), py::arg("N"));

  m.def(
      "profile",
      [](double sigma, double omega, double c, double length, std::size_t n) {
        return to_array(profile({sigma, omega, c}, Grid(length, n)));
      },
      py::arg("sigma"), py::arg("omega"), py::arg("c"), py::arg("L"), py::arg("N"),
      "Solitary wave sampled on the periodic grid of length L with N nodes.");

  m.def(
      "invariants",
      [](const ComplexArray& u, double length, const Params& p) {
        const FunctionalReport r = evaluate(to_field(u, length), validate_params(p));
        py::dict d;
        d["mass"] = r.mass;
        d["momentum"] = r.momentum;
        d["energy"] = r.energy;
        d["action"] = r.action;
        d["virial"] = r.virial;
        d["reduced_action"] = r.reduced_action;
        d["reduced_virial"] = r.reduced_virial;
        return d;
      },
      py::arg("u"), py::arg("L"), py::arg("params"));

  m.def("reference_level", &reference_level, py::arg("params"));

  m.def(
      "estimate_level",
      [](const Params& p, double length, std::size_t n, double tolerance) {
        MinimizeConfig cfg;
        cfg.grid = Grid(length, n);
        cfg.tolerance = tolerance;
        cfg.require_convergence = false;
        const LevelEstimate est = estimate_level(p, cfg);
        py::dict d;
        d["level"] = est.level;
        d["converged"] = est.converged;
        d["iterations"] = est.iterations;
        d["minimizer"] = to_array(est.minimizer);
        return d;
      },
      py::arg("params"), py::arg("L") = 40.0, py::arg("N") = 256, py::arg("tolerance") = 1e-6);

  m.def(
      "classify",
      [](const ComplexArray& u, double length, const Params& p) {
        const Membership mb = classify(to_field(u, length), p);
        py::dict d;
        d["region"] = to_string(mb.region);
        d["action"] = mb.action;
        d["level"] = mb.level;
        d["virial"] = mb.virial;
        return d;
      },
      py::arg("u"), py::arg("L"), py::arg("params"));

  m.def(
      "certify",
      [](const ComplexArray& u, double length, double sigma, bool grid_search) -> py::object {
        SearchConfig cfg;
        cfg.grid_search = grid_search;
        const CertificationResult r = certify_global(to_field(u, length), sigma, cfg);
        if (!r.certificate) return py::none();
        return certificate_dict(*r.certificate);
      },
      py::arg("u"), py::arg("L"), py::arg("sigma") = 1.0, py::arg("grid_search") = true,
      "Certificate as a dict, or None when the search finds nothing.");

  m.def(
      "simulate",
      [](const ComplexArray& u, double length, double sigma, double dt, double t_final,
         std::size_t sample_every, std::optional<Params> monitored) {
        SchemeConfig cfg;
        cfg.dt = dt;
        cfg.t_final = t_final;
        cfg.sample_every = sample_every;
        cfg.store_fields = false;
        const Trajectory traj = integrate(to_field(u, length), sigma, cfg, monitored);
        py::list records;
        for (const DiagnosticsRecord& r : traj.records) {
          py::dict d;
          d["t"] = r.t;
          d["M"] = r.mass;
          d["E"] = r.energy;
          d["P"] = r.momentum;
          d["H1seminorm"] = r.h1_seminorm;
          d["shiftedH1"] = r.shifted_h1;
          d["K"] = r.virial;
          d["blowup"] = r.blowup;
          records.append(d);
        }
        return py::make_tuple(to_array(traj.final_state), records);
      },
      py::arg("u"), py::arg("L"), py::arg("sigma") = 1.0, py::arg("dt") = 1e-3, py::arg("t_final") = 1.0,
      py::arg("sample_every") = 100, py::arg("monitored") = py::none(),
      "Returns (final field, list of diagnostics dicts).");

  m.def(
      "stability_function", [](double z, double sigma) { return stability_function(z, sigma); },
      py::arg("z"), py::arg("sigma"));
  m.def("stability_root", [](double sigma) { return stability_root(sigma); }, py::arg("sigma"));
}
