#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpheat/coefficients_laplace.hpp"
#include "cpheat/diffusion_sim.hpp"
#include "cpheat/heat_kernel.hpp"
#include "cpheat/validation.hpp"

namespace py = pybind11;
using namespace cpheat;

namespace {

Truncation pick_truncation(double t, int N, double tol, int n_max, int k) {
  return n_max > 0 ? fixed_truncation(n_max, t, N, k) : auto_truncation(t, N, tol, k);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transition densities of Brownian motion on complex projective space";
  m.attr("__version__") = CPHEAT_VERSION;

  py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);

  py::class_<Truncation>(m, "Truncation")
      .def_readonly("n_max", &Truncation::n_max)
      .def_readonly("tol", &Truncation::tol)
      .def_readonly("achieved_bound", &Truncation::achieved_bound)
      .def("__repr__", [](const Truncation& t) {
        return "Truncation(n_max=" + std::to_string(t.n_max) +
               ", achieved_bound=" + std::to_string(t.achieved_bound) + ")";
      });

  m.def("auto_truncation", &auto_truncation, py::arg("t"), py::arg("N"), py::arg("tol"),
        py::arg("k") = 1);

  m.def(
      "density_1d",
      [](double t, double c, py::array_t<double, py::array::c_style | py::array::forcecast> u,
         int N, double tol, int n_max) {
        const Kernel1D kernel(t, c, N, pick_truncation(t, N, tol, n_max, 1));
        py::array_t<double> out(u.request().shape);
        const double* in = u.data();
        double* dst = out.mutable_data();
        for (py::ssize_t i = 0; i < u.size(); ++i) {
          DensityQuery1{t, c, in[i], N}.validate();
          dst[i] = kernel.density(in[i]);
        }
        return out;
      },
      py::arg("t"), py::arg("c"), py::arg("u"), py::arg("N"), py::arg("tol") = 1e-12,
      py::arg("n_max") = 0, "Density of |U_t^1|^2 at the points u, started from c.");

  m.def(
      "density_2d",
      [](double t, std::pair<double, double> c, std::pair<double, double> u, int N, double tol,
         int n_max) {
        return density_2d({t, {c.first, c.second}, {u.first, u.second}, N},
                          pick_truncation(t, N, tol, n_max, 2));
      },
      py::arg("t"), py::arg("c"), py::arg("u"), py::arg("N"), py::arg("tol") = 1e-12,
      py::arg("n_max") = 0);

  m.def(
      "solve_coefficients",
      [](double c, int N, int n_max) { return solve_coefficients(c, N, n_max).a; },
      py::arg("c"), py::arg("N"), py::arg("n_max"));
  m.def("closed_form_coefficient", &closed_form_coefficient, py::arg("c"), py::arg("N"),
        py::arg("n"));

  m.def(
      "laplace_series",
      [](double c, double lambda, double t, int N, double tol) {
        return laplace_series(c, lambda, t, N, auto_truncation(t, N, tol));
      },
      py::arg("c"), py::arg("lam"), py::arg("t"), py::arg("N"), py::arg("tol") = 1e-12);
  m.def("laplace_by_quadrature", &laplace_by_quadrature, py::arg("c"), py::arg("lam"),
        py::arg("t"), py::arg("N"), py::arg("tol") = 1e-13);

  m.def(
      "simulate",
      [](int N, std::vector<double> start, double t, double dt, long paths, std::uint64_t seed,
         int threads) {
        SdeConfig cfg;
        cfg.N = N;
        cfg.k = static_cast<int>(start.size());
        cfg.t_final = t;
        cfg.dt = dt;
        cfg.paths = paths;
        cfg.seed = seed;
        cfg.threads = threads;
        PathEnsemble ens;
        {
          py::gil_scoped_release release;
          ens = simulate(cfg, start);
        }
        py::array_t<double> out({static_cast<py::ssize_t>(paths), static_cast<py::ssize_t>(cfg.k)});
        std::copy(ens.points.begin(), ens.points.end(), out.mutable_data());
        return out;
      },
      py::arg("N"), py::arg("start"), py::arg("t"), py::arg("dt") = 1e-3, py::arg("paths") = 1000,
      py::arg("seed") = 1, py::arg("threads") = 1,
      "Euler-Maruyama endpoints, shape (paths, k) with k = len(start).");

  m.def(
      "validate",
      [](const std::string& tier, std::uint64_t seed, int threads) {
        const ValidationOptions opts{parse_tier(tier), seed, threads};
        std::vector<CriterionReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_validation(opts);
        }
        return report_to_json(opts, reports).dump();
      },
      py::arg("tier") = "quick", py::arg("seed") = 20240611, py::arg("threads") = 1,
      "Validation report as a JSON string.");
}
