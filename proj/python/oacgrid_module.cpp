#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oacgrid/analytic_mse.hpp"
#include "oacgrid/channel.hpp"
#include "oacgrid/experiments.hpp"
#include "oacgrid/optimizer.hpp"

namespace py = pybind11;
using namespace oac;

namespace {

SystemConfig make_config(int q, int n, int K, double snr_db, double power, const std::string& noise,
                         double gamma) {
  if (noise == "cauchy") {
    const double g = gamma > 0 ? gamma : std::sqrt(power / snr_from_db(snr_db));
    return SystemConfig::from_noise(q, n, K, power, NoiseModel::cauchy(g));
  }
  return SystemConfig::from_snr(q, n, K, snr_from_db(snr_db), power);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "constellation design toolkit for digital over-the-air computation";

  py::register_exception<InvalidConfig>(m, "InvalidConfigError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init(&make_config), py::arg("q"), py::arg("n"), py::arg("K"), py::arg("snr_db"),
           py::arg("power") = 1.0, py::arg("noise") = "gaussian", py::arg("gamma") = 0.0)
      .def_readonly("q", &SystemConfig::q)
      .def_readonly("n", &SystemConfig::n)
      .def_readonly("K", &SystemConfig::K)
      .def_readonly("power", &SystemConfig::power)
      .def_property_readonly("snr", &SystemConfig::snr)
      .def("__repr__", [](const SystemConfig& c) {
        return "SystemConfig(q=" + std::to_string(c.q) + ", n=" + std::to_string(c.n) +
               ", K=" + std::to_string(c.K) + ")";
      });

  py::class_<DerivedGrid>(m, "DerivedGrid")
      .def_readonly("n1k", &DerivedGrid::n1k)
      .def_readonly("n2k", &DerivedGrid::n2k)
      .def_readonly("bar_n1", &DerivedGrid::bar_n1)
      .def_readonly("bar_n2", &DerivedGrid::bar_n2)
      .def_readonly("upsilon1", &DerivedGrid::upsilon1)
      .def_readonly("upsilon2", &DerivedGrid::upsilon2)
      .def_readonly("kappa", &DerivedGrid::kappa)
      .def_readonly("snr", &DerivedGrid::snr);
  m.def("derive_grid", &derive_grid);

  py::class_<GridSpacing>(m, "GridSpacing")
      .def_readonly("d1", &GridSpacing::d1)
      .def_readonly("d2", &GridSpacing::d2)
      .def_readonly("chi", &GridSpacing::chi);
  m.def("centered_spacing", &GridSpacing::centered, py::arg("d1"), py::arg("d2"), py::arg("cfg"));
  m.def("equal_distance_spacing", &equal_distance_spacing);

  m.def("snr_from_db", &snr_from_db);
  m.def("snr_to_db", &snr_to_db);
  m.def("qfunc", &qfunc);

  m.def("encode", &encode, py::arg("s"), py::arg("sp"), py::arg("cfg"));
  m.def("avg_power", &avg_power);
  m.def(
      "decode_ml", [](std::complex<double> r, const GridSpacing& sp,
                      const SystemConfig& cfg) { return decode_ml(r, sp, cfg); },
      py::arg("r"), py::arg("sp"), py::arg("cfg"));
  m.def(
      "decode_map", [](std::complex<double> r, const GridSpacing& sp,
                       const SystemConfig& cfg) { return decode_map(r, sp, cfg); },
      py::arg("r"), py::arg("sp"), py::arg("cfg"));

  py::class_<MseBreakdown>(m, "MseBreakdown")
      .def_readonly("real_term", &MseBreakdown::real_term)
      .def_readonly("imag_term", &MseBreakdown::imag_term)
      .def_readonly("total", &MseBreakdown::total)
      .def_readonly("error_bound", &MseBreakdown::error_bound);
  m.def("mse_ml", &mse_ml);
  m.def("mse_map", &mse_map);

  py::class_<OptimizerSolution>(m, "OptimizerSolution")
      .def_readonly("d1", &OptimizerSolution::d1)
      .def_readonly("d2", &OptimizerSolution::d2)
      .def_readonly("t_star", &OptimizerSolution::t_star)
      .def_readonly("kkt_residual", &OptimizerSolution::kkt_residual)
      .def_readonly("power_residual", &OptimizerSolution::power_residual)
      .def_readonly("validity_ok", &OptimizerSolution::validity_ok)
      .def_property_readonly("region",
                             [](const OptimizerSolution& s) { return to_string(s.region); })
      .def("__repr__", [](const OptimizerSolution& s) {
        return "OptimizerSolution(d1=" + std::to_string(s.d1) + ", d2=" + std::to_string(s.d2) +
               ", region=" + to_string(s.region) + ")";
      });
  m.def("solve_ml", &solve_ml);
  m.def("solve_map", &solve_map);
  m.def("solve_lambert", &solve_lambert);
  m.def("solve_cauchy", &solve_cauchy);
  m.def("threshold_xi1", [](const SystemConfig& cfg) { return threshold_xi1(derive_grid(cfg)); });

  py::class_<NDimSpacing>(m, "NDimSpacing")
      .def_readonly("d", &NDimSpacing::d)
      .def_readonly("q", &NDimSpacing::q);
  m.def(
      "solve_ndim",
      [](int N, int q, int K, double power, const std::vector<double>& sigmas) {
        return solve_ndim(N, q, K, power, sigmas);
      },
      py::arg("N"), py::arg("q"), py::arg("K"), py::arg("power"), py::arg("sigmas"));
  m.def(
      "mse_ndim",
      [](const NDimSpacing& sp, const std::vector<double>& sigmas, const SystemConfig& cfg) {
        return mse_ndim(sp, sigmas, cfg);
      },
      py::arg("sp"), py::arg("sigmas"), py::arg("cfg"));

  m.def("p1_roots", [](int N) { return p1_roots(N).roots; });
  m.def("poly_p1", &poly_p1);
  m.def("poly_p2", &poly_p2);

  py::class_<MseEstimate>(m, "MseEstimate")
      .def_readonly("mean", &MseEstimate::mean)
      .def_readonly("stderr", &MseEstimate::stderr_)
      .def_readonly("trials", &MseEstimate::trials)
      .def_readonly("seed", &MseEstimate::seed);
  m.def(
      "estimate_mse",
      [](const SystemConfig& cfg, const GridSpacing& sp, const std::string& decoder,
         std::uint64_t trials, std::uint64_t seed) {
        return estimate_mse(cfg, sp, decoder == "map" ? DecoderKind::MAP : DecoderKind::ML, trials,
                            seed);
      },
      py::arg("cfg"), py::arg("sp"), py::arg("decoder"), py::arg("trials"), py::arg("seed"));
}
