#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>

#include "irtr/errors.hpp"
#include "irtr/experiments.hpp"
#include "irtr/measurements.hpp"
#include "irtr/psf.hpp"
#include "irtr/state_model.hpp"
#include "irtr/tradeoff.hpp"

namespace py = pybind11;
using namespace irtr;

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = kSoftwareVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<InfeasibleBudgetError>(m, "InfeasibleBudgetError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<NormalizationError>(m, "NormalizationError", numerical.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical.ptr());
  py::register_exception<DegenerateStateError>(m, "DegenerateStateError", numerical.ptr());
  py::register_exception<CutoffError>(m, "CutoffError", numerical.ptr());
  py::register_exception<DegenerateOutcomeError>(m, "DegenerateOutcomeError", numerical.ptr());
  py::register_exception<BoundViolationError>(m, "BoundViolationError", numerical.ptr());

  py::class_<PointSpreadFunction>(m, "PointSpreadFunction")
      .def_static("gaussian", &PointSpreadFunction::gaussian, py::arg("sigma"))
      .def_static("from_samples", &PointSpreadFunction::from_samples, py::arg("x"), py::arg("amplitude"),
                  py::arg("sigma"))
      .def_static("load", &PointSpreadFunction::load, py::arg("path"), py::arg("sigma"))
      .def_property_readonly("sigma", &PointSpreadFunction::sigma)
      .def("amplitude", &PointSpreadFunction::amplitude)
      .def("derivative", &PointSpreadFunction::derivative)
      .def("scaled", &PointSpreadFunction::scaled);

  py::class_<SourceGeometry>(m, "SourceGeometry")
      .def(py::init<double, double>(), py::arg("centroid"), py::arg("separation"))
      .def_property_readonly("centroid", &SourceGeometry::centroid)
      .def_property_readonly("separation", &SourceGeometry::separation)
      .def_property_readonly("x1", &SourceGeometry::x1)
      .def_property_readonly("x2", &SourceGeometry::x2);

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("truncation_radius", &QuadratureSpec::truncation_radius)
      .def_readwrite("panel_count", &QuadratureSpec::panel_count)
      .def_readwrite("nodes_per_panel", &QuadratureSpec::nodes_per_panel)
      .def_readwrite("abs_tolerance", &QuadratureSpec::abs_tolerance);

  py::class_<OverlapIntegrals>(m, "OverlapIntegrals")
      .def_readonly("kappa", &OverlapIntegrals::kappa)
      .def_readonly("gamma", &OverlapIntegrals::gamma)
      .def_readonly("beta", &OverlapIntegrals::beta)
      .def_readonly("delta", &OverlapIntegrals::delta)
      .def_readonly("one_minus_delta", &OverlapIntegrals::one_minus_delta);

  m.def("overlap_integrals", &overlap_integrals, py::arg("psf"), py::arg("geometry"),
        py::arg("quad") = QuadratureSpec{});
  m.def("gaussian_overlap_integrals", &gaussian_overlap_integrals, py::arg("sigma"), py::arg("separation"));

  py::class_<StateModel4>(m, "StateModel4")
      .def_readonly("rho", &StateModel4::rho)
      .def_readonly("sld_centroid", &StateModel4::sld_centroid)
      .def_readonly("sld_separation", &StateModel4::sld_separation)
      .def_readonly("eta3", &StateModel4::eta3)
      .def_readonly("eta4", &StateModel4::eta4)
      .def("rho_derivative", &StateModel4::rho_derivative);

  py::class_<IncompatibilityCoefficients>(m, "IncompatibilityCoefficients")
      .def_readonly("c_tilde", &IncompatibilityCoefficients::c_tilde)
      .def_readonly("c", &IncompatibilityCoefficients::c)
      .def_readonly("gamma_measure", &IncompatibilityCoefficients::gamma_measure);

  m.def("build_state_model", &build_state_model);
  m.def("qfim", [](const OverlapIntegrals& o) { return qfim(o).matrix; });
  m.def("incompatibility", &incompatibility);
  m.def("gaussian_incompatibility", &gaussian_incompatibility, py::arg("sigma"), py::arg("separation"));
  m.def("commutator_quantity", &commutator_quantity);
  m.def("verify_sld", &verify_sld, py::arg("psf"), py::arg("geometry"), py::arg("quad") = QuadratureSpec{},
        py::arg("h"));

  py::class_<ProbabilityModel>(m, "ProbabilityModel")
      .def_readonly("probabilities", &ProbabilityModel::probabilities)
      .def_readonly("d_centroid", &ProbabilityModel::d_centroid)
      .def_readonly("d_separation", &ProbabilityModel::d_separation)
      .def_readonly("truncated_mass", &ProbabilityModel::truncated_mass)
      .def("total_probability", &ProbabilityModel::total_probability)
      .def("__len__", &ProbabilityModel::size);

  py::class_<RegretReport>(m, "RegretReport")
      .def_readonly("fim", &RegretReport::fim)
      .def_readonly("qfim", &RegretReport::qfim)
      .def_readonly("regret", &RegretReport::regret)
      .def_readonly("delta1", &RegretReport::delta1)
      .def_readonly("delta2", &RegretReport::delta2);

  m.def("direct_imaging_model", &direct_imaging_model, py::arg("psf"), py::arg("geometry"),
        py::arg("quad") = QuadratureSpec{});
  m.def("spade_model", &spade_model, py::arg("sigma"), py::arg("geometry"), py::arg("mode_cutoff") = py::none());
  m.def(
      "haar_random_measurement",
      [](std::uint64_t seed, std::uint64_t index) {
        RngStream rng(seed, index);
        return Matrix4(haar_random_measurement(rng).matrix);
      },
      py::arg("seed"), py::arg("index") = 0);
  m.def(
      "projective_model",
      [](const StateModel4& s, const Matrix4& o) { return projective_model(s, ProjectiveMeasurement4{o}); },
      py::arg("state"), py::arg("measurement"));
  m.def("fim", &fim);
  m.def("regret_report", &regret_report, py::arg("fim"), py::arg("qfim"));

  m.def(
      "irtr_residual", [](double d1, double d2, double c) { return irtr_residual({d1, d2}, c); },
      py::arg("delta1"), py::arg("delta2"), py::arg("c_tilde"));
  m.def(
      "irtr_frontier",
      [](double c, int n) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : irtr_frontier(c, n)) out.emplace_back(p.delta1, p.delta2);
        return out;
      },
      py::arg("c_tilde"), py::arg("n"));
  m.def(
      "error_tradeoff_residual",
      [](std::uint64_t nu, double e11, double e22, double qf11, double qf22, double c) {
        return error_tradeoff_residual(ErrorBudget{nu, e11, e22, qf11, qf22}, c);
      },
      py::arg("nu"), py::arg("e11"), py::arg("e22"), py::arg("qf11"), py::arg("qf22"), py::arg("c_tilde"));
  m.def("small_separation_error_bound", &small_separation_error_bound, py::arg("nu"), py::arg("e11"),
        py::arg("e22"), py::arg("kappa"));

  m.def("parse_grid", &parse_grid);
  m.def(
      "run_figure",
      [](const std::string& figure, const std::string& out, std::optional<std::uint64_t> seed,
         std::optional<std::string> grid, std::optional<int> n_random, unsigned threads) {
        static const std::map<std::string, FigureId> ids = {
            {"fig1", FigureId::Fig1}, {"fig2", FigureId::Fig2}, {"fig3", FigureId::Fig3},
            {"fig4", FigureId::Fig4}, {"fig5", FigureId::Fig5}, {"custom", FigureId::Custom}};
        const auto it = ids.find(figure);
        if (it == ids.end()) throw ConfigError("figure: unknown figure '" + figure + "'");
        ExperimentConfig c = default_config(it->second);
        c.output_dir = out;
        c.threads = threads;
        if (seed) c.seed = *seed;
        if (n_random) c.n_random = *n_random;
        if (grid) {
          if (it->second == FigureId::Fig4)
            c.theta1_grid = parse_grid(*grid);
          else
            c.theta2_grid = parse_grid(*grid);
        }
        const RunResult r = run_experiment(c);
        py::dict files;
        for (const auto& f : r.files) files[py::str(f.name)] = f.sha256;
        return py::make_tuple(r.manifest.string(), files);
      },
      py::arg("figure"), py::arg("out"), py::arg("seed") = py::none(), py::arg("grid") = py::none(),
      py::arg("n_random") = py::none(), py::arg("threads") = 0u);
}
