#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qkdrate/errors.hpp"
#include "qkdrate/finite_n.hpp"
#include "qkdrate/optimizer.hpp"
#include "qkdrate/rates.hpp"
#include "qkdrate/sacrifice.hpp"

namespace py = pybind11;
using namespace qkdrate;

namespace {

template <typename T>
std::string repr_of(const char* name, const T& value) {
  return std::string(name) + "(" + std::string(to_string(value)) + ")";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Key-rate analysis for BB84 with asymmetric basis choice";

  auto error = py::register_exception<Error>(m, "QkdrateError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BracketError>(m, "BracketError", error.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
  py::register_exception<NumericError>(m, "NumericError", error.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", error.ptr());

  py::enum_<Basis>(m, "Basis").value("bit", Basis::bit).value("phase", Basis::phase);
  py::enum_<Branch>(m, "Branch")
      .value("interior", Branch::interior)
      .value("stationary", Branch::stationary)
      .value("saturated", Branch::saturated)
      .value("unclassified", Branch::unclassified);
  py::enum_<SacrificeMethod>(m, "SacrificeMethod")
      .value("closed_form", SacrificeMethod::closed_form)
      .value("inversion", SacrificeMethod::inversion);
  py::enum_<PhaseModel>(m, "PhaseModel")
      .value("bit_formula", PhaseModel::bit_formula)
      .value("phase_formula", PhaseModel::phase_formula);
  py::enum_<Mode>(m, "Mode").value("asymmetric", Mode::asymmetric).value("symmetric", Mode::symmetric);
  py::enum_<BoundForm>(m, "BoundForm")
      .value("sandwich", BoundForm::sandwich)
      .value("as_printed", BoundForm::as_printed);
  py::enum_<SumRange>(m, "SumRange").value("total", SumRange::total).value("population", SumRange::population);

  py::class_<ToleranceConfig>(m, "ToleranceConfig")
      .def(py::init<>())
      .def_readwrite("root_tol", &ToleranceConfig::root_tol)
      .def_readwrite("exponent_tol", &ToleranceConfig::exponent_tol)
      .def_readwrite("max_iter", &ToleranceConfig::max_iter)
      .def_readwrite("grid_points", &ToleranceConfig::grid_points);

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("coarse_divisions", &OptimizerConfig::coarse_divisions)
      .def_readwrite("refine_rounds", &OptimizerConfig::refine_rounds)
      .def_readwrite("improvement_tol", &OptimizerConfig::improvement_tol)
      .def_readwrite("line_tol", &OptimizerConfig::line_tol);

  py::class_<ProtocolParams>(m, "ProtocolParams")
      .def(py::init<double, double>(), py::arg("p1"), py::arg("p2"))
      .def_property_readonly("p1", &ProtocolParams::p1)
      .def_property_readonly("p2", &ProtocolParams::p2)
      .def_property_readonly("phase_sample", &ProtocolParams::phase_sample)
      .def_property_readonly("bit_sample", &ProtocolParams::bit_sample)
      .def_property_readonly("raw_key", &ProtocolParams::raw_key)
      .def_property_readonly("phase_population", &ProtocolParams::phase_population)
      .def("__repr__", [](const ProtocolParams& p) {
        return "ProtocolParams(p1=" + std::to_string(p.p1()) + ", p2=" + std::to_string(p.p2()) + ")";
      });

  py::class_<ErrorRates>(m, "ErrorRates")
      .def(py::init([](double q_plus, double q_times) {
             ErrorRates r{q_plus, q_times};
             r.validate();
             return r;
           }),
           py::arg("q_plus"), py::arg("q_times"))
      .def_readonly("q_plus", &ErrorRates::q_plus)
      .def_readonly("q_times", &ErrorRates::q_times);

  py::class_<SacrificeResult>(m, "SacrificeResult")
      .def_readonly("s", &SacrificeResult::s)
      .def_readonly("branch", &SacrificeResult::branch)
      .def_readonly("method", &SacrificeResult::method)
      .def_readonly("q1", &SacrificeResult::q1)
      .def_readonly("q2", &SacrificeResult::q2)
      .def_readonly("residual", &SacrificeResult::residual)
      .def("__repr__", [](const SacrificeResult& r) {
        return "SacrificeResult(s=" + std::to_string(r.s) + ", " + repr_of("branch", r.branch) + ")";
      });

  py::class_<CrossCheckReport>(m, "CrossCheckReport")
      .def_readonly("basis", &CrossCheckReport::basis)
      .def_readonly("closed", &CrossCheckReport::closed)
      .def_readonly("inversion", &CrossCheckReport::inversion)
      .def_readonly("discrepancy", &CrossCheckReport::discrepancy)
      .def_readonly("stationary_corrected", &CrossCheckReport::stationary_corrected)
      .def_readonly("error", &CrossCheckReport::error);

  py::class_<RatePoint>(m, "RatePoint")
      .def_readonly("q_plus", &RatePoint::q_plus)
      .def_readonly("q_times", &RatePoint::q_times)
      .def_readonly("c", &RatePoint::c)
      .def_readonly("p1", &RatePoint::p1)
      .def_readonly("p2", &RatePoint::p2)
      .def_readonly("s1", &RatePoint::s1)
      .def_readonly("s2", &RatePoint::s2)
      .def_readonly("r_raw", &RatePoint::r_raw)
      .def_readonly("r", &RatePoint::r);

  py::class_<BasisRatioOptimum>(m, "BasisRatioOptimum")
      .def_readonly("a", &BasisRatioOptimum::a)
      .def_readonly("b", &BasisRatioOptimum::b)
      .def_readonly("value", &BasisRatioOptimum::value)
      .def_readonly("grid_step", &BasisRatioOptimum::grid_step);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("q", &OptimizationResult::q)
      .def_readonly("c", &OptimizationResult::c)
      .def_readonly("mode", &OptimizationResult::mode)
      .def_readonly("phase_model", &OptimizationResult::phase_model)
      .def_readonly("best", &OptimizationResult::best)
      .def_readonly("argmax_p1", &OptimizationResult::argmax_p1)
      .def_readonly("argmax_p2", &OptimizationResult::argmax_p2)
      .def_readonly("coarse_grid_step", &OptimizationResult::coarse_grid_step)
      .def_readonly("refinement_iters", &OptimizationResult::refinement_iters)
      .def_readonly("coarse_best_r_raw", &OptimizationResult::coarse_best_r_raw);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("q", &SweepRow::q)
      .def_readonly("mode", &SweepRow::mode)
      .def_readonly("result", &SweepRow::result)
      .def_readonly("error", &SweepRow::error);

  py::class_<CountLayout>(m, "CountLayout")
      .def(py::init([](std::int64_t n_total, std::int64_t n_sample, std::int64_t n_pop) {
             CountLayout l{n_total, n_sample, n_pop};
             l.validate();
             return l;
           }),
           py::arg("n_total"), py::arg("n_sample"), py::arg("n_pop"))
      .def_readonly("n_total", &CountLayout::n_total)
      .def_readonly("n_sample", &CountLayout::n_sample)
      .def_readonly("n_pop", &CountLayout::n_pop);

  py::class_<HypergeomBoundCheck>(m, "HypergeomBoundCheck")
      .def_readonly("max_violation", &HypergeomBoundCheck::max_violation)
      .def_readonly("k_sample", &HypergeomBoundCheck::k_sample)
      .def_readonly("worst_k_pop", &HypergeomBoundCheck::worst_k_pop);

  py::class_<FiniteNResult>(m, "FiniteNResult")
      .def_readonly("n", &FiniteNResult::n)
      .def_readonly("log2_b", &FiniteNResult::log2_b)
      .def_readonly("empirical_exponent", &FiniteNResult::empirical_exponent)
      .def_readonly("asymptotic_exponent", &FiniteNResult::asymptotic_exponent);

  py::class_<EstimationCell>(m, "EstimationCell")
      .def_readonly("k_sample", &EstimationCell::k_sample)
      .def_readonly("k_pop", &EstimationCell::k_pop)
      .def_readonly("count", &EstimationCell::count)
      .def_readonly("frequency", &EstimationCell::frequency)
      .def_readonly("exact_pmf", &EstimationCell::exact_pmf)
      .def_readonly("z_score", &EstimationCell::z_score);

  py::class_<EstimationTable>(m, "EstimationTable")
      .def_readonly("n_sample", &EstimationTable::n_sample)
      .def_readonly("n_pop", &EstimationTable::n_pop)
      .def_readonly("errors", &EstimationTable::errors)
      .def_readonly("trials", &EstimationTable::trials)
      .def_readonly("seed", &EstimationTable::seed)
      .def_readonly("cells", &EstimationTable::cells);

  const ToleranceConfig tol;
  const OptimizerConfig opt;

  m.def("binary_entropy", &binary_entropy, py::arg("x"));
  m.def("divergence", &divergence, py::arg("basis"), py::arg("params"), py::arg("q"),
        py::arg("q_prime"));
  m.def("exponent", &exponent, py::arg("basis"), py::arg("s"), py::arg("params"), py::arg("q"),
        py::arg("cfg") = tol);
  m.def("q_prime_one", &q_prime_one, py::arg("basis"), py::arg("params"), py::arg("q"),
        py::arg("c"), py::arg("cfg") = tol);
  m.def("q_prime_two", &q_prime_two, py::arg("basis"), py::arg("params"), py::arg("q"),
        py::arg("cfg") = tol);
  m.def("s_closed", &s_closed, py::arg("basis"), py::arg("params"), py::arg("q"), py::arg("c"),
        py::arg("cfg") = tol);
  m.def("s_by_inversion",
        py::overload_cast<Basis, const ProtocolParams&, double, double, const ToleranceConfig&>(
            &s_by_inversion),
        py::arg("basis"), py::arg("params"), py::arg("q"), py::arg("c"), py::arg("cfg") = tol);
  m.def("cross_check", &cross_check, py::arg("basis"), py::arg("params"), py::arg("q"),
        py::arg("c"), py::arg("cfg") = tol);
  m.def("rate_asymmetric", &rate_asymmetric, py::arg("params"), py::arg("rates"), py::arg("c"),
        py::arg("cfg") = tol);
  m.def("rate_symmetric", &rate_symmetric, py::arg("p1"), py::arg("rates"), py::arg("c"),
        py::arg("model") = PhaseModel::bit_formula, py::arg("cfg") = tol);
  m.def("basis_ratio_optimality_check", &basis_ratio_optimality_check, py::arg("coincidence"),
        py::arg("grid_n"));
  m.def("optimize_asymmetric", &optimize_asymmetric, py::arg("q"), py::arg("c"),
        py::arg("cfg") = tol, py::arg("opt") = opt, py::call_guard<py::gil_scoped_release>());
  m.def("optimize_symmetric", &optimize_symmetric, py::arg("q"), py::arg("c"),
        py::arg("model") = PhaseModel::bit_formula, py::arg("cfg") = tol, py::arg("opt") = opt,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "sweep",
      [](const std::vector<double>& q_grid, double c, const std::vector<Mode>& modes,
         PhaseModel model, const ToleranceConfig& cfg, const OptimizerConfig& o, unsigned threads) {
        return sweep(q_grid, c, modes, model, cfg, o, threads);
      },
      py::arg("q_grid"), py::arg("c"), py::arg("modes"),
      py::arg("model") = PhaseModel::bit_formula, py::arg("cfg") = tol, py::arg("opt") = opt,
      py::arg("threads") = 0u, py::call_guard<py::gil_scoped_release>());
  m.def("make_q_grid", &make_q_grid, py::arg("start"), py::arg("end"), py::arg("step"));
  m.def("make_layout", &make_layout, py::arg("n_total"), py::arg("params"), py::arg("basis"));
  m.def("hypergeom_log_pmf", &hypergeom_log_pmf, py::arg("n_s"), py::arg("n_p"), py::arg("k_s"),
        py::arg("k_p"));
  m.def("verify_hypergeom_bound", &verify_hypergeom_bound, py::arg("layout"), py::arg("q"),
        py::arg("form") = BoundForm::sandwich);
  m.def("b_exact", &b_exact, py::arg("basis"), py::arg("n"), py::arg("params"), py::arg("q"),
        py::arg("s"), py::arg("cfg") = tol, py::arg("range") = SumRange::total,
        py::arg("form") = BoundForm::sandwich);
  m.def("simulate_estimation", &simulate_estimation, py::arg("layout"), py::arg("errors"),
        py::arg("trials"), py::arg("seed"), py::arg("threads") = 1u,
        py::call_guard<py::gil_scoped_release>());
}
