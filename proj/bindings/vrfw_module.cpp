#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vrfw/bench.hpp"
#include "vrfw/dataio.hpp"
#include "vrfw/estimator.hpp"
#include "vrfw/oracles.hpp"
#include "vrfw/problems.hpp"
#include "vrfw/solvers.hpp"

namespace py = pybind11;
using namespace vrfw;

namespace {

StorcCase case_from_string(const std::string& s) {
  if (s == "a") return StorcCase::A;
  if (s == "b") return StorcCase::B;
  if (s == "c") return StorcCase::C;
  throw std::invalid_argument("storc case must be 'a', 'b' or 'c'");
}

}  // namespace

PYBIND11_MODULE(_vrfw, m) {
  m.doc() = "projection-free stochastic optimization (SVRF/STORC and baselines)";

  py::class_<CostLedger>(m, "CostLedger")
      .def(py::init<>())
      .def_readwrite("exact_gradients", &CostLedger::exact_gradients)
      .def_readwrite("stochastic_gradients", &CostLedger::stochastic_gradients)
      .def_readwrite("lmo_calls", &CostLedger::lmo_calls)
      .def_readwrite("projections", &CostLedger::projections)
      .def_readwrite("wall_time", &CostLedger::wall_time);

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t>())
      .def("next_index", &RngStream::next_index)
      .def("next_double", &RngStream::next_double)
      .def("next_gaussian", &RngStream::next_gaussian);

  m.def("dot", &dot);
  m.def("convex_combination", &convex_combination);

  py::class_<FeasibleDomain, std::shared_ptr<FeasibleDomain>>(m, "FeasibleDomain")
      .def("lmo",
           [](const FeasibleDomain& d, const Iterate& g) {
             const LmoResult r = d.lmo(g);
             return py::make_tuple(r.v, r.degenerate);
           })
      .def("diameter", &FeasibleDomain::diameter)
      .def("contains", &FeasibleDomain::contains)
      .def("has_projection", &FeasibleDomain::has_projection)
      .def("project", &FeasibleDomain::project)
      .def("some_point", &FeasibleDomain::some_point);

  py::class_<L1Ball, FeasibleDomain, std::shared_ptr<L1Ball>>(m, "L1Ball")
      .def(py::init<double, int>(), py::arg("radius"), py::arg("dim"));
  py::class_<L2Ball, FeasibleDomain, std::shared_ptr<L2Ball>>(m, "L2Ball")
      .def(py::init<double, int>(), py::arg("radius"), py::arg("dim"))
      .def(py::init<double, Iterate>(), py::arg("radius"), py::arg("center"));
  py::class_<TraceNormBall, FeasibleDomain, std::shared_ptr<TraceNormBall>>(
      m, "TraceNormBall")
      .def(py::init<double, int, int>(), py::arg("tau"), py::arg("rows"),
           py::arg("cols"));

  m.def("duality_gap",
        [](const Iterate& g, const Iterate& x, const FeasibleDomain& dom) {
          return duality_gap(g, x, dom);
        });

  py::class_<FiniteSumObjective, std::shared_ptr<FiniteSumObjective>>(
      m, "FiniteSumObjective")
      .def("num_components", &FiniteSumObjective::num_components)
      .def("value", &FiniteSumObjective::value)
      .def("full_gradient", &FiniteSumObjective::full_gradient)
      .def("component_value", &FiniteSumObjective::component_value)
      .def("component_gradient", &FiniteSumObjective::component_gradient)
      .def("smoothness_bound", &FiniteSumObjective::smoothness_bound)
      .def("strong_convexity", &FiniteSumObjective::strong_convexity)
      .def("lipschitz_bound", &FiniteSumObjective::lipschitz_bound);

  py::class_<QuadraticProblem, FiniteSumObjective,
             std::shared_ptr<QuadraticProblem>>(m, "QuadraticProblem")
      .def("unconstrained_optimum", &QuadraticProblem::unconstrained_optimum)
      .def("unconstrained_optimum_value",
           &QuadraticProblem::unconstrained_optimum_value)
      .def("condition_number", &QuadraticProblem::condition_number)
      .def("set_lipschitz_bound", &QuadraticProblem::set_lipschitz_bound);

  m.def(
      "quadratic_make",
      [](int dim, double l_avg, double alpha, int n, std::uint64_t seed,
         double spread, double offset_scale) {
        return std::make_shared<QuadraticProblem>(quadratic_make(
            dim, l_avg, alpha, n, seed, spread, offset_scale));
      },
      py::arg("dim"), py::arg("l_avg"), py::arg("alpha"), py::arg("n"),
      py::arg("seed"), py::arg("spread") = 0.5,
      py::arg("offset_scale") = 1.0);

  py::class_<MulticlassLogistic, FiniteSumObjective,
             std::shared_ptr<MulticlassLogistic>>(m, "MulticlassLogistic");

  m.def("load_logistic", [](const std::string& path) {
    return std::make_shared<MulticlassLogistic>(parse_dataset_file(path));
  });
  m.def(
      "synth_logistic",
      [](int n, int nfeat, int h, std::uint64_t seed, double separability) {
        return std::make_shared<MulticlassLogistic>(
            synth_multiclass(n, nfeat, h, seed, separability));
      },
      py::arg("n"), py::arg("m"), py::arg("h"), py::arg("seed"),
      py::arg("separability") = 2.0);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("epochs", &SolverConfig::epochs)
      .def_readwrite("steps", &SolverConfig::steps)
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("eval_every", &SolverConfig::eval_every)
      .def_readwrite("practical_mode", &SolverConfig::practical_mode)
      .def_readwrite("snapshot_gap", &SolverConfig::snapshot_gap)
      .def_readwrite("batch", &SolverConfig::batch)
      .def_readwrite("sgd_rate_c", &SolverConfig::sgd_rate_c)
      .def_readwrite("svrg_rate", &SolverConfig::svrg_rate)
      .def_readwrite("batch_multiplier", &SolverConfig::batch_multiplier)
      .def_property(
          "storc_case",
          [](const SolverConfig& c) {
            return c.storc_case == StorcCase::A   ? "a"
                   : c.storc_case == StorcCase::B ? "b"
                                                  : "c";
          },
          [](SolverConfig& c, const std::string& s) {
            c.storc_case = case_from_string(s);
          });

  py::class_<TracePoint>(m, "TracePoint")
      .def_readonly("ledger", &TracePoint::ledger)
      .def_readonly("objective", &TracePoint::objective)
      .def_readonly("epoch", &TracePoint::epoch)
      .def_readonly("step", &TracePoint::step);

  py::class_<Trace>(m, "Trace")
      .def_readonly("points", &Trace::points)
      .def_readonly("final_iterate", &Trace::final_iterate)
      .def_readonly("ledger", &Trace::ledger)
      .def_readonly("final_gap", &Trace::final_gap)
      .def_readonly("any_subsolve_not_converged",
                    &Trace::any_subsolve_not_converged);

  m.def("run_solver",
        [](const std::string& name, const FiniteSumObjective& obj,
           const FeasibleDomain& dom, const SolverConfig& cfg) {
          return run_solver(name, obj, dom, cfg);
        },
        py::arg("solver"), py::arg("objective"), py::arg("domain"),
        py::arg("config"));

  m.def("schedule_table",
        [](const std::string& solver, double L, double D, double G, double mu,
           const std::string& storc_case, int t_max, int k_max) {
          return schedule_table(solver, L, D, G, mu,
                                case_from_string(storc_case), t_max, k_max);
        },
        py::arg("solver"), py::arg("L") = 1.0, py::arg("D") = 2.0,
        py::arg("G") = 1.0, py::arg("mu") = 4.0, py::arg("storc_case") = "a",
        py::arg("t_max") = 4, py::arg("k_max") = 5);

  m.def("rate_fit",
        [](const std::vector<std::pair<double, double>>& curve, double fstar,
           const std::vector<double>& eps) {
          const RateFit fit = rate_fit(curve, fstar, eps);
          py::dict d;
          py::list hits;
          for (const RateHit& h : fit.hits) {
            py::dict hd;
            hd["eps"] = h.eps;
            hd["cost"] = h.cost;
            hd["reached"] = h.reached;
            hits.append(hd);
          }
          d["hits"] = hits;
          d["loglog_slope"] = fit.loglog_slope;
          d["loglog_r2"] = fit.loglog_r2;
          d["semilog_slope"] = fit.semilog_slope;
          d["semilog_r2"] = fit.semilog_r2;
          return d;
        });
}
