#ifndef VRFW_BENCH_HPP
#define VRFW_BENCH_HPP

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vrfw/problems.hpp"
#include "vrfw/solvers.hpp"

namespace vrfw {

// Thrown on NaN objectives or unrecovered subsolve divergence (CLI exit 2).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TraceRow {
  std::uint64_t seed = 0;
  int epoch = 0;
  int inner_step = 0;
  std::uint64_t exact_grads = 0;
  std::uint64_t stochastic_grads = 0;
  std::uint64_t lmo_calls = 0;
  std::uint64_t projections = 0;
  double wall_time_s = 0.0;
  double objective = 0.0;
};

struct TraceFile {
  std::vector<TraceRow> rows;
};

std::string trace_csv_header();
std::string to_csv(const TraceFile& trace);
TraceFile parse_trace_csv(std::istream& in);
TraceFile parse_trace_csv_file(const std::string& path);

struct RunSpec {
  // problem: "quadratic" | "logistic:<path>" | "synth"
  std::string problem = "quadratic";
  std::string dataset_path;
  int synth_n = 2000, synth_m = 50, synth_h = 10;
  double synth_separability = 2.0;
  std::uint64_t synth_seed = 1;
  int quad_dim = 10, quad_n = 20;
  double quad_l = 1.0, quad_alpha = 0.25;
  std::uint64_t quad_seed = 7;
  // domain: "l1" | "l2" | "trace" with radius / tau
  std::string domain = "l2";
  double domain_radius = 1.0;
  // solver: fw | sfw | svrf | scgs | storc | sgd | svrg
  std::string solver = "fw";
  SolverConfig config;
  std::vector<std::uint64_t> seeds = {0};
  bool zero_wall_time = false;  // byte-reproducible CSV output
};

struct RunResult {
  TraceFile trace;
  double final_objective_mean = 0.0;
  double final_objective_std = 0.0;
  // Closed-form f* when the problem provides one (quadratic, interior
  // optimum inside the domain), NaN otherwise.
  double fstar_reference;
};

// Builds the problem and domain, runs one trace per seed, deterministic per
// seed. Throws std::invalid_argument on incompatible specs, NumericalError
// on non-finite objectives.
RunResult run(const RunSpec& spec);

// Assembled problem/domain pair, reusable by tests and the CLI.
struct Instance {
  std::shared_ptr<FiniteSumObjective> objective;
  std::shared_ptr<FeasibleDomain> domain;
  double fstar_reference;
};
Instance make_instance(const RunSpec& spec);

Trace run_solver(const std::string& solver, const FiniteSumObjective& obj,
                 const FeasibleDomain& domain, const SolverConfig& config);

struct RateHit {
  double eps = 0.0;
  double cost = 0.0;
  bool reached = false;
};

struct RateFit {
  std::vector<RateHit> hits;
  // log10(cost) vs log10(1/eps) least squares over the reached hits
  double loglog_slope = 0.0;
  double loglog_r2 = 0.0;
  // cost vs log10(1/eps) for logarithmic-rate checks
  double semilog_slope = 0.0;
  double semilog_r2 = 0.0;
};

// First cumulative cost at which objective - fstar <= eps along a
// (cost, objective) curve; costs must be nondecreasing.
RateFit rate_fit(const std::vector<std::pair<double, double>>& cost_objective,
                 double fstar, const std::vector<double>& target_accuracies);

// Extracts a (cost, objective) curve for one seed of a TraceFile.
// cost_column: exact_grads | stochastic_grads | lmo_calls | projections.
std::vector<std::pair<double, double>> cost_curve(const TraceFile& trace,
                                                  const std::string& cost_column,
                                                  std::uint64_t seed);

// Theorem schedule tables (gamma_k, batch sizes, epoch lengths, beta_k,
// eta_{t,k}) for svrf | storc | scgs | sfw.
std::string schedule_table(const std::string& solver, double L, double D,
                           double G, double mu, StorcCase storc_case,
                           int t_max, int k_max);

}  // namespace vrfw

#endif  // VRFW_BENCH_HPP
