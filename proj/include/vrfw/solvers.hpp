#ifndef VRFW_SOLVERS_HPP
#define VRFW_SOLVERS_HPP

#include <limits>
#include <optional>
#include <vector>

#include "vrfw/core.hpp"
#include "vrfw/estimator.hpp"
#include "vrfw/oracles.hpp"

namespace vrfw {

enum class StorcCase { A, B, C };

struct SolverConfig {
  int epochs = 4;        // outer iterations T for the epoch-based solvers
  int steps = 100;       // iteration budget for the single-loop solvers
  std::uint64_t seed = 0;
  int eval_every = 1;    // trace density, in inner steps
  bool practical_mode = false;
  int snapshot_gap = 50;   // practical-mode snapshot interval
  int batch = 100;         // fixed mini-batch (sgd, svrg, practical storc)
  double sgd_rate_c = 0.1;       // c / sqrt(k)
  double svrg_rate = 0.1;        // constant c'
  double batch_multiplier = 1.0; // scales the theorem batch constants
  StorcCase storc_case = StorcCase::A;
  int subsolve_iters = 10;       // practical-mode inner descent budget
  bool record_iterates = false;  // keep every inner iterate (tests only)
  std::optional<Iterate> x0;     // start / arbitrary point; domain default
};

struct TracePoint {
  CostLedger ledger;
  double objective = 0.0;
  int epoch = 0;
  int step = 0;  // inner step within the epoch (cumulative for single-loop)
};

struct Trace {
  std::vector<TracePoint> points;
  Iterate final_iterate;
  CostLedger ledger;
  double final_gap = std::numeric_limits<double>::quiet_NaN();
  bool any_subsolve_not_converged = false;
  std::vector<Iterate> iterates;  // filled when record_iterates is set
};

// w0 = argmin_{w} <grad f(x), w>: one exact gradient plus one lmo call.
Iterate init_w0(const FiniteSumObjective& obj, const FeasibleDomain& domain,
                const Iterate& x_arbitrary, CostLedger& ledger,
                RngStream* rng = nullptr);

// Exact-gradient Frank-Wolfe with gamma_k = 2/(k+1); config.steps iterations.
Trace frank_wolfe(const FiniteSumObjective& obj, const FeasibleDomain& domain,
                  const SolverConfig& config);

// Mini-batch stochastic Frank-Wolfe. Theory mode: m_k = ceil((G(k+1)/(LD))^2);
// practical mode: m_k = k^2.
Trace sfw(const FiniteSumObjective& obj, const FeasibleDomain& domain,
          const SolverConfig& config);

// Variance-reduced Frank-Wolfe. Theory mode: epochs with N_t = 2^{t+3} - 2,
// m_k = 96(k+1), k reset each epoch. Practical mode: one loop, snapshot
// every snapshot_gap steps, m_k = k, k never reset.
Trace svrf(const FiniteSumObjective& obj, const FeasibleDomain& domain,
           const SolverConfig& config);

struct SubsolveResult {
  Iterate x;
  double gap = 0.0;
  int iters = 0;
  bool not_converged = false;
};

// Frank-Wolfe with exact line search on
//   g(x) = (beta/2) ||x - x_prev||^2 + <grad_est, x>,
// run until the duality gap certificate is at most eta. One lmo per
// iteration; the gap reuses that iteration's vertex.
SubsolveResult fw_subsolve(const Iterate& grad_est, double beta,
                           const Iterate& x_prev, const FeasibleDomain& domain,
                           double eta, int max_iters, CostLedger& ledger,
                           RngStream* rng = nullptr);

// Default safety cap for fw_subsolve: 10 * ceil(beta D^2 / eta).
int fw_subsolve_default_max_iters(double beta, double diameter, double eta);

// Conditional gradient sliding with plain stochastic mini-batches.
// Single Nesterov loop: gamma_k = 2/(k+1), beta_k = 3L/k, eta_k = 2LD^2/k^2;
// m_k = k^3 in practical mode, config.batch otherwise.
Trace scgs(const FiniteSumObjective& obj, const FeasibleDomain& domain,
           const SolverConfig& config);

// Variance-reduced conditional gradient sliding. Theory mode follows the
// per-case epoch schedules (N_t, m_{t,k}, D_t); practical mode uses epochs
// of snapshot_gap steps with the fixed batch.
Trace storc(const FiniteSumObjective& obj, const FeasibleDomain& domain,
            const SolverConfig& config);

// Projected SGD, rate c/sqrt(k), fixed batch.
Trace sgd(const FiniteSumObjective& obj, const FeasibleDomain& domain,
          const SolverConfig& config);

// Projected SVRG: constant rate, snapshot every snapshot_gap steps.
Trace svrg(const FiniteSumObjective& obj, const FeasibleDomain& domain,
           const SolverConfig& config);

// Theory-mode schedule values (shared with the bench schedule tables).
namespace schedules {
inline double fw_gamma(int k) { return 2.0 / (k + 1); }
inline long long svrf_epoch_len(int t) { return (1LL << (t + 3)) - 2; }
inline long long svrf_batch(int k) { return 96LL * (k + 1); }
inline double storc_beta(int k, double L) { return 3.0 * L / k; }
inline double storc_eta(int t_epoch_len, int k, double L, double Dt2) {
  return 2.0 * L * Dt2 / (static_cast<double>(t_epoch_len) * k);
}
long long storc_epoch_len(StorcCase c, int t, double mu);
long long storc_batch(StorcCase c, int t, int k, long long Nt, double L,
                      double D, double G, double mu);
long long sfw_batch(int k, double G, double L, double D);
}  // namespace schedules

}  // namespace vrfw

#endif  // VRFW_SOLVERS_HPP
