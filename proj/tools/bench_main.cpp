#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vrfw/bench.hpp"
#include "vrfw/dataio.hpp"
#include "vrfw/estimator.hpp"
#include "vrfw/oracles.hpp"

namespace {

vrfw::StorcCase parse_case(const std::string& s) {
  if (s == "a") return vrfw::StorcCase::A;
  if (s == "b") return vrfw::StorcCase::B;
  if (s == "c") return vrfw::StorcCase::C;
  throw std::invalid_argument("--case must be a, b or c");
}

int cmd_run(const vrfw::RunSpec& spec, const std::string& out_path) {
  const vrfw::RunResult result = vrfw::run(spec);
  const std::string csv = vrfw::to_csv(result.trace);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << csv;
  }
  std::fprintf(stderr, "final objective: %.12g +- %.12g",
               result.final_objective_mean, result.final_objective_std);
  if (std::isfinite(result.fstar_reference))
    std::fprintf(stderr, " (reference f* = %.12g)", result.fstar_reference);
  std::fprintf(stderr, "\n");
  return 0;
}

int cmd_rates(const std::string& trace_path, const std::string& cost_column,
              double fstar, std::vector<double> eps, std::uint64_t seed) {
  const vrfw::TraceFile tf = vrfw::parse_trace_csv_file(trace_path);
  if (eps.empty()) eps = {1e-1, 1e-2, 1e-3, 1e-4};
  const auto curve = vrfw::cost_curve(tf, cost_column, seed);
  const vrfw::RateFit fit = vrfw::rate_fit(curve, fstar, eps);
  for (const vrfw::RateHit& h : fit.hits) {
    if (h.reached)
      std::printf("eps=%.6g cost=%.12g\n", h.eps, h.cost);
    else
      std::printf("eps=%.6g unreached\n", h.eps);
  }
  std::printf("loglog_slope=%.6g loglog_r2=%.6g\n", fit.loglog_slope,
              fit.loglog_r2);
  std::printf("semilog_slope=%.6g semilog_r2=%.6g\n", fit.semilog_slope,
              fit.semilog_r2);
  return 0;
}

// Fast invariant sweep over the oracles and the estimator. Returns the
// number of violations.
int verify_invariants() {
  using namespace vrfw;
  int failures = 0;
  auto expect = [&](bool ok, const char* what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what);
    if (!ok) ++failures;
  };
  RngStream rng(12345);

  // LMO optimality on random probes, all three domains.
  {
    const L1Ball l1(1.5, 6);
    const L2Ball l2(2.0, 5);
    const TraceNormBall tn(3.0, 5, 4);
    const FeasibleDomain* domains[] = {&l1, &l2, &tn};
    bool ok = true;
    for (const FeasibleDomain* dom : domains) {
      for (int trial = 0; trial < 200; ++trial) {
        Iterate g(dom->rows(), dom->cols());
        for (int i = 0; i < g.rows(); ++i)
          for (int j = 0; j < g.cols(); ++j) g(i, j) = rng.next_gaussian();
        const Iterate v = dom->lmo(g, &rng).v;
        if (!dom->contains(v, 1e-8)) ok = false;
        const Iterate probe = dom->sample_point(rng);
        if (dot(g, v) > dot(g, probe) + 1e-6 * g.norm() * dom->diameter())
          ok = false;
      }
    }
    expect(ok, "lmo optimality and feasibility (l1, l2, trace-norm)");
  }

  // VR estimator unbiasedness by exhaustive enumeration.
  {
    const QuadraticProblem quad = quadratic_make(6, 2.0, 0.5, 8, 99);
    CostLedger ledger;
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      Iterate w(6, 1), w0(6, 1);
      for (int j = 0; j < 6; ++j) {
        w(j, 0) = rng.next_gaussian();
        w0(j, 0) = rng.next_gaussian();
      }
      const Snapshot snap = make_snapshot(quad, w0, ledger);
      Iterate mean = Iterate::Zero(6, 1);
      for (int i = 0; i < quad.num_components(); ++i)
        mean += vr_gradient(quad, w, snap, i, ledger);
      mean /= quad.num_components();
      const Iterate full = quad.full_gradient(w);
      if ((mean - full).norm() > 1e-10 * (1.0 + full.norm())) ok = false;
    }
    expect(ok, "vr estimator unbiasedness (exhaustive)");
  }

  // Smoothness property on random component pairs.
  {
    const QuadraticProblem quad = quadratic_make(6, 2.0, 0.5, 8, 99);
    const double L = quad.smoothness_bound();
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      Iterate w(6, 1), v(6, 1);
      for (int j = 0; j < 6; ++j) {
        w(j, 0) = rng.next_gaussian();
        v(j, 0) = rng.next_gaussian();
      }
      const int i = static_cast<int>(rng.next_index(quad.num_components()));
      const Iterate gw = quad.component_gradient(i, w);
      const Iterate gv = quad.component_gradient(i, v);
      const double lhs = (gw - gv).squaredNorm();
      const double rhs =
          2.0 * L *
          (quad.component_value(i, w) - quad.component_value(i, v) -
           dot(gv, w - v));
      if (lhs > rhs + 1e-8) ok = false;
    }
    expect(ok, "component smoothness inequality");
  }

  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projection-free stochastic optimization benchmark"};
  app.require_subcommand(1);

  vrfw::RunSpec spec;
  std::string out_path, mode = "practical", storc_case = "a";
  std::uint64_t seed_flag = 0;
  std::vector<std::uint64_t> seeds_flag;

  CLI::App* run_cmd = app.add_subcommand("run", "run a seeded experiment");
  run_cmd->add_option("--problem", spec.problem,
                      "quadratic | logistic | synth");
  run_cmd->add_option("--dataset", spec.dataset_path, "libsvm-format file");
  run_cmd->add_option("--domain", spec.domain, "l1 | l2 | trace");
  run_cmd->add_option("--radius", spec.domain_radius, "ball radius / tau");
  run_cmd->add_option("--solver", spec.solver,
                      "fw | sfw | svrf | scgs | storc | sgd | svrg");
  run_cmd->add_option("--mode", mode, "theory | practical");
  run_cmd->add_option("--case", storc_case, "storc case: a | b | c");
  run_cmd->add_option("--seed", seed_flag, "single seed");
  run_cmd->add_option("--seeds", seeds_flag, "list of seeds");
  run_cmd->add_option("--steps", spec.config.steps, "iteration budget");
  run_cmd->add_option("--epochs", spec.config.epochs, "outer epochs");
  run_cmd->add_option("--batch", spec.config.batch, "fixed mini-batch size");
  run_cmd->add_option("--snapshot-gap", spec.config.snapshot_gap,
                      "steps between snapshots (practical mode)");
  run_cmd->add_option("--eval-every", spec.config.eval_every,
                      "trace density in steps");
  run_cmd->add_option("--sgd-c", spec.config.sgd_rate_c, "sgd rate c");
  run_cmd->add_option("--svrg-c", spec.config.svrg_rate, "svrg constant rate");
  run_cmd->add_option("--batch-mult", spec.config.batch_multiplier,
                      "scales theorem batch constants");
  run_cmd->add_option("--subsolve-iters", spec.config.subsolve_iters,
                      "practical-mode inner descent budget (storc/scgs)");
  run_cmd->add_option("--synth-n", spec.synth_n, "synthetic examples");
  run_cmd->add_option("--synth-m", spec.synth_m, "synthetic features");
  run_cmd->add_option("--synth-h", spec.synth_h, "synthetic classes");
  run_cmd->add_option("--synth-seed", spec.synth_seed, "synthetic data seed");
  run_cmd->add_option("--synth-sep", spec.synth_separability,
                      "class separability");
  run_cmd->add_option("--quad-dim", spec.quad_dim, "quadratic dimension");
  run_cmd->add_option("--quad-n", spec.quad_n, "quadratic components");
  run_cmd->add_option("--quad-L", spec.quad_l, "quadratic average max curvature");
  run_cmd->add_option("--quad-alpha", spec.quad_alpha, "quadratic min curvature");
  run_cmd->add_option("--quad-seed", spec.quad_seed, "quadratic seed");
  run_cmd->add_option("--out", out_path, "output CSV path (- for stdout)");
  run_cmd->add_flag("--zero-wall-time", spec.zero_wall_time,
                    "emit wall_time_s = 0 for byte-reproducible output");

  std::string trace_path, cost_column = "stochastic_grads";
  double fstar = 0.0;
  std::vector<double> eps_list;
  std::uint64_t rates_seed = 0;
  CLI::App* rates_cmd =
      app.add_subcommand("rates", "fit cost-vs-accuracy scaling of a trace");
  rates_cmd->add_option("--trace", trace_path, "trace CSV")->required();
  rates_cmd->add_option("--cost-column", cost_column,
                        "exact_grads | stochastic_grads | lmo_calls | "
                        "projections");
  rates_cmd->add_option("--fstar", fstar, "reference optimum")->required();
  rates_cmd->add_option("--eps", eps_list, "target accuracies");
  rates_cmd->add_option("--seed", rates_seed, "seed row group to fit");

  std::string sched_solver = "svrf";
  double sched_L = 1.0, sched_D = 2.0, sched_G = 1.0, sched_mu = 4.0;
  int t_max = 4, k_max = 5;
  CLI::App* sched_cmd =
      app.add_subcommand("schedule", "print theorem schedule tables");
  sched_cmd->add_option("--solver", sched_solver, "svrf | storc | scgs | sfw");
  sched_cmd->add_option("--L", sched_L, "smoothness bound");
  sched_cmd->add_option("--D", sched_D, "domain diameter");
  sched_cmd->add_option("--G", sched_G, "Lipschitz bound");
  sched_cmd->add_option("--mu", sched_mu, "condition number");
  sched_cmd->add_option("--case", storc_case, "storc case: a | b | c");
  sched_cmd->add_option("--t-max", t_max, "epochs to print");
  sched_cmd->add_option("--k-max", k_max, "inner steps to print");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the oracle/estimator invariant sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      spec.config.practical_mode = (mode == "practical");
      if (mode != "practical" && mode != "theory")
        throw std::invalid_argument("--mode must be theory or practical");
      spec.config.storc_case = parse_case(storc_case);
      spec.seeds = seeds_flag.empty()
                       ? std::vector<std::uint64_t>{seed_flag}
                       : seeds_flag;
      return cmd_run(spec, out_path);
    }
    if (rates_cmd->parsed())
      return cmd_rates(trace_path, cost_column, fstar, eps_list, rates_seed);
    if (sched_cmd->parsed()) {
      std::cout << vrfw::schedule_table(sched_solver, sched_L, sched_D,
                                        sched_G, sched_mu,
                                        parse_case(storc_case), t_max, k_max);
      return 0;
    }
    if (verify_cmd->parsed()) return verify_invariants() == 0 ? 0 : 1;
  } catch (const vrfw::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
