#include "vrfw/solvers.hpp"

#include <chrono>
#include <cmath>

namespace vrfw {

namespace {

using Clock = std::chrono::steady_clock;

struct Tracer {
  Trace& trace;
  const FiniteSumObjective& obj;
  int eval_every;
  Clock::time_point start = Clock::now();

  void record(const Iterate& w, CostLedger& ledger, int epoch, int step) {
    ledger.wall_time =
        std::chrono::duration<double>(Clock::now() - start).count();
    trace.points.push_back(TracePoint{ledger, obj.value(w), epoch, step});
  }

  void maybe_record(const Iterate& w, CostLedger& ledger, int epoch, int step,
                    int global_step) {
    if (global_step % eval_every == 0) record(w, ledger, epoch, step);
  }
};

Iterate start_point(const FeasibleDomain& domain, const SolverConfig& config) {
  return config.x0 ? *config.x0 : domain.some_point();
}

long long ceil_ll(double x) {
  return static_cast<long long>(std::ceil(x));
}

int scaled_batch(double m, double multiplier) {
  return static_cast<int>(std::max(1LL, ceil_ll(m * multiplier)));
}

}  // namespace

namespace schedules {

long long storc_epoch_len(StorcCase c, int t, double mu) {
  if (c == StorcCase::C) return ceil_ll(std::sqrt(32.0 * mu));
  return ceil_ll(std::pow(2.0, t / 2.0 + 2.0));
}

long long storc_batch(StorcCase c, int t, int k, long long Nt, double L,
                      double D, double G, double mu) {
  (void)t;
  switch (c) {
    case StorcCase::A:
      return 900LL * Nt;
    case StorcCase::B:
      return ceil_ll(700.0 * Nt + 24.0 * Nt * G * (k + 1) / (L * D));
    case StorcCase::C:
      return ceil_ll(5600.0 * Nt * mu);
  }
  return 1;
}

long long sfw_batch(int k, double G, double L, double D) {
  const double r = G * (k + 1) / (L * D);
  return std::max(1LL, ceil_ll(r * r));
}

}  // namespace schedules

Iterate init_w0(const FiniteSumObjective& obj, const FeasibleDomain& domain,
                const Iterate& x_arbitrary, CostLedger& ledger,
                RngStream* rng) {
  ledger.exact_gradients += 1;
  const Iterate g = obj.full_gradient(x_arbitrary);
  ledger.lmo_calls += 1;
  return domain.lmo(g, rng).v;
}

Trace frank_wolfe(const FiniteSumObjective& obj, const FeasibleDomain& domain,
                  const SolverConfig& config) {
  if (config.steps < 1) throw std::invalid_argument("frank_wolfe: steps < 1");
  Trace trace;
  RngStream rng(config.seed);
  Tracer tracer{trace, obj, config.eval_every};
  Iterate w = start_point(domain, config);
  if (config.record_iterates) trace.iterates.push_back(w);
  tracer.record(w, trace.ledger, 0, 0);
  for (int k = 1; k <= config.steps; ++k) {
    trace.ledger.exact_gradients += 1;
    const Iterate g = obj.full_gradient(w);
    trace.ledger.lmo_calls += 1;
    const Iterate v = domain.lmo(g, &rng).v;
    trace.final_gap = std::max(0.0, dot(g, w - v));
    w = convex_combination(w, v, schedules::fw_gamma(k));
    if (config.record_iterates) trace.iterates.push_back(w);
    tracer.maybe_record(w, trace.ledger, 0, k, k);
  }
  trace.final_iterate = w;
  return trace;
}

Trace sfw(const FiniteSumObjective& obj, const FeasibleDomain& domain,
          const SolverConfig& config) {
  if (config.steps < 1) throw std::invalid_argument("sfw: steps < 1");
  double G = 0.0, L = 0.0, D = 0.0;
  if (!config.practical_mode) {
    const auto g_opt = obj.lipschitz_bound();
    if (!g_opt)
      throw std::invalid_argument("sfw: theory mode needs a Lipschitz bound");
    G = *g_opt;
    L = obj.smoothness_bound();
    D = domain.diameter();
  }
  Trace trace;
  RngStream rng(config.seed);
  Tracer tracer{trace, obj, config.eval_every};
  Iterate w = start_point(domain, config);
  if (config.record_iterates) trace.iterates.push_back(w);
  tracer.record(w, trace.ledger, 0, 0);
  for (int k = 1; k <= config.steps; ++k) {
    const int m =
        config.practical_mode
            ? scaled_batch(static_cast<double>(k) * k, config.batch_multiplier)
            : scaled_batch(
                  static_cast<double>(schedules::sfw_batch(k, G, L, D)),
                  config.batch_multiplier);
    const Iterate g = minibatch_plain(obj, w, m, rng, trace.ledger);
    trace.ledger.lmo_calls += 1;
    const Iterate v = domain.lmo(g, &rng).v;
    w = convex_combination(w, v, schedules::fw_gamma(k));
    if (config.record_iterates) trace.iterates.push_back(w);
    tracer.maybe_record(w, trace.ledger, 0, k, k);
  }
  trace.final_iterate = w;
  return trace;
}

Trace svrf(const FiniteSumObjective& obj, const FeasibleDomain& domain,
           const SolverConfig& config) {
  Trace trace;
  RngStream rng(config.seed);
  Tracer tracer{trace, obj, config.eval_every};
  Iterate w = init_w0(obj, domain, start_point(domain, config), trace.ledger,
                      &rng);
  if (config.record_iterates) trace.iterates.push_back(w);
  tracer.record(w, trace.ledger, 0, 0);

  if (config.practical_mode) {
    // Never-reset variant: one inner counter, periodic snapshots.
    if (config.steps < 1) throw std::invalid_argument("svrf: steps < 1");
    Snapshot snap = make_snapshot(obj, w, trace.ledger);
    int epoch = 1;
    for (int k = 1; k <= config.steps; ++k) {
      if (k > 1 && (k - 1) % config.snapshot_gap == 0) {
        snap = make_snapshot(obj, w, trace.ledger);
        ++epoch;
      }
      const int m = scaled_batch(static_cast<double>(k),
                                 config.batch_multiplier);
      const Iterate g = minibatch_vr(obj, w, snap, m, rng, trace.ledger);
      trace.ledger.lmo_calls += 1;
      const Iterate v = domain.lmo(g, &rng).v;
      w = convex_combination(w, v, schedules::fw_gamma(k));
      if (config.record_iterates) trace.iterates.push_back(w);
      tracer.maybe_record(w, trace.ledger, epoch, k, k);
    }
  } else {
    if (config.epochs < 1) throw std::invalid_argument("svrf: epochs < 1");
    int global_step = 0;
    for (int t = 1; t <= config.epochs; ++t) {
      const Snapshot snap = make_snapshot(obj, w, trace.ledger);
      Iterate x = w;
      const long long Nt = schedules::svrf_epoch_len(t);
      for (int k = 1; k <= Nt; ++k) {
        const int m = scaled_batch(
            static_cast<double>(schedules::svrf_batch(k)),
            config.batch_multiplier);
        const Iterate g = minibatch_vr(obj, x, snap, m, rng, trace.ledger);
        trace.ledger.lmo_calls += 1;
        const Iterate v = domain.lmo(g, &rng).v;
        x = convex_combination(x, v, schedules::fw_gamma(k));
        if (config.record_iterates) trace.iterates.push_back(x);
        ++global_step;
        if (k < Nt)
          tracer.maybe_record(x, trace.ledger, t, k, global_step);
      }
      w = x;
      tracer.record(w, trace.ledger, t, static_cast<int>(Nt));
    }
  }
  trace.final_iterate = w;
  return trace;
}

int fw_subsolve_default_max_iters(double beta, double diameter, double eta) {
  const double bound = beta * diameter * diameter / eta;
  return static_cast<int>(std::min(1e9, 10.0 * std::ceil(bound))) + 1;
}

SubsolveResult fw_subsolve(const Iterate& grad_est, double beta,
                           const Iterate& x_prev, const FeasibleDomain& domain,
                           double eta, int max_iters, CostLedger& ledger,
                           RngStream* rng) {
  if (beta <= 0.0) throw std::invalid_argument("fw_subsolve: beta <= 0");
  if (eta <= 0.0) throw std::invalid_argument("fw_subsolve: eta <= 0");
  SubsolveResult res;
  Iterate x = x_prev;
  Iterate grad_g = grad_est;  // grad g(x_prev) = grad_est
  for (int it = 0; it < max_iters; ++it) {
    ledger.lmo_calls += 1;
    const Iterate v = domain.lmo(grad_g, rng).v;
    const double gap = dot(grad_g, x - v);
    res.iters = it + 1;
    res.gap = std::max(0.0, gap);
    if (gap <= eta) {
      res.x = x;
      return res;
    }
    const Iterate d = v - x;
    const double dd = d.squaredNorm();
    const double gamma =
        dd > 0.0 ? std::min(1.0, gap / (beta * dd)) : 1.0;
    x += gamma * d;
    grad_g = beta * (x - x_prev) + grad_est;
  }
  res.x = x;
  res.not_converged = true;
  return res;
}

namespace {

// Shared Nesterov sliding loop: STORC with variance reduction, SCGS without
// snapshots. One epoch runs the x/y/z recursion for epoch_len steps.
struct SlidingParams {
  double L;
  double D;
  double G = 0.0;
  double mu = 0.0;
};

Trace sliding_loop(const FiniteSumObjective& obj, const FeasibleDomain& domain,
                   const SolverConfig& config, bool variance_reduced) {
  const SlidingParams p = [&] {
    SlidingParams sp;
    sp.L = obj.smoothness_bound();
    sp.D = domain.diameter();
    if (const auto g = obj.lipschitz_bound()) sp.G = *g;
    if (const auto a = obj.strong_convexity()) sp.mu = sp.L / *a;
    return sp;
  }();
  const StorcCase cs = config.storc_case;
  if (variance_reduced && !config.practical_mode) {
    if (cs == StorcCase::B && p.G <= 0.0)
      throw std::invalid_argument("storc case (b): needs a Lipschitz bound");
    if (cs == StorcCase::C && p.mu <= 0.0)
      throw std::invalid_argument("storc case (c): needs strong convexity");
  }

  Trace trace;
  RngStream rng(config.seed);
  Tracer tracer{trace, obj, config.eval_every};
  Iterate w = init_w0(obj, domain, start_point(domain, config), trace.ledger,
                      &rng);
  if (config.record_iterates) trace.iterates.push_back(w);
  tracer.record(w, trace.ledger, 0, 0);

  int n_epochs = config.epochs;
  if (config.practical_mode) {
    if (config.steps < 1) throw std::invalid_argument("sliding: steps < 1");
    n_epochs = (config.steps + config.snapshot_gap - 1) / config.snapshot_gap;
  }
  if (n_epochs < 1) throw std::invalid_argument("sliding: epochs < 1");
  int global_step = 0;
  // Practical mode keeps one continuous x/y trajectory across snapshot
  // refreshes; theory mode restarts the recursion from w each epoch.
  Iterate y = w;
  Iterate x = w;
  for (int t = 1; t <= n_epochs; ++t) {
    Snapshot snap;
    if (variance_reduced)
      snap = make_snapshot(obj, config.practical_mode ? y : w, trace.ledger);
    const long long Nt =
        config.practical_mode
            ? std::min<long long>(config.snapshot_gap,
                                  config.steps - global_step)
            : schedules::storc_epoch_len(cs, t, p.mu);
    double Dt2 = p.D * p.D;
    if (!config.practical_mode && cs == StorcCase::C)
      Dt2 = std::min(Dt2, p.mu * p.D * p.D / std::pow(2.0, t - 1));
    if (!config.practical_mode) {
      y = w;
      x = w;
    }
    for (int k = 1; k <= Nt; ++k) {
      // Practical mode never resets the step counter, matching the
      // snapshot-refresh pattern of the variance-reduced fw loop.
      const int kk = config.practical_mode ? global_step + 1 : k;
      const double gamma = schedules::fw_gamma(kk);
      const double beta = schedules::storc_beta(kk, p.L);
      const Iterate z = convex_combination(y, x, gamma);
      int m;
      if (config.practical_mode) {
        m = variance_reduced
                ? config.batch
                : scaled_batch(static_cast<double>(kk) * kk * kk,
                               config.batch_multiplier);
      } else {
        m = variance_reduced
                ? scaled_batch(static_cast<double>(schedules::storc_batch(
                                   cs, t, k, Nt, p.L, p.D, p.G, p.mu)),
                               config.batch_multiplier)
                : config.batch;
      }
      const Iterate grad_est =
          variance_reduced
              ? minibatch_vr(obj, z, snap, m, rng, trace.ledger)
              : minibatch_plain(obj, z, m, rng, trace.ledger);
      SubsolveResult sub;
      if (config.practical_mode) {
        // No gap certificate: run a fixed descent budget on the prox model.
        sub = fw_subsolve(grad_est, beta, x, domain,
                          std::numeric_limits<double>::min(),
                          config.subsolve_iters, trace.ledger, &rng);
      } else {
        const double eta =
            schedules::storc_eta(static_cast<int>(Nt), k, p.L, Dt2);
        const int cap = fw_subsolve_default_max_iters(beta, p.D, eta);
        sub = fw_subsolve(grad_est, beta, x, domain, eta, cap, trace.ledger,
                          &rng);
        if (sub.not_converged) trace.any_subsolve_not_converged = true;
      }
      x = sub.x;
      y = convex_combination(y, x, gamma);
      if (config.record_iterates) trace.iterates.push_back(y);
      ++global_step;
      if (k < Nt) tracer.maybe_record(y, trace.ledger, t, k, global_step);
    }
    w = y;
    tracer.record(w, trace.ledger, t, static_cast<int>(Nt));
  }
  trace.final_iterate = w;
  return trace;
}

}  // namespace

Trace storc(const FiniteSumObjective& obj, const FeasibleDomain& domain,
            const SolverConfig& config) {
  return sliding_loop(obj, domain, config, /*variance_reduced=*/true);
}

Trace scgs(const FiniteSumObjective& obj, const FeasibleDomain& domain,
           const SolverConfig& config) {
  return sliding_loop(obj, domain, config, /*variance_reduced=*/false);
}

Trace sgd(const FiniteSumObjective& obj, const FeasibleDomain& domain,
          const SolverConfig& config) {
  if (!domain.has_projection())
    throw std::invalid_argument("sgd: domain has no projection");
  if (config.steps < 1) throw std::invalid_argument("sgd: steps < 1");
  Trace trace;
  RngStream rng(config.seed);
  Tracer tracer{trace, obj, config.eval_every};
  Iterate w = start_point(domain, config);
  if (config.record_iterates) trace.iterates.push_back(w);
  tracer.record(w, trace.ledger, 0, 0);
  for (int k = 1; k <= config.steps; ++k) {
    const Iterate g =
        minibatch_plain(obj, w, config.batch, rng, trace.ledger);
    const double rate = config.sgd_rate_c / std::sqrt(static_cast<double>(k));
    trace.ledger.projections += 1;
    w = domain.project(w - rate * g);
    if (config.record_iterates) trace.iterates.push_back(w);
    tracer.maybe_record(w, trace.ledger, 0, k, k);
  }
  trace.final_iterate = w;
  return trace;
}

Trace svrg(const FiniteSumObjective& obj, const FeasibleDomain& domain,
           const SolverConfig& config) {
  if (!domain.has_projection())
    throw std::invalid_argument("svrg: domain has no projection");
  if (config.steps < 1) throw std::invalid_argument("svrg: steps < 1");
  Trace trace;
  RngStream rng(config.seed);
  Tracer tracer{trace, obj, config.eval_every};
  Iterate w = start_point(domain, config);
  if (config.record_iterates) trace.iterates.push_back(w);
  tracer.record(w, trace.ledger, 0, 0);
  Snapshot snap = make_snapshot(obj, w, trace.ledger);
  int epoch = 1;
  for (int k = 1; k <= config.steps; ++k) {
    if (k > 1 && (k - 1) % config.snapshot_gap == 0) {
      snap = make_snapshot(obj, w, trace.ledger);
      ++epoch;
    }
    const Iterate g =
        minibatch_vr(obj, w, snap, config.batch, rng, trace.ledger);
    trace.ledger.projections += 1;
    w = domain.project(w - config.svrg_rate * g);
    if (config.record_iterates) trace.iterates.push_back(w);
    tracer.maybe_record(w, trace.ledger, epoch, k, k);
  }
  trace.final_iterate = w;
  return trace;
}

}  // namespace vrfw
