#include "vrfw/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "vrfw/dataio.hpp"
#include "vrfw/oracles.hpp"

namespace vrfw {

std::string trace_csv_header() {
  return "seed,epoch,inner_step,exact_grads,stochastic_grads,lmo_calls,"
         "projections,wall_time_s,objective";
}

std::string to_csv(const TraceFile& trace) {
  std::string out = trace_csv_header() + "\n";
  char buf[256];
  for (const TraceRow& r : trace.rows) {
    std::snprintf(buf, sizeof(buf),
                  "%llu,%d,%d,%llu,%llu,%llu,%llu,%.12g,%.12g\n",
                  static_cast<unsigned long long>(r.seed), r.epoch,
                  r.inner_step, static_cast<unsigned long long>(r.exact_grads),
                  static_cast<unsigned long long>(r.stochastic_grads),
                  static_cast<unsigned long long>(r.lmo_calls),
                  static_cast<unsigned long long>(r.projections),
                  r.wall_time_s, r.objective);
    out += buf;
  }
  return out;
}

TraceFile parse_trace_csv(std::istream& in) {
  TraceFile tf;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("trace csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != trace_csv_header())
    throw std::runtime_error("trace csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TraceRow r;
    unsigned long long seed, eg, sg, lc, pj;
    if (std::sscanf(line.c_str(), "%llu,%d,%d,%llu,%llu,%llu,%llu,%lf,%lf",
                    &seed, &r.epoch, &r.inner_step, &eg, &sg, &lc, &pj,
                    &r.wall_time_s, &r.objective) != 9)
      throw std::runtime_error("trace csv: malformed row: " + line);
    r.seed = seed;
    r.exact_grads = eg;
    r.stochastic_grads = sg;
    r.lmo_calls = lc;
    r.projections = pj;
    tf.rows.push_back(r);
  }
  return tf;
}

TraceFile parse_trace_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return parse_trace_csv(in);
}

Instance make_instance(const RunSpec& spec) {
  Instance inst;
  inst.fstar_reference = std::numeric_limits<double>::quiet_NaN();

  std::shared_ptr<QuadraticProblem> quad;
  if (spec.problem == "quadratic") {
    quad = std::make_shared<QuadraticProblem>(
        quadratic_make(spec.quad_dim, spec.quad_l, spec.quad_alpha,
                       spec.quad_n, spec.quad_seed));
    inst.objective = quad;
  } else if (spec.problem == "logistic") {
    if (spec.dataset_path.empty())
      throw std::invalid_argument("logistic problem needs a dataset path");
    inst.objective = std::make_shared<MulticlassLogistic>(
        parse_dataset_file(spec.dataset_path));
  } else if (spec.problem == "synth") {
    inst.objective = std::make_shared<MulticlassLogistic>(
        synth_multiclass(spec.synth_n, spec.synth_m, spec.synth_h,
                         spec.synth_seed, spec.synth_separability));
  } else {
    throw std::invalid_argument("unknown problem: " + spec.problem);
  }

  const int h = inst.objective->rows();
  const int m = inst.objective->cols();
  if (spec.domain == "l2") {
    if (m != 1)
      throw std::invalid_argument("l2 domain expects a vector problem");
    auto ball = std::make_shared<L2Ball>(spec.domain_radius, h);
    inst.domain = ball;
    if (quad) {
      const Iterate& wstar = quad->unconstrained_optimum();
      if (ball->contains(wstar, 0.0))
        inst.fstar_reference = quad->unconstrained_optimum_value();
      // Lipschitz bound over the ball: max_i ||c_i diag w - b_i||.
      double g = 0.0;
      const double reach = ball->radius() + ball->center().norm();
      g = quad->smoothness_bound() * reach;
      double bmax = 0.0;
      for (int i = 0; i < quad->num_components(); ++i) {
        const Iterate gi =
            quad->component_gradient(i, Iterate::Zero(h, 1));
        bmax = std::max(bmax, gi.norm());
      }
      quad->set_lipschitz_bound(g + bmax);
    }
  } else if (spec.domain == "l1") {
    if (m != 1)
      throw std::invalid_argument("l1 domain expects a vector problem");
    inst.domain = std::make_shared<L1Ball>(spec.domain_radius, h);
  } else if (spec.domain == "trace") {
    inst.domain = std::make_shared<TraceNormBall>(spec.domain_radius, h, m);
  } else {
    throw std::invalid_argument("unknown domain: " + spec.domain);
  }
  return inst;
}

Trace run_solver(const std::string& solver, const FiniteSumObjective& obj,
                 const FeasibleDomain& domain, const SolverConfig& config) {
  if (solver == "fw") return frank_wolfe(obj, domain, config);
  if (solver == "sfw") return sfw(obj, domain, config);
  if (solver == "svrf") return svrf(obj, domain, config);
  if (solver == "scgs") return scgs(obj, domain, config);
  if (solver == "storc") return storc(obj, domain, config);
  if (solver == "sgd") return sgd(obj, domain, config);
  if (solver == "svrg") return svrg(obj, domain, config);
  throw std::invalid_argument("unknown solver: " + solver);
}

RunResult run(const RunSpec& spec) {
  if (spec.seeds.empty())
    throw std::invalid_argument("run: at least one seed required");
  const Instance inst = make_instance(spec);
  if ((spec.solver == "sgd" || spec.solver == "svrg") &&
      !inst.domain->has_projection())
    throw std::invalid_argument(spec.solver +
                                " requires a projectable domain");
  RunResult result;
  result.fstar_reference = inst.fstar_reference;
  std::vector<double> finals;
  for (std::uint64_t seed : spec.seeds) {
    SolverConfig cfg = spec.config;
    cfg.seed = seed;
    const Trace trace =
        run_solver(spec.solver, *inst.objective, *inst.domain, cfg);
    for (const TracePoint& p : trace.points) {
      if (!std::isfinite(p.objective))
        throw NumericalError("non-finite objective in trace");
      TraceRow row;
      row.seed = seed;
      row.epoch = p.epoch;
      row.inner_step = p.step;
      row.exact_grads = p.ledger.exact_gradients;
      row.stochastic_grads = p.ledger.stochastic_gradients;
      row.lmo_calls = p.ledger.lmo_calls;
      row.projections = p.ledger.projections;
      row.wall_time_s = spec.zero_wall_time ? 0.0 : p.ledger.wall_time;
      row.objective = p.objective;
      result.trace.rows.push_back(row);
    }
    finals.push_back(trace.points.back().objective);
    if (trace.any_subsolve_not_converged && !spec.config.practical_mode)
      throw NumericalError("fw_subsolve failed to certify its gap");
  }
  double mean = 0.0;
  for (double f : finals) mean += f;
  mean /= finals.size();
  double var = 0.0;
  for (double f : finals) var += (f - mean) * (f - mean);
  result.final_objective_mean = mean;
  result.final_objective_std =
      finals.size() > 1 ? std::sqrt(var / (finals.size() - 1)) : 0.0;
  return result;
}

std::vector<std::pair<double, double>> cost_curve(
    const TraceFile& trace, const std::string& cost_column,
    std::uint64_t seed) {
  std::vector<std::pair<double, double>> curve;
  for (const TraceRow& r : trace.rows) {
    if (r.seed != seed) continue;
    double cost;
    if (cost_column == "exact_grads")
      cost = static_cast<double>(r.exact_grads);
    else if (cost_column == "stochastic_grads")
      cost = static_cast<double>(r.stochastic_grads);
    else if (cost_column == "lmo_calls")
      cost = static_cast<double>(r.lmo_calls);
    else if (cost_column == "projections")
      cost = static_cast<double>(r.projections);
    else if (cost_column == "wall_time_s")
      cost = r.wall_time_s;
    else
      throw std::invalid_argument("unknown cost column: " + cost_column);
    curve.emplace_back(cost, r.objective);
  }
  return curve;
}

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  LineFit fit;
  if (n < 2) return fit;
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace

RateFit rate_fit(const std::vector<std::pair<double, double>>& cost_objective,
                 double fstar, const std::vector<double>& target_accuracies) {
  RateFit out;
  std::vector<double> log_inv_eps, log_cost, cost_lin;
  for (double eps : target_accuracies) {
    RateHit hit;
    hit.eps = eps;
    for (const auto& [cost, obj] : cost_objective) {
      if (obj - fstar <= eps) {
        hit.cost = cost;
        hit.reached = true;
        break;
      }
    }
    out.hits.push_back(hit);
    if (hit.reached) {
      log_inv_eps.push_back(std::log10(1.0 / eps));
      log_cost.push_back(std::log10(std::max(1.0, hit.cost)));
      cost_lin.push_back(hit.cost);
    }
  }
  const LineFit ll = least_squares(log_inv_eps, log_cost);
  out.loglog_slope = ll.slope;
  out.loglog_r2 = ll.r2;
  const LineFit sl = least_squares(log_inv_eps, cost_lin);
  out.semilog_slope = sl.slope;
  out.semilog_r2 = sl.r2;
  return out;
}

std::string schedule_table(const std::string& solver, double L, double D,
                           double G, double mu, StorcCase storc_case,
                           int t_max, int k_max) {
  std::ostringstream os;
  char buf[256];
  if (solver == "svrf") {
    os << "svrf schedule: gamma_k = 2/(k+1), m_k = 96(k+1), N_t = 2^(t+3)-2\n";
    os << "t N_t\n";
    for (int t = 1; t <= t_max; ++t)
      os << t << " " << schedules::svrf_epoch_len(t) << "\n";
    os << "k gamma_k m_k\n";
    for (int k = 1; k <= k_max; ++k) {
      std::snprintf(buf, sizeof(buf), "%d %.12g %lld\n", k,
                    schedules::fw_gamma(k), schedules::svrf_batch(k));
      os << buf;
    }
  } else if (solver == "sfw") {
    os << "sfw schedule: gamma_k = 2/(k+1), m_k = ceil((G(k+1)/(LD))^2)\n";
    os << "k gamma_k m_k\n";
    for (int k = 1; k <= k_max; ++k) {
      std::snprintf(buf, sizeof(buf), "%d %.12g %lld\n", k,
                    schedules::fw_gamma(k),
                    schedules::sfw_batch(k, G, L, D));
      os << buf;
    }
  } else if (solver == "storc" || solver == "scgs") {
    const char cname = storc_case == StorcCase::A   ? 'a'
                       : storc_case == StorcCase::B ? 'b'
                                                    : 'c';
    os << solver << " schedule (case " << cname
       << "): gamma_k = 2/(k+1), beta_k = 3L/k, eta_tk = 2LD_t^2/(N_t k)\n";
    os << "t N_t m_t1 D_t^2\n";
    for (int t = 1; t <= t_max; ++t) {
      const long long Nt = schedules::storc_epoch_len(storc_case, t, mu);
      double Dt2 = D * D;
      if (storc_case == StorcCase::C)
        Dt2 = std::min(Dt2, mu * D * D / std::pow(2.0, t - 1));
      const long long m =
          solver == "storc"
              ? schedules::storc_batch(storc_case, t, 1, Nt, L, D, G, mu)
              : 0;
      std::snprintf(buf, sizeof(buf), "%d %lld %lld %.12g\n", t, Nt, m, Dt2);
      os << buf;
    }
    os << "k gamma_k beta_k\n";
    for (int k = 1; k <= k_max; ++k) {
      std::snprintf(buf, sizeof(buf), "%d %.12g %.12g\n", k,
                    schedules::fw_gamma(k), schedules::storc_beta(k, L));
      os << buf;
    }
  } else {
    throw std::invalid_argument("no schedule table for solver: " + solver);
  }
  return os.str();
}

}  // namespace vrfw
