#include <doctest.h>

#include <cmath>

#include "vrfw/dataio.hpp"
#include "vrfw/problems.hpp"
#include "vrfw/solvers.hpp"

using namespace vrfw;

namespace {

// f(w) = <c, w>, a single-component linear objective.
class LinearObjective : public FiniteSumObjective {
 public:
  explicit LinearObjective(Iterate c) : c_(std::move(c)) {}
  int num_components() const override { return 1; }
  int rows() const override { return static_cast<int>(c_.rows()); }
  int cols() const override { return static_cast<int>(c_.cols()); }
  double component_value(int, const Iterate& w) const override {
    return dot(c_, w);
  }
  Iterate component_gradient(int, const Iterate&) const override {
    return c_;
  }
  double smoothness_bound() const override { return 1.0; }

 private:
  Iterate c_;
};

// Interior-optimum strongly convex quadratic with the wrapping ball.
struct InteriorSetup {
  QuadraticProblem quad;
  L2Ball ball;
  double fstar;
};

InteriorSetup interior_quadratic(std::uint64_t seed, double margin = 1.0) {
  QuadraticProblem quad = quadratic_make(10, 1.0, 0.25, 20, seed, 0.5, 0.1);
  const double r = quad.unconstrained_optimum().norm() + margin;
  quad.set_lipschitz_bound(quad.smoothness_bound() * r +
                           quad.mean_offset().norm());
  return InteriorSetup{quad, L2Ball(r, 10),
                       quad.unconstrained_optimum_value()};
}

double linreg_slope_r2(const std::vector<double>& x,
                       const std::vector<double>& y, double& r2) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double corr =
      (n * sxy - sx * sy) /
      std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  r2 = corr * corr;
  return slope;
}

}  // namespace

TEST_CASE("init_w0") {
  SUBCASE("l2 ball with f = ||w - c||^2 from x = 0") {
    Eigen::VectorXd diag(2);
    diag << 2.0, 2.0;
    Eigen::VectorXd b(2);
    b << 2.0 * 3.0, 2.0 * 4.0;  // f grad at 0 is -2c with c = (3,4)
    const QuadraticProblem quad(diag, {1.0}, {b});
    const L2Ball ball(1.5, 2);
    CostLedger ledger;
    const Iterate w0 = init_w0(quad, ball, Iterate::Zero(2, 1), ledger);
    CHECK(ledger.exact_gradients == 1);
    CHECK(ledger.lmo_calls == 1);
    // lmo(-2c) = r * c / ||c||
    CHECK(w0(0, 0) == doctest::Approx(1.5 * 3.0 / 5.0).epsilon(1e-12));
    CHECK(w0(1, 0) == doctest::Approx(1.5 * 4.0 / 5.0).epsilon(1e-12));
  }

  SUBCASE("zero gradient falls back to the degenerate vertex") {
    Eigen::VectorXd diag(2);
    diag << 1.0, 1.0;
    const QuadraticProblem quad(diag, {1.0}, {Eigen::VectorXd::Zero(2)});
    const L2Ball ball(2.0, 2);
    CostLedger ledger;
    const Iterate w0 = init_w0(quad, ball, Iterate::Zero(2, 1), ledger);
    CHECK(w0(0, 0) == doctest::Approx(2.0));
    CHECK(w0(1, 0) == doctest::Approx(0.0));
  }

  SUBCASE("l1 ball with a linear objective matches vertex enumeration") {
    RngStream rng(3);
    Iterate c(4, 1);
    for (int j = 0; j < 4; ++j) c(j, 0) = rng.next_gaussian();
    const LinearObjective lin(c);
    const L1Ball ball(1.0, 4);
    CostLedger ledger;
    const Iterate w0 = init_w0(lin, ball, ball.some_point(), ledger);
    double best = std::numeric_limits<double>::infinity();
    for (const Iterate& v : ball.vertices()) best = std::min(best, dot(c, v));
    CHECK(dot(c, w0) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("frank_wolfe accounting and envelope") {
  SUBCASE("K exact gradients and K lmo calls, no projections") {
    const auto [quad, ball, fstar] = interior_quadratic(1);
    SolverConfig cfg;
    cfg.steps = 100;
    const Trace tr = frank_wolfe(quad, ball, cfg);
    CHECK(tr.ledger.exact_gradients == 100);
    CHECK(tr.ledger.lmo_calls == 100);
    CHECK(tr.ledger.stochastic_gradients == 0);
    CHECK(tr.ledger.projections == 0);
    CHECK(tr.final_gap >= 0.0);
    // eval_every = 1: initial point plus one trace point per step
    CHECK(tr.points.size() == 101);
    for (std::size_t i = 1; i < tr.points.size(); ++i) {
      CHECK(tr.points[i].ledger.exact_gradients >
            tr.points[i - 1].ledger.exact_gradients);
      CHECK(tr.points[i].ledger.lmo_calls >
            tr.points[i - 1].ledger.lmo_calls);
    }
  }

  SUBCASE("rate envelope on a known-optimum quadratic") {
    // f(w) = ||w||^2 over the unit ball centered at (1, 0): f* = 0 at the
    // boundary point (0, 0), L = 2, D = 2.
    Eigen::VectorXd diag(2);
    diag << 2.0, 2.0;
    const QuadraticProblem quad(diag, {1.0}, {Eigen::VectorXd::Zero(2)});
    Iterate center(2, 1);
    center << 1.0, 0.0;
    const L2Ball ball(1.0, center);
    SolverConfig cfg;
    cfg.steps = 200;
    cfg.record_iterates = true;
    const Trace tr = frank_wolfe(quad, ball, cfg);
    const double L = 2.0, D = 2.0;
    for (int k = 1; k <= cfg.steps; ++k)
      CHECK(quad.value(tr.iterates[k]) <= 4.0 * L * D * D / (k + 2) + 1e-12);
  }

  SUBCASE("linear objective reaches the optimal vertex at k = 1") {
    Iterate c(3, 1);
    c << 1.0, -2.0, 0.5;
    const LinearObjective lin(c);
    const L1Ball ball(1.0, 3);
    SolverConfig cfg;
    cfg.steps = 60;
    cfg.record_iterates = true;
    const Trace tr = frank_wolfe(lin, ball, cfg);
    // gamma_1 = 1 jumps straight to the vertex
    Iterate vstar = Iterate::Zero(3, 1);
    vstar(1, 0) = 1.0;
    CHECK((tr.iterates[1] - vstar).norm() <= 1e-12);
    CHECK((tr.final_iterate - vstar).norm() <= 0.05);
    CHECK(tr.final_gap <= 0.2);
  }

  SUBCASE("identical seed gives identical traces") {
    const auto [quad, ball, fstar] = interior_quadratic(2);
    SolverConfig cfg;
    cfg.steps = 30;
    cfg.seed = 5;
    const Trace a = frank_wolfe(quad, ball, cfg);
    const Trace b = frank_wolfe(quad, ball, cfg);
    CHECK((a.final_iterate - b.final_iterate).norm() == 0.0);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i)
      CHECK(a.points[i].objective == b.points[i].objective);
  }
}

TEST_CASE("sfw") {
  SUBCASE("theory batch schedule") {
    // G = 2, L = 1, D = 2: m_k = (k+1)^2
    for (int k = 1; k <= 5; ++k)
      CHECK(schedules::sfw_batch(k, 2.0, 1.0, 2.0) ==
            static_cast<long long>((k + 1) * (k + 1)));
    // non-integer case rounds up
    CHECK(schedules::sfw_batch(1, 1.0, 1.0, 1.5) ==
          2);  // (2/1.5)^2 = 1.78 -> 2
  }

  SUBCASE("theory mode requires a Lipschitz bound") {
    const QuadraticProblem quad = quadratic_make(4, 1.0, 0.5, 6, 2);
    const L2Ball ball(1.0, 4);
    SolverConfig cfg;
    cfg.steps = 5;
    CHECK_THROWS_AS(sfw(quad, ball, cfg), std::invalid_argument);
  }

  SUBCASE("n = 1 practical mode matches exact frank_wolfe") {
    Eigen::VectorXd diag(3);
    diag << 0.5, 1.0, 2.0;
    Eigen::VectorXd b(3);
    b << 0.2, -0.1, 0.3;
    const QuadraticProblem quad(diag, {1.0}, {b});
    const L1Ball ball(1.0, 3);
    SolverConfig cfg;
    cfg.steps = 40;
    cfg.practical_mode = true;
    cfg.record_iterates = true;
    const Trace a = sfw(quad, ball, cfg);
    const Trace b_tr = frank_wolfe(quad, ball, cfg);
    REQUIRE(a.iterates.size() == b_tr.iterates.size());
    for (std::size_t i = 0; i < a.iterates.size(); ++i)
      CHECK((a.iterates[i] - b_tr.iterates[i]).norm() <= 1e-12);
  }

  SUBCASE("stochastic gradient count follows the batch schedule") {
    const auto setup = interior_quadratic(3);
    SolverConfig cfg;
    cfg.steps = 10;
    cfg.practical_mode = true;  // m_k = k^2
    const Trace tr = sfw(setup.quad, setup.ball, cfg);
    std::uint64_t expect = 0;
    for (int k = 1; k <= 10; ++k) expect += static_cast<std::uint64_t>(k) * k;
    CHECK(tr.ledger.stochastic_gradients == expect);
    CHECK(tr.ledger.lmo_calls == 10);
    CHECK(tr.ledger.exact_gradients == 0);
  }
}

TEST_CASE("svrf schedules") {
  CHECK(schedules::svrf_epoch_len(1) == 14);
  CHECK(schedules::svrf_epoch_len(2) == 30);
  CHECK(schedules::svrf_epoch_len(3) == 62);
  for (int k = 1; k <= 6; ++k) {
    CHECK(schedules::svrf_batch(k) == 96LL * (k + 1));
    CHECK(schedules::fw_gamma(k) == doctest::Approx(2.0 / (k + 1)));
  }
}

TEST_CASE("svrf theory-mode accounting") {
  const auto setup = interior_quadratic(4);
  SolverConfig cfg;
  cfg.epochs = 2;
  cfg.batch_multiplier = 1e-9;  // clamps every mini-batch to size 1
  const Trace tr = svrf(setup.quad, setup.ball, cfg);
  // 1 init gradient + 1 snapshot per epoch
  CHECK(tr.ledger.exact_gradients == 3);
  // 1 init lmo + one per inner step
  const std::uint64_t inner = 14 + 30;
  CHECK(tr.ledger.lmo_calls == 1 + inner);
  CHECK(tr.ledger.stochastic_gradients == 2 * inner);
  // last trace point is the epoch-2 boundary
  CHECK(tr.points.back().epoch == 2);
  CHECK(tr.points.back().step == 30);
}

TEST_CASE("svrf n = 1 collapses to exact frank_wolfe") {
  // L2 oracle: its vertex is continuous in the gradient, so ulp-level
  // differences between the estimator path and the closed-form gradient
  // cannot flip a near-tie the way an argmax oracle can.
  Eigen::VectorXd diag(3);
  diag << 0.5, 1.0, 2.0;
  Eigen::VectorXd b(3);
  b << 0.2, -0.1, 0.3;
  const QuadraticProblem quad(diag, {1.0}, {b});
  const L2Ball ball(1.0, 3);

  SolverConfig cfg;
  cfg.steps = 40;
  cfg.practical_mode = true;
  cfg.record_iterates = true;
  const Trace a = svrf(quad, ball, cfg);

  // frank_wolfe started at the same initialization vertex
  CostLedger scratch;
  SolverConfig fw_cfg = cfg;
  fw_cfg.x0 = init_w0(quad, ball, ball.some_point(), scratch);
  const Trace b_tr = frank_wolfe(quad, ball, fw_cfg);
  REQUIRE(a.iterates.size() == b_tr.iterates.size());
  for (std::size_t i = 0; i < a.iterates.size(); ++i)
    CHECK((a.iterates[i] - b_tr.iterates[i]).norm() <= 1e-12);
}

TEST_CASE("svrf inner-iterate envelope in theory mode") {
  // mean f(x_k) - f* within one epoch stays below 2 * 4LD^2/(k+2)
  const int seeds = 10;
  const auto setup = interior_quadratic(5);
  const double L = setup.quad.smoothness_bound();
  const double D = setup.ball.diameter();
  std::vector<double> mean_sub(15, 0.0);
  for (int s = 0; s < seeds; ++s) {
    SolverConfig cfg;
    cfg.epochs = 1;
    cfg.seed = 100 + s;
    cfg.record_iterates = true;
    const Trace tr = svrf(setup.quad, setup.ball, cfg);
    REQUIRE(tr.iterates.size() == 15);  // init vertex + N_1 = 14 steps
    for (int k = 1; k <= 14; ++k)
      mean_sub[k] += (setup.quad.value(tr.iterates[k]) - setup.fstar) / seeds;
  }
  for (int k = 1; k <= 14; ++k)
    CHECK(mean_sub[k] <= 2.0 * 4.0 * L * D * D / (k + 2));
}

TEST_CASE("fw_subsolve") {
  const L2Ball ball(1.0, 3);
  RngStream rng(7);
  Iterate grad(3, 1);
  grad << 0.4, -0.3, 0.2;
  const Iterate x_prev = Iterate::Zero(3, 1);

  SUBCASE("huge eta returns immediately") {
    CostLedger ledger;
    const SubsolveResult res =
        fw_subsolve(grad, 1.0, x_prev, ball, 1e9, 100, ledger);
    CHECK(res.iters == 1);
    CHECK(ledger.lmo_calls == 1);
    CHECK((res.x - x_prev).norm() == 0.0);
    CHECK_FALSE(res.not_converged);
  }

  SUBCASE("gap bound controls suboptimality of the quadratic model") {
    // interior minimizer x* = x_prev - grad/beta
    const double beta = 2.0, eta = 1e-6;
    CostLedger ledger;
    const SubsolveResult res = fw_subsolve(
        grad, beta, x_prev, ball, eta,
        fw_subsolve_default_max_iters(beta, ball.diameter(), eta), ledger);
    REQUIRE_FALSE(res.not_converged);
    const Iterate xstar = x_prev - grad / beta;
    REQUIRE(ball.contains(xstar, 1e-9));
    auto g = [&](const Iterate& x) {
      return 0.5 * beta * (x - x_prev).squaredNorm() + dot(grad, x);
    };
    CHECK(g(res.x) - g(xstar) <= eta + 1e-12);
    CHECK(res.gap <= eta);
  }

  SUBCASE("l1 ball: certified gap matches vertex enumeration") {
    const L1Ball l1(1.0, 4);
    const double beta = 1.0, eta = 0.05;
    for (int trial = 0; trial < 20; ++trial) {
      Iterate ge(4, 1), xp(4, 1);
      for (int j = 0; j < 4; ++j) {
        ge(j, 0) = rng.next_gaussian();
        xp(j, 0) = 0.0;
      }
      CostLedger ledger;
      const SubsolveResult res =
          fw_subsolve(ge, beta, xp, l1, eta, 100000, ledger);
      REQUIRE_FALSE(res.not_converged);
      const Iterate grad_g = beta * (res.x - xp) + ge;
      double brute = 0.0;
      for (const Iterate& v : l1.vertices())
        brute = std::max(brute, dot(grad_g, res.x - v));
      CHECK(res.gap == doctest::Approx(brute).epsilon(1e-10));
      CHECK(res.gap <= eta);
      const double D = l1.diameter();
      CHECK(res.iters <= static_cast<int>(
                             std::ceil(8.0 * beta * D * D / eta)));
    }
  }

  SUBCASE("parameter validation") {
    CostLedger ledger;
    CHECK_THROWS_AS(fw_subsolve(grad, 0.0, x_prev, ball, 1.0, 10, ledger),
                    std::invalid_argument);
    CHECK_THROWS_AS(fw_subsolve(grad, 1.0, x_prev, ball, 0.0, 10, ledger),
                    std::invalid_argument);
  }
}

TEST_CASE("sliding schedules") {
  CHECK(schedules::storc_epoch_len(StorcCase::A, 2, 0.0) == 8);
  CHECK(schedules::storc_epoch_len(StorcCase::A, 1, 0.0) == 6);
  CHECK(schedules::storc_epoch_len(StorcCase::C, 3, 4.0) == 12);
  CHECK(schedules::storc_batch(StorcCase::A, 1, 1, 8, 1, 1, 1, 0) == 7200);
  CHECK(schedules::storc_batch(StorcCase::C, 1, 1, 12, 1, 1, 1, 4.0) ==
        268800);
  // case (b): 700N + 24NG(k+1)/(LD)
  CHECK(schedules::storc_batch(StorcCase::B, 1, 3, 10, 2.0, 1.0, 0.5, 0.0) ==
        7000 + static_cast<long long>(std::ceil(24.0 * 10 * 0.5 * 4 / 2.0)));
  CHECK(schedules::storc_beta(3, 6.0) == doctest::Approx(6.0));
  CHECK(schedules::storc_eta(14, 2, 1.5, 4.0) ==
        doctest::Approx(2.0 * 1.5 * 4.0 / (14.0 * 2.0)));
}

TEST_CASE("storc n = 1 collapses to scgs") {
  Eigen::VectorXd diag(3);
  diag << 0.5, 1.0, 2.0;
  Eigen::VectorXd b(3);
  b << 0.2, -0.1, 0.3;
  const QuadraticProblem quad(diag, {1.0}, {b});
  const L2Ball ball(1.0, 3);

  SolverConfig storc_cfg;
  storc_cfg.epochs = 2;
  storc_cfg.batch_multiplier = 1e-9;  // unit batches
  storc_cfg.record_iterates = true;
  const Trace a = storc(quad, ball, storc_cfg);

  SolverConfig scgs_cfg;
  scgs_cfg.epochs = 2;
  scgs_cfg.batch = 1;
  scgs_cfg.record_iterates = true;
  const Trace b_tr = scgs(quad, ball, scgs_cfg);

  REQUIRE(a.iterates.size() == b_tr.iterates.size());
  for (std::size_t i = 0; i < a.iterates.size(); ++i)
    CHECK((a.iterates[i] - b_tr.iterates[i]).norm() <= 1e-12);
}

TEST_CASE("scgs with exact gradients converges on the quadratic") {
  Eigen::VectorXd diag(2);
  diag << 1.0, 2.0;
  const QuadraticProblem quad(diag, {1.0}, {Eigen::VectorXd::Zero(2)});
  Iterate center(2, 1);
  center << 0.5, 0.0;
  const L2Ball ball(1.0, center);  // contains w* = 0
  SolverConfig cfg;
  cfg.epochs = 5;
  cfg.batch = 1;  // n = 1: exact gradients
  const Trace tr = scgs(quad, ball, cfg);
  CHECK(quad.value(tr.final_iterate) - 0.0 <= 1e-3);
  CHECK_FALSE(tr.any_subsolve_not_converged);
}

TEST_CASE("storc case preconditions") {
  const L2Ball ball(1.0, 3);
  SUBCASE("case (c) needs strong convexity") {
    const SparseDataset ds = synth_multiclass(20, 3, 2, 1, 2.0);
    const MulticlassLogistic logit(ds);
    const TraceNormBall tball(1.0, 2, 3);
    SolverConfig cfg;
    cfg.epochs = 1;
    cfg.storc_case = StorcCase::C;
    CHECK_THROWS_AS(storc(logit, tball, cfg), std::invalid_argument);
  }
  SUBCASE("case (b) needs a Lipschitz bound") {
    const QuadraticProblem quad = quadratic_make(3, 1.0, 0.5, 4, 2);
    SolverConfig cfg;
    cfg.epochs = 1;
    cfg.storc_case = StorcCase::B;
    CHECK_THROWS_AS(storc(quad, ball, cfg), std::invalid_argument);
  }
}

TEST_CASE("sliding recombination identity") {
  // y_{s-1} = ((s+1)/(2s-1)) z_s + ((s-2)/(2s-1)) y_{s-2} for the z/y
  // recursion with gamma_k = 2/(k+1), whatever the x_k sequence is.
  RngStream rng(17);
  Iterate y_prev(4, 1), x(4, 1);
  for (int j = 0; j < 4; ++j) {
    y_prev(j, 0) = rng.next_gaussian();
    x(j, 0) = rng.next_gaussian();
  }
  std::vector<Iterate> ys = {y_prev};  // ys[k] = y_k, with y_0 given
  std::vector<Iterate> zs = {y_prev};  // zs[k] = z_k (z_0 unused)
  Iterate y = y_prev;
  for (int k = 1; k <= 12; ++k) {
    const double gamma = schedules::fw_gamma(k);
    zs.push_back(convex_combination(y, x, gamma));
    // arbitrary new x_k
    for (int j = 0; j < 4; ++j) x(j, 0) = rng.next_gaussian();
    y = convex_combination(y, x, gamma);
    ys.push_back(y);
  }
  for (int s = 2; s <= 12; ++s) {
    const Iterate lhs = ys[s - 1];
    const Iterate rhs = ((s + 1.0) / (2.0 * s - 1.0)) * zs[s] +
                        ((s - 2.0) / (2.0 * s - 1.0)) * ys[s - 2];
    CHECK((lhs - rhs).norm() <= 1e-10);
  }
}

TEST_CASE("storc theory mode certifies every subsolve gap") {
  auto setup = interior_quadratic(6);
  SolverConfig cfg;
  cfg.epochs = 2;
  cfg.storc_case = StorcCase::A;
  cfg.batch_multiplier = 0.01;
  const Trace tr = storc(setup.quad, setup.ball, cfg);
  CHECK_FALSE(tr.any_subsolve_not_converged);
  CHECK(std::isfinite(setup.quad.value(tr.final_iterate)));
}

TEST_CASE("sgd") {
  const auto setup = interior_quadratic(7);

  SUBCASE("c = 0 freezes the iterate") {
    SolverConfig cfg;
    cfg.steps = 20;
    cfg.sgd_rate_c = 0.0;
    cfg.record_iterates = true;
    const Trace tr = sgd(setup.quad, setup.ball, cfg);
    for (const Iterate& w : tr.iterates)
      CHECK((w - tr.iterates.front()).norm() == 0.0);
  }

  SUBCASE("projection count equals step count") {
    SolverConfig cfg;
    cfg.steps = 37;
    const Trace tr = sgd(setup.quad, setup.ball, cfg);
    CHECK(tr.ledger.projections == 37);
    CHECK(tr.ledger.stochastic_gradients ==
          37ULL * static_cast<std::uint64_t>(cfg.batch));
    CHECK(tr.ledger.exact_gradients == 0);
  }

  SUBCASE("rejects domains without projection") {
    const L1Ball l1(1.0, 10);
    SolverConfig cfg;
    cfg.steps = 3;
    CHECK_THROWS_AS(sgd(setup.quad, l1, cfg), std::invalid_argument);
  }

  SUBCASE("tuned rate closes most of the initial gap") {
    SolverConfig cfg;
    cfg.steps = 4000;
    cfg.sgd_rate_c = 0.5;
    cfg.seed = 3;
    const Trace tr = sgd(setup.quad, setup.ball, cfg);
    const double f0 = tr.points.front().objective;
    const double fT = setup.quad.value(tr.final_iterate);
    CHECK(fT - setup.fstar <= 0.1 * (f0 - setup.fstar));
  }
}

TEST_CASE("svrg") {
  const auto setup = interior_quadratic(8);

  SUBCASE("exact gradient count equals snapshot count") {
    SolverConfig cfg;
    cfg.steps = 120;
    cfg.snapshot_gap = 50;
    const Trace tr = svrg(setup.quad, setup.ball, cfg);
    // snapshots at steps 1, 51, 101
    CHECK(tr.ledger.exact_gradients == 3);
    CHECK(tr.ledger.projections == 120);
  }

  SUBCASE("n = 1 is projected exact gradient descent") {
    Eigen::VectorXd diag(2);
    diag << 1.0, 2.0;
    Eigen::VectorXd b(2);
    b << 0.3, 0.1;
    const QuadraticProblem quad(diag, {1.0}, {b});
    const L2Ball ball(1.0, 2);
    SolverConfig cfg;
    cfg.steps = 25;
    cfg.svrg_rate = 0.2;
    cfg.batch = 1;
    cfg.record_iterates = true;
    const Trace tr = svrg(quad, ball, cfg);
    Iterate w = ball.some_point();
    for (int k = 1; k <= 25; ++k) {
      w = ball.project(w - 0.2 * quad.full_gradient(w));
      CHECK((tr.iterates[k] - w).norm() <= 1e-12);
    }
  }

  SUBCASE("linear convergence on the strongly convex quadratic") {
    SolverConfig cfg;
    cfg.steps = 400;
    cfg.svrg_rate = 0.3;
    cfg.batch = 20;
    cfg.seed = 5;
    const Trace tr = svrg(setup.quad, setup.ball, cfg);
    std::vector<double> xs, ys;
    for (const TracePoint& p : tr.points) {
      const double sub = p.objective - setup.fstar;
      if (sub > 1e-11) {
        xs.push_back(p.step);
        ys.push_back(std::log(sub));
      }
    }
    REQUIRE(xs.size() >= 10);
    double r2 = 0.0;
    const double slope = linreg_slope_r2(xs, ys, r2);
    CHECK(slope < 0.0);
    CHECK(r2 > 0.95);
  }
}

TEST_CASE("feasibility of every recorded iterate") {
  const auto setup = interior_quadratic(9);
  const SparseDataset ds = synth_multiclass(40, 8, 3, 2, 2.0);
  const MulticlassLogistic logit(ds);
  const TraceNormBall tball(2.0, 3, 8);

  SolverConfig small;
  small.steps = 15;
  small.epochs = 1;
  small.practical_mode = true;
  small.snapshot_gap = 5;
  small.batch = 5;
  small.record_iterates = true;

  auto check_feasible = [](const Trace& tr, const FeasibleDomain& dom) {
    for (const Iterate& w : tr.iterates) CHECK(dom.contains(w, 1e-6));
    CHECK(dom.contains(tr.final_iterate, 1e-6));
  };

  check_feasible(frank_wolfe(setup.quad, setup.ball, small), setup.ball);
  check_feasible(sfw(setup.quad, setup.ball, small), setup.ball);
  check_feasible(svrf(setup.quad, setup.ball, small), setup.ball);
  check_feasible(scgs(setup.quad, setup.ball, small), setup.ball);
  check_feasible(storc(setup.quad, setup.ball, small), setup.ball);
  check_feasible(sgd(setup.quad, setup.ball, small), setup.ball);
  check_feasible(svrg(setup.quad, setup.ball, small), setup.ball);

  check_feasible(frank_wolfe(logit, tball, small), tball);
  check_feasible(svrf(logit, tball, small), tball);
  check_feasible(storc(logit, tball, small), tball);
}

TEST_CASE("identical seed gives identical sliding traces") {
  const auto setup = interior_quadratic(10);
  SolverConfig cfg;
  cfg.steps = 20;
  cfg.practical_mode = true;
  cfg.snapshot_gap = 10;
  cfg.batch = 7;
  cfg.seed = 21;
  const Trace a = storc(setup.quad, setup.ball, cfg);
  const Trace b = storc(setup.quad, setup.ball, cfg);
  CHECK((a.final_iterate - b.final_iterate).norm() == 0.0);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].objective == b.points[i].objective);
    CHECK(a.points[i].ledger.lmo_calls == b.points[i].ledger.lmo_calls);
  }
}
