#include <doctest.h>

#include "vrfw/core.hpp"
#include "vrfw/oracles.hpp"
#include "vrfw/problems.hpp"

using namespace vrfw;

TEST_CASE("dot basic values") {
  Iterate a(2, 1), b(2, 1);
  a << 1, 2;
  b << 3, 4;
  CHECK(dot(a, b) == doctest::Approx(11.0));
  CHECK(dot(a, Iterate::Zero(2, 1)) == 0.0);
}

TEST_CASE("dot equals entrywise summation oracle on matrices") {
  RngStream rng(3);
  Iterate a(3, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = rng.next_gaussian();
  double oracle = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) oracle += a(i, j) * a(i, j);
  CHECK(dot(a, a) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(dot(a, a) == doctest::Approx(a.squaredNorm()).epsilon(1e-14));
}

TEST_CASE("dot rejects shape mismatch") {
  CHECK_THROWS_AS(dot(Iterate::Zero(2, 1), Iterate::Zero(3, 1)),
                  std::invalid_argument);
}

TEST_CASE("convex_combination endpoints and midpoint") {
  Iterate x(2, 1), v(2, 1);
  x << 0, 2;
  v << 2, 0;
  CHECK((convex_combination(x, v, 0.0) - x).norm() == 0.0);
  CHECK((convex_combination(x, v, 1.0) - v).norm() == 0.0);
  const Iterate mid = convex_combination(x, v, 0.5);
  CHECK(mid(0, 0) == doctest::Approx(1.0));
  CHECK(mid(1, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(convex_combination(x, v, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(convex_combination(x, v, -0.1), std::invalid_argument);
}

TEST_CASE("convex combinations stay feasible") {
  RngStream rng(11);
  const L2Ball l2(1.5, 4);
  const L1Ball l1(2.0, 4);
  const TraceNormBall tn(2.5, 3, 4);
  const FeasibleDomain* domains[] = {&l2, &l1, &tn};
  for (const FeasibleDomain* dom : domains) {
    for (int trial = 0; trial < 100; ++trial) {
      const Iterate x = dom->sample_point(rng);
      const Iterate v = dom->sample_point(rng);
      const double gamma = rng.next_double();
      CHECK(dom->contains(convex_combination(x, v, gamma), 1e-8));
    }
  }
}

TEST_CASE("rng stream is reproducible and in range") {
  RngStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const auto ia = a.next_index(17);
    CHECK(ia == b.next_index(17));
    CHECK(ia < 17);
  }
}

TEST_CASE("finite-sum averages match component enumeration") {
  const QuadraticProblem quad = quadratic_make(5, 3.0, 1.0, 7, 21);
  RngStream rng(5);
  Iterate w(5, 1);
  for (int j = 0; j < 5; ++j) w(j, 0) = rng.next_gaussian();
  double vsum = 0.0;
  Iterate gsum = Iterate::Zero(5, 1);
  for (int i = 0; i < quad.num_components(); ++i) {
    vsum += quad.component_value(i, w);
    gsum += quad.component_gradient(i, w);
  }
  vsum /= quad.num_components();
  gsum /= quad.num_components();
  CHECK(quad.value(w) ==
        doctest::Approx(vsum).epsilon(1e-10));
  CHECK((quad.full_gradient(w) - gsum).norm() <=
        1e-10 * (1.0 + gsum.norm()));
}
