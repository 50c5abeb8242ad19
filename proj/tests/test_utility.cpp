#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "vsa/utility.hpp"

using namespace vsa;
using doctest::Approx;

TEST_CASE("matrix utility on example 1 agent 2") {
  const Population pop = vsatest::example1();
  const ValueSystem& owner = pop.agents[1];

  CHECK(matrix_utility(owner, owner.matrix) == 0.0);

  DecisionMatrix bumped = owner.matrix;
  bumped(0, 0) = 7.0;  // 6 -> 7 under omega_{2,1} = 0.2
  CHECK(matrix_utility(owner, bumped) == Approx(-1.5625).epsilon(1e-12));

  // Restricted to the (PC, S) axis this is -((x - 3) / 0.4)^2; at x = 5 it is -25.
  DecisionMatrix axis = owner.matrix;
  axis(0, 2) = 5.0;
  CHECK(matrix_utility(owner, axis) == Approx(-25.0).epsilon(1e-12));
}

TEST_CASE("matrix utility gradient on example 1 agent 2") {
  const Population pop = vsatest::example1();
  const ValueSystem& owner = pop.agents[1];

  CHECK(matrix_utility_gradient(owner, owner.matrix).cwiseAbs().maxCoeff() == 0.0);

  DecisionMatrix bumped = owner.matrix;
  bumped(0, 0) = 7.0;
  const DecisionMatrix g = matrix_utility_gradient(owner, bumped);
  CHECK(g(0, 0) == Approx(-3.125).epsilon(1e-12));  // -2 / 0.64
  CHECK(g.cwiseAbs().sum() == Approx(3.125).epsilon(1e-12));
}

TEST_CASE("weight utility on example 1") {
  const Population pop = vsatest::example1();

  CHECK(weight_utility(pop.agents[0], pop.agents[0].weights) == 0.0);

  WeightVector uniform(3);
  uniform << 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;
  CHECK(weight_utility(pop.agents[0], uniform) == Approx(-0.052469135802469).epsilon(1e-9));

  CHECK(weight_utility(pop.agents[1], pop.agents[3].weights) == Approx(-0.28125).epsilon(1e-12));
}

TEST_CASE("weight utility gradient on example 1 agent 1") {
  const Population pop = vsatest::example1();
  const ValueSystem& owner = pop.agents[0];

  CHECK(weight_utility_gradient(owner, owner.weights).cwiseAbs().maxCoeff() == 0.0);

  WeightVector uniform(3);
  uniform << 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;
  const WeightVector g = weight_utility_gradient(owner, uniform);
  CHECK(g(0) == Approx(10.0 / 27.0).epsilon(1e-12));   // 0.37037
  CHECK(g(1) == Approx(10.0 / 27.0).epsilon(1e-12));
  CHECK(g(2) == Approx(-5.0 / 12.0).epsilon(1e-12));   // -0.41667
}

TEST_CASE("gradients match central finite differences on random inputs") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> entry(1.0, 7.0);
  const Population pop = vsatest::example1();
  for (int trial = 0; trial < 50; ++trial) {
    const ValueSystem& owner = pop.agents[trial % 4];
    DecisionMatrix candidate(2, 3);
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 3; ++j) candidate(k, j) = entry(rng);
    const DecisionMatrix g = matrix_utility_gradient(owner, candidate);
    auto f = [&owner](const DecisionMatrix& m) { return matrix_utility(owner, m); };
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 3; ++j) {
        const double fd = vsatest::central_difference(f, candidate, k, j, 1e-5);
        CHECK(std::abs(g(k, j) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
      }

    WeightVector wc = vsatest::random_simplex(rng, 3);
    const WeightVector gw = weight_utility_gradient(owner, wc);
    auto fw = [&owner](const WeightVector& w) { return weight_utility(owner, w); };
    for (int j = 0; j < 3; ++j) {
      const double fd = vsatest::central_difference_vec(fw, wc, j, 1e-6);
      CHECK(std::abs(gw(j) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("utilities are nonpositive and decrease along rays") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> dir(-1.0, 1.0);
  const Population pop = vsatest::example1();
  for (const ValueSystem& owner : pop.agents) {
    DecisionMatrix d(2, 3);
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 3; ++j) d(k, j) = dir(rng);
    REQUIRE(d.norm() > 0.0);
    double prev = 0.0;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double u = matrix_utility(owner, owner.matrix + t * d);
      CHECK(u < prev);
      prev = u;
    }
  }
}

TEST_CASE("higher weight means steeper utility drop at the same entry") {
  // Agents 2 and 3 both evaluate (PC, S) at 3, but omega_{2,3} = 0.6 > omega_{3,3} = 0.3,
  // so the same perturbation costs agent 2 more.
  const Population pop = vsatest::example1();
  const ValueSystem& heavy = pop.agents[1];
  const ValueSystem& light = pop.agents[2];
  REQUIRE(heavy.matrix(0, 2) == light.matrix(0, 2));

  for (double delta : {0.5, 1.0, 2.0}) {
    DecisionMatrix ch = heavy.matrix, cl = light.matrix;
    ch(0, 2) += delta;
    cl(0, 2) += delta;
    const double drop_heavy = -matrix_utility(heavy, ch);
    const double drop_light = -matrix_utility(light, cl);
    CHECK(drop_heavy > drop_light);
  }
}

TEST_CASE("owner weights at 1 are rejected") {
  Population pop = vsatest::example1();
  pop.agents[0].weights << 1.0, 0.0, 0.0;  // invalid owner; utility must refuse
  CHECK_THROWS_AS(matrix_utility(pop.agents[0], pop.agents[0].matrix), std::invalid_argument);
  CHECK_THROWS_AS(weight_utility(pop.agents[0], pop.agents[0].weights), std::invalid_argument);
}

TEST_CASE("shape mismatches are rejected") {
  const Population pop = vsatest::example1();
  DecisionMatrix wrong(3, 3);
  wrong.setZero();
  CHECK_THROWS_AS(matrix_utility(pop.agents[0], wrong), std::invalid_argument);
  WeightVector short_w(2);
  short_w << 0.5, 0.5;
  CHECK_THROWS_AS(weight_utility_gradient(pop.agents[0], short_w), std::invalid_argument);
}
