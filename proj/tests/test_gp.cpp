#include <cmath>
#include <limits>
#include <numbers>

#include "cholgrad/errors.hpp"
#include "cholgrad/gp.hpp"
#include "doctest.h"

using namespace cholgrad;

TEST_CASE("demo problem") {
  const GPProblem p = make_demo_problem(50, 0);
  CHECK(p.inputs.rows() == 50);
  CHECK(p.inputs.cols() == 1);
  CHECK(p.targets.size() == 50);
  CHECK(p.inputs(0, 0) == 0.0);
  CHECK(p.inputs(49, 0) == 5.0);
  CHECK(make_demo_problem(50, 0).targets == p.targets);
  CHECK_FALSE(make_demo_problem(50, 1).targets == p.targets);
  CHECK_THROWS_AS(make_demo_problem(1, 0), DomainError);
}

TEST_CASE("log likelihood of a single point") {
  // One observation y with variance s = sf2 + noise: -y^2/(2s) - log(2 pi s)/2.
  GPProblem p;
  p.inputs = Matrix{{0.3}};
  p.targets = {1.2};
  p.hyper = {std::log(2.0), std::log(0.7), std::log(0.1)};
  const double s = 0.8;
  const double expected = -1.2 * 1.2 / (2 * s) - 0.5 * std::log(2 * std::numbers::pi * s);
  CHECK(gp_loglik(p) == doctest::Approx(expected).epsilon(1e-14));
  // d/d log(sf2) = sf2 * (y^2/(2 s^2) - 1/(2 s)), likewise for the noise.
  const auto g = gp_loglik_gradient(p, ReverseMethod::unblocked).gradient;
  const double common = 1.2 * 1.2 / (2 * s * s) - 1 / (2 * s);
  CHECK(g[0] == doctest::Approx(0.0));
  CHECK(g[1] == doctest::Approx(0.7 * common).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(0.1 * common).epsilon(1e-12));
}

TEST_CASE("gradient matches finite differences for every reverse method") {
  const GPProblem p = make_demo_problem(50, 0);
  const auto fd = gp_fd_gradient(p);
  for (ReverseMethod m : kAllReverseMethods) {
    CAPTURE(to_string(m));
    const LogLikelihood ll = gp_loglik_gradient(p, m);
    CHECK(ll.value == doctest::Approx(gp_loglik(p)).epsilon(1e-13));
    CHECK(max_relative_error(ll.gradient, fd) <= 1e-5);
  }
}

TEST_CASE("reverse methods agree with each other") {
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    GPProblem p = make_demo_problem(70, seed);
    p.hyper.log_lengthscale += 0.1 * static_cast<double>(seed);
    const auto a = gp_loglik_gradient(p, ReverseMethod::unblocked).gradient;
    const auto b = gp_loglik_gradient(p, ReverseMethod::blocked).gradient;
    const auto c = gp_loglik_gradient(p, ReverseMethod::symbolic).gradient;
    CHECK(max_relative_error(a, b) <= 1e-10);
    CHECK(max_relative_error(a, c) <= 1e-10);
  }
}

TEST_CASE("log likelihood is invariant to joint permutation") {
  const GPProblem p = make_demo_problem(30, 3);
  GPProblem q = p;
  for (std::size_t i = 0; i < 30; ++i) {
    const std::size_t k = (7 * i + 4) % 30;
    q.inputs(i, 0) = p.inputs(k, 0);
    q.targets[i] = p.targets[k];
  }
  CHECK(gp_loglik(q) == doctest::Approx(gp_loglik(p)).epsilon(1e-12));
  const auto gp = gp_loglik_gradient(p).gradient;
  const auto gq = gp_loglik_gradient(q).gradient;
  CHECK(max_relative_error(gp, gq) <= 1e-10);
}

TEST_CASE("errors") {
  GPProblem p = make_demo_problem(10, 0);
  p.targets.pop_back();
  CHECK_THROWS_AS(gp_loglik(p), DimensionError);

  // Duplicate inputs with no noise give a singular kernel matrix.
  GPProblem dup;
  dup.inputs = Matrix{{1.0}, {1.0}};
  dup.targets = {0.0, 0.0};
  dup.hyper = {0.0, 0.0, -std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(gp_loglik_gradient(dup), NotPositiveDefiniteError);

  CHECK(max_relative_error({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(max_relative_error({0, 0, 0}, {0, 0, 0}) == 0.0);
  CHECK(max_relative_error({1, 0, 0}, {2, 0, 0}) == 0.5);
}
