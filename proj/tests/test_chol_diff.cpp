#include <limits>

#include "cholgrad/bench.hpp"
#include "cholgrad/chol_diff.hpp"
#include "cholgrad/chol_symbolic.hpp"
#include "cholgrad/dense.hpp"
#include "cholgrad/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cholgrad;
namespace t = cholgrad::testing;

namespace {

Matrix fwd_unblocked(const Matrix& l, Matrix s) { return chol_unblocked_fwd(l, s); }
Matrix fwd_blocked(const Matrix& l, Matrix s, std::size_t nb) { return chol_blocked_fwd(l, s, nb); }
Matrix rev_unblocked(const Matrix& l, Matrix s) { return chol_unblocked_rev(l, s); }
Matrix rev_blocked(const Matrix& l, Matrix s, std::size_t nb,
                   DiagonalBlockRule rule = DiagonalBlockRule::symbolic) {
  return chol_blocked_rev(l, s, nb, rule);
}

struct Problem {
  Matrix sigma;
  Matrix l;
  Matrix sigma_dot;  // symmetric
  Matrix l_bar;      // lower triangular
};

Problem make_problem(std::size_t n, std::uint64_t seed) {
  Problem p;
  p.sigma = random_spd(n, seed);
  p.l = t::naive_cholesky(p.sigma);
  p.sigma_dot = random_symmetric(n, seed + 1000);
  p.l_bar = random_lower(n, seed + 2000);
  return p;
}

}  // namespace

TEST_CASE("scalar cases") {
  const Matrix l{{2}};
  CHECK(fwd_unblocked(l, Matrix{{1}}) == Matrix{{0.25}});
  CHECK(fwd_blocked(l, Matrix{{1}}, 4) == Matrix{{0.25}});
  CHECK(rev_unblocked(l, Matrix{{1}}) == Matrix{{0.25}});
  CHECK(rev_blocked(l, Matrix{{1}}, 4) == Matrix{{0.25}});
}

TEST_CASE("zero sensitivities stay zero") {
  const Problem p = make_problem(9, 1);
  const Matrix zero(9, 9);
  CHECK(fwd_unblocked(p.l, zero) == zero);
  CHECK(fwd_blocked(p.l, zero, 4) == zero);
  CHECK(rev_unblocked(p.l, zero) == zero);
  CHECK(rev_blocked(p.l, zero, 4) == zero);
}

TEST_CASE("2x2 forward example") {
  // Sigma = [[4, 2], [2, 5]], L = [[2, 0], [1, 2]]. Differentiating
  // L11 = sqrt(S11), L21 = S21 / L11, L22 = sqrt(S22 - L21^2) along the
  // all-ones direction by hand gives 1/4, 3/8 and 1/16.
  const Matrix l{{2, 0}, {1, 2}};
  const Matrix expected{{0.25, 0}, {0.375, 0.0625}};
  const Matrix ones{{1, 1}, {1, 1}};
  CHECK(t::max_abs_diff_lower(fwd_unblocked(l, ones), expected) <= 1e-15);
  CHECK(t::max_abs_diff_lower(fwd_blocked(l, ones, 1), expected) <= 1e-15);

  const Matrix fd = t::fd_forward(Matrix{{4, 2}, {2, 5}}, ones, 1e-6);
  CHECK(t::max_abs_diff_lower(fd, expected) <= 1e-8);
}

TEST_CASE("forward mode matches finite differences") {
  for (std::size_t n = 1; n <= 20; ++n) {
    const Problem p = make_problem(n, 10 + n);
    const double h = 1e-6 * max_abs(p.sigma);
    const Matrix fd = t::fd_forward(p.sigma, p.sigma_dot, h);
    const Matrix a = fwd_unblocked(p.l, p.sigma_dot);
    const Matrix b = fwd_blocked(p.l, p.sigma_dot, 3);
    const double tol = 1e-5 * std::max(1.0, max_abs_lower(a));
    CHECK(t::max_abs_diff_lower(a, fd) <= tol);
    CHECK(t::max_abs_diff_lower(b, fd) <= tol);
  }
}

TEST_CASE("blocked variants reduce to the unblocked ones") {
  for (std::size_t n : {1u, 6u, 13u}) {
    const Problem p = make_problem(n, 50 + n);
    const Matrix fu = fwd_unblocked(p.l, p.sigma_dot);
    const Matrix ru = rev_unblocked(p.l, p.l_bar);
    CHECK(t::rel_diff_lower(fwd_blocked(p.l, p.sigma_dot, 1), fu) <= 1e-13);
    CHECK(t::rel_diff_lower(fwd_blocked(p.l, p.sigma_dot, n), fu) <= 1e-13);
    CHECK(t::rel_diff_lower(fwd_blocked(p.l, p.sigma_dot, n + 3), fu) <= 1e-13);
    CHECK(t::rel_diff_lower(rev_blocked(p.l, p.l_bar, 1), ru) <= 1e-13);
    CHECK(t::rel_diff_lower(rev_blocked(p.l, p.l_bar, n + 3, DiagonalBlockRule::unblocked), ru) <=
          1e-13);
  }
}

TEST_CASE("blocked variants are block-size invariant") {
  for (std::size_t n : {5u, 12u, 40u}) {
    const Problem p = make_problem(n, 70 + n);
    const Matrix fref = fwd_unblocked(p.l, p.sigma_dot);
    const Matrix rref = rev_unblocked(p.l, p.l_bar);
    for (std::size_t nb : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{7},
                           n - 1, n, n + 5}) {
      CAPTURE(n);
      CAPTURE(nb);
      CHECK(t::rel_diff_lower(fwd_blocked(p.l, p.sigma_dot, nb), fref) <= 1e-12);
      CHECK(t::rel_diff_lower(rev_blocked(p.l, p.l_bar, nb), rref) <= 1e-12);
      CHECK(t::rel_diff_lower(rev_blocked(p.l, p.l_bar, nb, DiagonalBlockRule::unblocked), rref) <=
            1e-12);
    }
  }

  SUBCASE("different block boundaries in reverse mode") {
    const Problem p = make_problem(5, 99);
    CHECK(t::rel_diff_lower(rev_blocked(p.l, p.l_bar, 2), rev_blocked(p.l, p.l_bar, 3)) <= 1e-12);
  }
}

TEST_CASE("forward and reverse modes satisfy the dot-product identity") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint64_t k = 0; k < 5; ++k) {
      const Problem p = make_problem(n, 100 * n + k);
      const Matrix l_dot = fwd_unblocked(p.l, p.sigma_dot);
      const Matrix s_bar = rev_unblocked(p.l, p.l_bar);
      const double lhs = t::dot_lower(s_bar, p.sigma_dot);
      const double rhs = t::dot_lower(p.l_bar, l_dot);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(std::abs(lhs), std::abs(rhs)));
    }
  }
}

TEST_CASE("linearity in the sensitivity") {
  const std::size_t n = 17;
  const Problem p = make_problem(n, 5);
  const Matrix s2 = random_symmetric(n, 6);
  const Matrix b2 = random_lower(n, 7);
  const double alpha = 0.75, beta = -2.5;
  const Matrix s_comb = alpha * p.sigma_dot + beta * s2;
  const Matrix b_comb = alpha * p.l_bar + beta * b2;

  CHECK(t::rel_diff_lower(fwd_unblocked(p.l, s_comb),
                          alpha * fwd_unblocked(p.l, p.sigma_dot) + beta * fwd_unblocked(p.l, s2)) <=
        1e-12);
  CHECK(t::rel_diff_lower(fwd_blocked(p.l, s_comb, 4),
                          alpha * fwd_blocked(p.l, p.sigma_dot, 4) + beta * fwd_blocked(p.l, s2, 4)) <=
        1e-12);
  CHECK(t::rel_diff_lower(rev_unblocked(p.l, b_comb),
                          alpha * rev_unblocked(p.l, p.l_bar) + beta * rev_unblocked(p.l, b2)) <=
        1e-12);
  CHECK(t::rel_diff_lower(rev_blocked(p.l, b_comb, 4),
                          alpha * rev_blocked(p.l, p.l_bar, 4) + beta * rev_blocked(p.l, b2, 4)) <=
        1e-12);
}

TEST_CASE("algorithmic routines agree with the symbolic rules") {
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 33u, 64u, 65u}) {
    CAPTURE(n);
    const Problem p = make_problem(n, 300 + n);
    const Matrix fsym = chol_fwd_symbolic(p.l, p.sigma_dot);
    const Matrix rsym = chol_rev_symbolic_tril(p.l, p.l_bar);
    CHECK(t::rel_diff_lower(fwd_unblocked(p.l, p.sigma_dot), fsym) <= 1e-11);
    CHECK(t::rel_diff_lower(fwd_blocked(p.l, p.sigma_dot, 8), fsym) <= 1e-11);
    CHECK(t::rel_diff_lower(rev_unblocked(p.l, p.l_bar), rsym) <= 1e-11);
    CHECK(t::rel_diff_lower(rev_blocked(p.l, p.l_bar, 8), rsym) <= 1e-11);
  }
}

TEST_CASE("only the lower triangles of the inputs are read") {
  const Problem p = make_problem(11, 8);
  Matrix l_poisoned = p.l;
  Matrix s_poisoned = p.sigma_dot;
  Matrix b_poisoned = p.l_bar;
  for (std::size_t i = 0; i < 11; ++i) {
    for (std::size_t j = i + 1; j < 11; ++j) {
      l_poisoned(i, j) = std::numeric_limits<double>::quiet_NaN();
      s_poisoned(i, j) = std::numeric_limits<double>::quiet_NaN();
      b_poisoned(i, j) = std::numeric_limits<double>::quiet_NaN();
    }
  }
  CHECK(t::max_abs_diff_lower(fwd_unblocked(l_poisoned, s_poisoned), fwd_unblocked(p.l, p.sigma_dot)) == 0.0);
  CHECK(t::max_abs_diff_lower(fwd_blocked(l_poisoned, s_poisoned, 4), fwd_blocked(p.l, p.sigma_dot, 4)) == 0.0);
  CHECK(t::max_abs_diff_lower(rev_unblocked(l_poisoned, b_poisoned), rev_unblocked(p.l, p.l_bar)) == 0.0);
  CHECK(t::max_abs_diff_lower(rev_blocked(l_poisoned, b_poisoned, 4), rev_blocked(p.l, p.l_bar, 4)) == 0.0);
}

TEST_CASE("error paths") {
  const Matrix l{{2, 0}, {1, 2}};
  Matrix wrong(3, 3);
  CHECK_THROWS_AS(chol_unblocked_fwd(l, wrong), DimensionError);
  CHECK_THROWS_AS(chol_unblocked_rev(l, wrong), DimensionError);
  CHECK_THROWS_AS(chol_blocked_fwd(l, wrong, 2), DimensionError);
  CHECK_THROWS_AS(chol_blocked_rev(l, wrong, 2), DimensionError);

  Matrix s{{1, 0}, {1, 1}};
  CHECK_THROWS_AS(chol_blocked_fwd(l, s, 0), DomainError);
  CHECK_THROWS_AS(chol_blocked_rev(l, s, 0), DomainError);

  const Matrix singular{{2, 0}, {1, 0}};
  try {
    chol_unblocked_fwd(singular, s);
    FAIL("expected SingularFactorError");
  } catch (const SingularFactorError& e) {
    CHECK(e.index() == 2);
  }
  CHECK_THROWS_AS(chol_unblocked_rev(singular, s), SingularFactorError);
  CHECK_THROWS_AS(chol_blocked_fwd(singular, s, 1), SingularFactorError);
  CHECK_THROWS_AS(chol_blocked_rev(singular, s, 1), SingularFactorError);
}
