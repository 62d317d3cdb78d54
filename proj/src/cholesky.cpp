#include "cholgrad/cholesky.hpp"

#include <algorithm>
#include <cmath>

#include "cholgrad/errors.hpp"
#include "cholgrad/kernels.hpp"
#include "cholgrad/partition.hpp"

namespace cholgrad {
namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += x[k] * y[k];
  return s;
}

void check_factor_input(const Matrix& a, const char* what) {
  require_square(a, what);
  require_finite_lower(a, what);
}

}  // namespace

namespace kernels {

std::size_t potf2(MatrixView a) {
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) {
    auto [r, d, b, c] = level2_partition(a, j);
    const double* rrow = j ? r.row(0) : nullptr;
    // d <- sqrt(d - r r^T)
    const double pivot = d(0, 0) - dot(rrow, rrow, j);
    if (!(pivot > 0.0)) return j + 1;
    const double dj = std::sqrt(pivot);
    d(0, 0) = dj;
    // c <- (c - B r^T) / d
    for (std::size_t i = 0; i < c.rows(); ++i) {
      c(i, 0) = (c(i, 0) - dot(b.row(i), rrow, j)) / dj;
    }
  }
  return 0;
}

}  // namespace kernels

Matrix& chol_unblocked(Matrix& a) {
  check_factor_input(a, "chol_unblocked");
  if (std::size_t bad = kernels::potf2(a.view())) {
    a.invalidate();
    throw NotPositiveDefiniteError(bad);
  }
  return a;
}

Matrix& chol_blocked(Matrix& a, std::size_t block_size) {
  check_factor_input(a, "chol_blocked");
  if (block_size < 1) throw DomainError("chol_blocked: block size must be at least 1");
  const std::size_t n = a.rows();
  Matrix scratch(std::min(block_size, n), std::min(block_size, n));
  for (std::size_t lo = 0; lo < n; lo += block_size) {
    const std::size_t hi = std::min(n, lo + block_size);
    auto [r, d, b, c] = level3_partition(a.view(), lo, hi);
    // D <- D - tril(R R^T); the product goes through scratch so that the
    // upper triangle of D stays untouched.
    if (lo > 0) {
      MatrixView s = scratch.view().block(0, 0, hi - lo, hi - lo);
      kernels::gemm(1.0, r, Trans::no, r, Trans::yes, 0.0, s);
      kernels::subtract_lower(s, d);
    }
    if (std::size_t bad = kernels::potf2(d)) {
      a.invalidate();
      throw NotPositiveDefiniteError(lo + bad);
    }
    if (c.empty()) continue;
    // C <- (C - B R^T) tril(D)^-T
    if (lo > 0) kernels::gemm(-1.0, b, Trans::no, r, Trans::yes, 1.0, c);
    kernels::trsm(Side::right, Uplo::lower, Trans::yes, Diag::non_unit, d, c);
  }
  return a;
}

Matrix cholesky(Matrix sigma, std::size_t block_size) {
  chol_blocked(sigma, block_size);
  for (std::size_t i = 0; i < sigma.rows(); ++i) {
    for (std::size_t j = i + 1; j < sigma.cols(); ++j) sigma(i, j) = 0.0;
  }
  return sigma;
}

}  // namespace cholgrad
