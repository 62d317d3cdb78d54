#include "cholgrad/chol_diff.hpp"

#include <algorithm>
#include <string>

#include "cholgrad/chol_symbolic.hpp"
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

void check_inputs(const Matrix& l, const Matrix& companion, const char* what) {
  require_square(l, what);
  require_same_shape(l, companion, what);
  require_finite_lower(l, what);
  require_finite_lower(companion, what);
  for (std::size_t i = 0; i < l.rows(); ++i) {
    if (l(i, i) == 0.0) throw SingularFactorError(i + 1);
  }
}

void check_block_size(std::size_t block_size, const char* what) {
  if (block_size < 1) throw DomainError(std::string(what) + ": block size must be at least 1");
}

// Writes tril(m) + tril(m)^T (diagonal doubled) into out.
void symmetric_sum_lower(ConstMatrixView m, MatrixView out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out(i, i) = 2.0 * m(i, i);
    for (std::size_t j = 0; j < i; ++j) {
      out(i, j) = m(i, j);
      out(j, i) = m(i, j);
    }
  }
}

}  // namespace

namespace kernels {

void potf2_fwd(ConstMatrixView l, MatrixView a_dot) {
  const std::size_t n = l.rows();
  for (std::size_t j = 0; j < n; ++j) {
    auto [r, d, b, c] = level2_partition(l, j);
    auto [r_dot, d_dot, b_dot, c_dot] = level2_partition(a_dot, j);
    const double* rrow = j ? r.row(0) : nullptr;
    const double* rrow_dot = j ? r_dot.row(0) : nullptr;
    const double dj = d(0, 0);
    // d_dot <- (d_dot / 2 - r r_dot^T) / d
    const double dd = (0.5 * d_dot(0, 0) - dot(rrow, rrow_dot, j)) / dj;
    d_dot(0, 0) = dd;
    // c_dot <- (c_dot - B_dot r^T - B r_dot^T - c d_dot) / d
    for (std::size_t i = 0; i < c.rows(); ++i) {
      c_dot(i, 0) = (c_dot(i, 0) - dot(b_dot.row(i), rrow, j) -
                     dot(b.row(i), rrow_dot, j) - c(i, 0) * dd) /
                    dj;
    }
  }
}

void potf2_rev(ConstMatrixView l, MatrixView a_bar) {
  const std::size_t n = l.rows();
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t j = n - 1 - step;
    auto [r, d, b, c] = level2_partition(l, j);
    auto [r_bar, d_bar, b_bar, c_bar] = level2_partition(a_bar, j);
    const double dj = d(0, 0);
    double db = d_bar(0, 0);
    // d_bar <- d_bar - c^T c_bar / d, then [d_bar; c_bar] /= d
    double cc = 0.0;
    for (std::size_t i = 0; i < c.rows(); ++i) cc += c(i, 0) * c_bar(i, 0);
    db = (db - cc / dj) / dj;
    for (std::size_t i = 0; i < c.rows(); ++i) c_bar(i, 0) /= dj;
    // r_bar <- r_bar - [d_bar c_bar^T] [r; B],  B_bar <- B_bar - c_bar r
    if (j > 0) {
      const double* rrow = r.row(0);
      double* rbar = r_bar.row(0);
      for (std::size_t k = 0; k < j; ++k) rbar[k] -= db * rrow[k];
      for (std::size_t i = 0; i < c.rows(); ++i) {
        const double ci = c_bar(i, 0);
        const double* brow = b.row(i);
        double* bbar = b_bar.row(i);
        for (std::size_t k = 0; k < j; ++k) {
          rbar[k] -= ci * brow[k];
          bbar[k] -= ci * rrow[k];
        }
      }
    }
    d_bar(0, 0) = 0.5 * db;
  }
}

}  // namespace kernels

Matrix& chol_unblocked_fwd(const Matrix& l, Matrix& a_dot) {
  check_inputs(l, a_dot, "chol_unblocked_fwd");
  kernels::potf2_fwd(l.view(), a_dot.view());
  require_finite_lower(a_dot, "chol_unblocked_fwd result");
  return a_dot;
}

Matrix& chol_unblocked_rev(const Matrix& l, Matrix& a_bar) {
  check_inputs(l, a_bar, "chol_unblocked_rev");
  kernels::potf2_rev(l.view(), a_bar.view());
  require_finite_lower(a_bar, "chol_unblocked_rev result");
  return a_bar;
}

Matrix& chol_blocked_fwd(const Matrix& l, Matrix& a_dot, std::size_t block_size) {
  check_inputs(l, a_dot, "chol_blocked_fwd");
  check_block_size(block_size, "chol_blocked_fwd");
  const std::size_t n = l.rows();
  const std::size_t w_max = std::min(block_size, n);
  Matrix scratch(w_max, w_max);
  for (std::size_t lo = 0; lo < n; lo += block_size) {
    const std::size_t hi = std::min(n, lo + block_size);
    const std::size_t w = hi - lo;
    auto [r, d, b, c] = level3_partition(l.view(), lo, hi);
    auto [r_dot, d_dot, b_dot, c_dot] = level3_partition(a_dot.view(), lo, hi);
    MatrixView s = scratch.view().block(0, 0, w, w);
    // D_dot <- D_dot - tril(R_dot R^T + R R_dot^T)
    if (lo > 0) {
      kernels::gemm(1.0, r_dot, Trans::no, r, Trans::yes, 0.0, s);
      kernels::gemm(1.0, r, Trans::no, r_dot, Trans::yes, 1.0, s);
      kernels::subtract_lower(s, d_dot);
    }
    kernels::potf2_fwd(d, d_dot);
    if (c.empty()) continue;
    // C_dot <- C_dot - B_dot R^T - B R_dot^T
    if (lo > 0) {
      kernels::gemm(-1.0, b_dot, Trans::no, r, Trans::yes, 1.0, c_dot);
      kernels::gemm(-1.0, b, Trans::no, r_dot, Trans::yes, 1.0, c_dot);
    }
    // C_dot <- (C_dot - C D_dot^T) D^-T, with D_dot lower-triangular
    kernels::copy_lower(d_dot, s);
    kernels::gemm(-1.0, c, Trans::no, s, Trans::yes, 1.0, c_dot);
    kernels::trsm(Side::right, Uplo::lower, Trans::yes, Diag::non_unit, d, c_dot);
  }
  require_finite_lower(a_dot, "chol_blocked_fwd result");
  return a_dot;
}

Matrix& chol_blocked_rev(const Matrix& l, Matrix& a_bar, std::size_t block_size,
                         DiagonalBlockRule rule) {
  check_inputs(l, a_bar, "chol_blocked_rev");
  check_block_size(block_size, "chol_blocked_rev");
  const std::size_t n = l.rows();
  const std::size_t w_max = std::min(block_size, n);
  Matrix scratch(w_max, w_max);
  // Blocks are taken from the bottom-right corner, so a short block (if any)
  // ends up at the top-left.
  for (std::size_t hi = n; hi > 0;) {
    const std::size_t lo = hi > block_size ? hi - block_size : 0;
    const std::size_t w = hi - lo;
    auto [r, d, b, c] = level3_partition(l.view(), lo, hi);
    auto [r_bar, d_bar, b_bar, c_bar] = level3_partition(a_bar.view(), lo, hi);
    MatrixView s = scratch.view().block(0, 0, w, w);
    if (!c.empty()) {
      // C_bar <- C_bar D^-1
      kernels::trsm(Side::right, Uplo::lower, Trans::no, Diag::non_unit, d, c_bar);
      // B_bar <- B_bar - C_bar R
      if (lo > 0) kernels::gemm(-1.0, c_bar, Trans::no, r, Trans::no, 1.0, b_bar);
      // D_bar <- D_bar - tril(C_bar^T C)
      kernels::gemm(1.0, c_bar, Trans::yes, c, Trans::no, 0.0, s);
      kernels::subtract_lower(s, d_bar);
    }
    if (rule == DiagonalBlockRule::symbolic) {
      kernels::symbolic_rev_tril(d, d_bar);
    } else {
      kernels::potf2_rev(d, d_bar);
    }
    if (lo > 0) {
      // R_bar <- R_bar - C_bar^T B - (D_bar + D_bar^T) R
      if (!c.empty()) kernels::gemm(-1.0, c_bar, Trans::yes, b, Trans::no, 1.0, r_bar);
      symmetric_sum_lower(d_bar, s);
      kernels::gemm(-1.0, s, Trans::no, r, Trans::no, 1.0, r_bar);
    }
    hi = lo;
  }
  require_finite_lower(a_bar, "chol_blocked_rev result");
  return a_bar;
}

}  // namespace cholgrad
