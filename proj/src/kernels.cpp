#include "cholgrad/kernels.hpp"

#include <algorithm>
#include <vector>

namespace cholgrad::kernels {
namespace {

// Register tile and cache blocking for the packed product.
constexpr std::size_t kMR = 4;
constexpr std::size_t kNR = 8;
constexpr std::size_t kMC = 128;
constexpr std::size_t kKC = 256;
constexpr std::size_t kNC = 2048;

inline double op_at(ConstMatrixView m, Trans t, std::size_t i, std::size_t j) {
  return t == Trans::no ? m(i, j) : m(j, i);
}

// Packs op(a)[i0:i0+mc, p0:p0+kc] into kMR-row panels, k-major within a
// panel. Rows past mc are zero-filled.
void pack_a(ConstMatrixView a, Trans ta, std::size_t i0, std::size_t mc,
            std::size_t p0, std::size_t kc, double* buf) {
  for (std::size_t ir = 0; ir < mc; ir += kMR) {
    const std::size_t mr = std::min(kMR, mc - ir);
    if (ta == Trans::no) {
      for (std::size_t ii = 0; ii < kMR; ++ii) {
        if (ii < mr) {
          const double* src = a.row(i0 + ir + ii) + p0;
          for (std::size_t p = 0; p < kc; ++p) buf[p * kMR + ii] = src[p];
        } else {
          for (std::size_t p = 0; p < kc; ++p) buf[p * kMR + ii] = 0.0;
        }
      }
    } else {
      for (std::size_t p = 0; p < kc; ++p) {
        const double* src = a.row(p0 + p) + i0 + ir;
        for (std::size_t ii = 0; ii < kMR; ++ii) {
          buf[p * kMR + ii] = ii < mr ? src[ii] : 0.0;
        }
      }
    }
    buf += kc * kMR;
  }
}

// Packs op(b)[p0:p0+kc, j0:j0+nc] into kNR-column panels, k-major within a
// panel. Columns past nc are zero-filled.
void pack_b(ConstMatrixView b, Trans tb, std::size_t p0, std::size_t kc,
            std::size_t j0, std::size_t nc, double* buf) {
  for (std::size_t jr = 0; jr < nc; jr += kNR) {
    const std::size_t nr = std::min(kNR, nc - jr);
    if (tb == Trans::no) {
      for (std::size_t p = 0; p < kc; ++p) {
        const double* src = b.row(p0 + p) + j0 + jr;
        for (std::size_t jj = 0; jj < kNR; ++jj) {
          buf[p * kNR + jj] = jj < nr ? src[jj] : 0.0;
        }
      }
    } else {
      for (std::size_t jj = 0; jj < kNR; ++jj) {
        if (jj < nr) {
          const double* src = b.row(j0 + jr + jj) + p0;
          for (std::size_t p = 0; p < kc; ++p) buf[p * kNR + jj] = src[p];
        } else {
          for (std::size_t p = 0; p < kc; ++p) buf[p * kNR + jj] = 0.0;
        }
      }
    }
    buf += kc * kNR;
  }
}

void micro_kernel(std::size_t kc, const double* __restrict a,
                  const double* __restrict b, double alpha, MatrixView c,
                  std::size_t i0, std::size_t j0, std::size_t mr,
                  std::size_t nr) {
  double acc[kMR][kNR] = {};
  for (std::size_t p = 0; p < kc; ++p) {
    const double* ap = a + p * kMR;
    const double* bp = b + p * kNR;
    for (std::size_t i = 0; i < kMR; ++i) {
      const double ai = ap[i];
      for (std::size_t j = 0; j < kNR; ++j) acc[i][j] += ai * bp[j];
    }
  }
  for (std::size_t i = 0; i < mr; ++i) {
    double* crow = c.row(i0 + i) + j0;
    for (std::size_t j = 0; j < nr; ++j) crow[j] += alpha * acc[i][j];
  }
}

void scale(MatrixView c, double beta) {
  if (beta == 1.0) return;
  for (std::size_t i = 0; i < c.rows(); ++i) {
    double* row = c.row(i);
    for (std::size_t j = 0; j < c.cols(); ++j) {
      row[j] = beta == 0.0 ? 0.0 : beta * row[j];
    }
  }
}

}  // namespace

void gemm(double alpha, ConstMatrixView a, Trans trans_a, ConstMatrixView b,
          Trans trans_b, double beta, MatrixView c) {
  const std::size_t m = c.rows();
  const std::size_t n = c.cols();
  const std::size_t k = trans_a == Trans::no ? a.cols() : a.rows();
  scale(c, beta);
  if (m == 0 || n == 0 || k == 0 || alpha == 0.0) return;

  std::vector<double> a_buf(((std::min(kMC, m) + kMR - 1) / kMR) * kMR *
                            std::min(kKC, k));
  std::vector<double> b_buf(((std::min(kNC, n) + kNR - 1) / kNR) * kNR *
                            std::min(kKC, k));

  for (std::size_t jc = 0; jc < n; jc += kNC) {
    const std::size_t nc = std::min(kNC, n - jc);
    for (std::size_t pc = 0; pc < k; pc += kKC) {
      const std::size_t kc = std::min(kKC, k - pc);
      pack_b(b, trans_b, pc, kc, jc, nc, b_buf.data());
      for (std::size_t ic = 0; ic < m; ic += kMC) {
        const std::size_t mc = std::min(kMC, m - ic);
        pack_a(a, trans_a, ic, mc, pc, kc, a_buf.data());
        for (std::size_t jr = 0; jr < nc; jr += kNR) {
          const double* bp = b_buf.data() + (jr / kNR) * kc * kNR;
          const std::size_t nr = std::min(kNR, nc - jr);
          for (std::size_t ir = 0; ir < mc; ir += kMR) {
            const double* ap = a_buf.data() + (ir / kMR) * kc * kMR;
            micro_kernel(kc, ap, bp, alpha, c, ic + ir, jc + jr,
                         std::min(kMR, mc - ir), nr);
          }
        }
      }
    }
  }
}

std::size_t trsm(Side side, Uplo uplo, Trans trans, Diag diag,
                 ConstMatrixView t, MatrixView b) {
  const std::size_t n = t.rows();
  if (diag == Diag::non_unit) {
    for (std::size_t i = 0; i < n; ++i) {
      if (t(i, i) == 0.0) return i + 1;
    }
  }
  const bool unit = diag == Diag::unit;
  // Effective coefficient matrix M = op(t); M(i, p) = op_at(t, trans, i, p).
  const bool m_lower = (uplo == Uplo::lower) == (trans == Trans::no);

  if (side == Side::left) {
    // Row i of x depends on rows p < i (M lower) or p > i (M upper).
    const std::size_t cols = b.cols();
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t i = m_lower ? step : n - 1 - step;
      double* xi = b.row(i);
      const std::size_t p_begin = m_lower ? 0 : i + 1;
      const std::size_t p_end = m_lower ? i : n;
      for (std::size_t p = p_begin; p < p_end; ++p) {
        const double coeff = op_at(t, trans, i, p);
        if (coeff == 0.0) continue;
        const double* xp = b.row(p);
        for (std::size_t j = 0; j < cols; ++j) xi[j] -= coeff * xp[j];
      }
      if (!unit) {
        const double inv = 1.0 / t(i, i);
        for (std::size_t j = 0; j < cols; ++j) xi[j] *= inv;
      }
    }
    return 0;
  }

  // Right side: each row x of the solution satisfies x * M = b_row, so
  // x_j = (b_j - sum_{i != j} x_i M(i, j)) / M(j, j), resolving columns in
  // descending order when M is lower and ascending when upper. With
  // trans == yes, M(i, j) = t(j, i) and the sum is a dot product along row j
  // of t; otherwise each solved x_j is pushed into the pending entries with
  // an axpy along row j of t. Both walk t row-wise.
  std::vector<double> diag_inv(n, 1.0);
  if (!unit) {
    for (std::size_t i = 0; i < n; ++i) diag_inv[i] = 1.0 / t(i, i);
  }
  for (std::size_t r = 0; r < b.rows(); ++r) {
    double* x = b.row(r);
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t j = m_lower ? n - 1 - step : step;
      const double* tj = t.row(j);
      if (trans == Trans::yes) {
        const std::size_t i_begin = m_lower ? j + 1 : 0;
        const std::size_t i_end = m_lower ? n : j;
        double s = x[j];
        for (std::size_t i = i_begin; i < i_end; ++i) s -= x[i] * tj[i];
        x[j] = s * diag_inv[j];
      } else {
        const double xj = x[j] * diag_inv[j];
        x[j] = xj;
        // M(j, i) = t(j, i) for the entries still pending.
        const std::size_t i_begin = m_lower ? 0 : j + 1;
        const std::size_t i_end = m_lower ? j : n;
        for (std::size_t i = i_begin; i < i_end; ++i) x[i] -= xj * tj[i];
      }
    }
  }
  return 0;
}

void subtract_lower(ConstMatrixView s, MatrixView c) {
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const double* srow = s.row(i);
    double* crow = c.row(i);
    for (std::size_t j = 0; j <= i && j < c.cols(); ++j) crow[j] -= srow[j];
  }
}

void copy_lower(ConstMatrixView src, MatrixView dst) {
  for (std::size_t i = 0; i < dst.rows(); ++i) {
    const double* srow = src.row(i);
    double* drow = dst.row(i);
    for (std::size_t j = 0; j < dst.cols(); ++j) {
      drow[j] = j <= i ? srow[j] : 0.0;
    }
  }
}

}  // namespace cholgrad::kernels
