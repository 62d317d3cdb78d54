#include "cholgrad/chol_symbolic.hpp"

#include <algorithm>
#include <cmath>

#include "cholgrad/dense.hpp"
#include "cholgrad/errors.hpp"
#include "cholgrad/kernels.hpp"

namespace cholgrad {
namespace {

void phi_in_place(MatrixView m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double* row = m.row(i);
    row[i] *= 0.5;
    for (std::size_t j = i + 1; j < m.cols(); ++j) row[j] = 0.0;
  }
}

void check_factor(const Matrix& l, const Matrix& other, const char* what) {
  require_square(l, what);
  require_same_shape(l, other, what);
  require_finite_lower(l, what);
  for (std::size_t i = 0; i < l.rows(); ++i) {
    if (l(i, i) == 0.0) throw SingularFactorError(i + 1);
  }
}

// S = L^-T phi(L^T L_bar) L^-1 for lower-triangular copies lt, lbar.
Matrix reverse_core(const Matrix& lt, const Matrix& lbar) {
  const std::size_t n = lt.rows();
  Matrix s(n, n);
  kernels::gemm(1.0, lt.view(), Trans::yes, lbar.view(), Trans::no, 0.0, s.view());
  phi_in_place(s.view());
  kernels::trsm(Side::left, Uplo::lower, Trans::yes, Diag::non_unit, lt.view(), s.view());
  kernels::trsm(Side::right, Uplo::lower, Trans::no, Diag::non_unit, lt.view(), s.view());
  return s;
}

}  // namespace

Matrix chol_fwd_symbolic(const Matrix& l, const Matrix& sigma_dot) {
  check_factor(l, sigma_dot, "chol_fwd_symbolic");
  require_finite(sigma_dot, "chol_fwd_symbolic");
  const std::size_t n = l.rows();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      asym = std::max(asym, std::abs(sigma_dot(i, j) - sigma_dot(j, i)));
    }
  }
  if (asym > 1e-12 * max_abs(sigma_dot)) {
    throw AsymmetryError("chol_fwd_symbolic: sigma_dot is not symmetric");
  }
  const Matrix lt = tril(l);
  // m = L^-1 Sigma_dot L^-T
  Matrix m = sigma_dot;
  kernels::trsm(Side::left, Uplo::lower, Trans::no, Diag::non_unit, lt.view(), m.view());
  kernels::trsm(Side::right, Uplo::lower, Trans::yes, Diag::non_unit, lt.view(), m.view());
  phi_in_place(m.view());
  Matrix out(n, n);
  kernels::gemm(1.0, lt.view(), Trans::no, m.view(), Trans::no, 0.0, out.view());
  require_finite(out, "chol_fwd_symbolic result");
  return out;
}

Matrix chol_rev_symbolic_sym(const Matrix& l, const Matrix& l_bar) {
  check_factor(l, l_bar, "chol_rev_symbolic_sym");
  require_finite_lower(l_bar, "chol_rev_symbolic_sym");
  const std::size_t n = l.rows();
  const Matrix s = reverse_core(tril(l), tril(l_bar));
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = s(i, i);
    for (std::size_t j = 0; j < i; ++j) {
      const double v = s(i, j) + s(j, i);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  require_finite(out, "chol_rev_symbolic_sym result");
  return out;
}

Matrix chol_rev_symbolic_tril(const Matrix& l, const Matrix& l_bar) {
  check_factor(l, l_bar, "chol_rev_symbolic_tril");
  require_finite_lower(l_bar, "chol_rev_symbolic_tril");
  Matrix out = l_bar;
  kernels::symbolic_rev_tril(l.view(), out.view());
  return tril(out);
}

namespace kernels {

void symbolic_rev_tril(ConstMatrixView l, MatrixView l_bar) {
  const std::size_t n = l.rows();
  Matrix lt(n, n);
  Matrix lb(n, n);
  copy_lower(l, lt.view());
  copy_lower(l_bar, lb.view());
  // p = phi(L^T L_bar); m = p + p^T
  Matrix p(n, n);
  gemm(1.0, lt.view(), Trans::yes, lb.view(), Trans::no, 0.0, p.view());
  phi_in_place(p.view());
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = p(i, j) + p(j, i);
  }
  // phi(L^-T m L^-1)
  trsm(Side::left, Uplo::lower, Trans::yes, Diag::non_unit, lt.view(), m.view());
  trsm(Side::right, Uplo::lower, Trans::no, Diag::non_unit, lt.view(), m.view());
  for (std::size_t i = 0; i < n; ++i) {
    double* row = l_bar.row(i);
    for (std::size_t j = 0; j < i; ++j) row[j] = m(i, j);
    row[i] = 0.5 * m(i, i);
  }
}

}  // namespace kernels
}  // namespace cholgrad
