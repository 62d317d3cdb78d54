#pragma once

#include "cholgrad/matrix.hpp"

namespace cholgrad {

// Compact matrix-level derivative rules for Sigma = L L^T. Inverses of L are
// applied through triangular solves; none is ever formed.

// L_dot = L phi(L^-1 Sigma_dot L^-T). sigma_dot is given in full symmetric
// storage; AsymmetryError if max|S - S^T| > 1e-12 max|S|.
Matrix chol_fwd_symbolic(const Matrix& l, const Matrix& sigma_dot);

// Full symmetric Sigma_bar = S + S^T - diag(S), S = L^-T phi(L^T L_bar) L^-1.
// Only the lower triangles of l and l_bar are read.
Matrix chol_rev_symbolic_sym(const Matrix& l, const Matrix& l_bar);

// tril(Sigma_bar) = phi(L^-T (P + P^T) L^-1), P = phi(L^T L_bar).
Matrix chol_rev_symbolic_tril(const Matrix& l, const Matrix& l_bar);

namespace kernels {

// chol_rev_symbolic_tril on views without input checks: the lower triangle of
// l_bar is replaced by the lower triangle of the result.
void symbolic_rev_tril(ConstMatrixView l, MatrixView l_bar);

}  // namespace kernels
}  // namespace cholgrad
