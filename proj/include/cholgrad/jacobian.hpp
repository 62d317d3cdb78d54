#pragma once

#include <cstddef>

#include "cholgrad/matrix.hpp"

namespace cholgrad {

// Explicit d vech(L) / d vech(Sigma) for small matrices. Rows follow the vech
// order of L's entries, columns the vech order of Sigma's. Column (k, l) is
// the response to the symmetric unit perturbation that moves Sigma(k, l) and
// Sigma(l, k) together, so J * vech(Sigma_dot) == vech(L_dot).
struct JacobianMatrix {
  std::size_t n = 0;
  Matrix entries;
};

// Dense Jacobian constructions are O(n^4) in memory or time.
inline constexpr std::size_t kMaxJacobianSide = 32;

// Entry-by-entry closed form, with running sums over the inner index so the
// whole matrix costs Theta(n^4).
JacobianMatrix jacobian_elementwise(const Matrix& l);

// Elimination * (I kron L) * Z * (L^-1 kron L^-1) * Duplication.
JacobianMatrix jacobian_kron_form(const Matrix& l);

// Central differences of the factorization: column (k, l) is
// vech(chol(Sigma + h E_kl) - chol(Sigma - h E_kl)) / (2h), with E_kl the
// symmetric unit perturbation. Throws NotPositiveDefiniteError if a perturbed
// matrix is indefinite.
JacobianMatrix finite_difference_jacobian(const Matrix& sigma, double step);

// 1e-6 * max|Sigma|.
double default_fd_step(const Matrix& sigma);

// tril(Sigma_bar) from the vector-Jacobian product vech(L_bar)^T J.
Matrix reverse_via_jacobian(const Matrix& l, const Matrix& l_bar);

}  // namespace cholgrad
