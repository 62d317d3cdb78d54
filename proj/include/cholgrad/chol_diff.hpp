#pragma once

#include <cstddef>

#include "cholgrad/cholesky.hpp"
#include "cholgrad/matrix.hpp"

namespace cholgrad {

// Derivative propagation through the Cholesky factorization, obtained by
// differentiating the unblocked and blocked factorization loops.
//
// All routines take the factor L (only its lower triangle is read) and update
// a companion matrix in place, reading and writing only its lower triangle:
//
//   forward:  tril(companion) = tril(Sigma_dot)  ->  L_dot
//   reverse:  tril(companion) = L_bar            ->  tril(Sigma_bar)
//
// Sigma_dot is a symmetric perturbation of which only the lower triangle is
// stored. tril(Sigma_bar) holds the sensitivity to each independent entry of
// Sigma, so its off-diagonal entries account for both Sigma(i,j) and
// Sigma(j,i). The strict upper triangle of the companion is unspecified on
// output.
//
// Errors: DimensionError on shape mismatch, SingularFactorError when L has a
// zero on its diagonal, DomainError for block_size == 0.

Matrix& chol_unblocked_fwd(const Matrix& l, Matrix& a_dot);
Matrix& chol_unblocked_rev(const Matrix& l, Matrix& a_bar);

Matrix& chol_blocked_fwd(const Matrix& l, Matrix& a_dot,
                         std::size_t block_size = kDefaultBlockSize);

// How chol_blocked_rev treats each diagonal block.
enum class DiagonalBlockRule {
  symbolic,   // compact lower-triangular reverse rule on the block
  unblocked,  // chol_unblocked_rev on the block
};

Matrix& chol_blocked_rev(const Matrix& l, Matrix& a_bar,
                         std::size_t block_size = kDefaultBlockSize,
                         DiagonalBlockRule rule = DiagonalBlockRule::symbolic);

namespace kernels {

void potf2_fwd(ConstMatrixView l, MatrixView a_dot);
void potf2_rev(ConstMatrixView l, MatrixView a_bar);

}  // namespace kernels
}  // namespace cholgrad
