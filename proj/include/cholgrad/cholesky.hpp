#pragma once

#include <cstddef>

#include "cholgrad/matrix.hpp"

namespace cholgrad {

inline constexpr std::size_t kDefaultBlockSize = 64;

// In-place Cholesky factorization. On entry the lower triangle of `a` holds
// the lower triangle of a symmetric positive-definite matrix; on exit it holds
// L with L * L^T equal to that matrix. The strict upper triangle is neither
// read nor written.
//
// Throws NotPositiveDefiniteError with the first failing column. The matrix
// is then left partially overwritten and flagged invalid.
Matrix& chol_unblocked(Matrix& a);

// Blocked variant: diagonal blocks of side block_size are factorized with the
// unblocked routine, everything else is matrix-matrix products and
// triangular solves.
Matrix& chol_blocked(Matrix& a, std::size_t block_size = kDefaultBlockSize);

// Convenience: returns tril(L) for a full symmetric input.
Matrix cholesky(Matrix sigma, std::size_t block_size = kDefaultBlockSize);

namespace kernels {

// Unblocked factorization of a view. Returns 0 on success, otherwise the
// 1-based column whose pivot was not positive.
std::size_t potf2(MatrixView a);

}  // namespace kernels
}  // namespace cholgrad
