#pragma once

// Unchecked BLAS-style kernels on row-major views. Callers are responsible
// for shapes and for the finiteness of the data; the checked Matrix-level
// entry points live in dense.hpp.

#include <cstddef>

#include "cholgrad/matrix.hpp"

namespace cholgrad {

enum class Trans { no, yes };
enum class Uplo { lower, upper };
enum class Diag { non_unit, unit };
enum class Side { left, right };

namespace kernels {

// c <- beta * c + alpha * op(a) * op(b)
void gemm(double alpha, ConstMatrixView a, Trans trans_a, ConstMatrixView b,
          Trans trans_b, double beta, MatrixView c);

// Solves op(t) * x = b (left) or x * op(t) = b (right), overwriting b with x.
// Only the `uplo` triangle of t is read; for Diag::unit the diagonal is not
// read either. Returns 0, or the 1-based index of the first zero pivot (in
// which case b is left untouched).
std::size_t trsm(Side side, Uplo uplo, Trans trans, Diag diag,
                 ConstMatrixView t, MatrixView b);

// The lower triangle of c (diagonal included) minus the lower triangle of s.
void subtract_lower(ConstMatrixView s, MatrixView c);

// Copies the lower triangle of src into dst and zeroes dst's strict upper
// triangle.
void copy_lower(ConstMatrixView src, MatrixView dst);

}  // namespace kernels
}  // namespace cholgrad
