#pragma once

#include <cstddef>
#include <vector>

#include "cholgrad/kernels.hpp"
#include "cholgrad/matrix.hpp"

namespace cholgrad {

// A square matrix of which only one triangle is meaningful.
struct TriangularView {
  const Matrix& matrix;
  Uplo uplo = Uplo::lower;
  Diag diag = Diag::non_unit;
};

// Lower triangle of a, strict upper triangle zeroed.
Matrix tril(const Matrix& a);

// Lower triangle of a with the diagonal halved; strict upper triangle zeroed.
Matrix phi(const Matrix& a);

// Symmetric matrix whose both triangles are the lower triangle of a.
Matrix symmetrize_from_tril(const Matrix& a);

// Column-stacked entries of a.
std::vector<double> vec(const Matrix& a);

// Column-stacked lower triangle of a square matrix: for each column j,
// entries a[j..n-1][j].
std::vector<double> vech(const Matrix& a);

// Inverse of vech: a lower-triangular n x n matrix.
Matrix unvech(std::size_t n, const std::vector<double>& v);

// Position of entry (i, j), i >= j, in vech order for an n x n matrix.
constexpr std::size_t vech_index(std::size_t n, std::size_t i, std::size_t j) {
  return j * (2 * n - j + 1) / 2 + (i - j);
}

Matrix kron(const Matrix& a, const Matrix& b);

// Structured matrices relating vec and vech. Dense, meant for n <= 32.
Matrix elimination_matrix(std::size_t n);
Matrix duplication_matrix(std::size_t n);
// Diagonal n^2 x n^2 matrix with z * vec(a) == vec(phi(a)).
Matrix z_matrix(std::size_t n);

Matrix matmul(const Matrix& a, const Matrix& b, Trans trans_a = Trans::no,
              Trans trans_b = Trans::no);

// Returns x with op(t) * x = b (Side::left) or x * op(t) = b (Side::right).
// Throws SingularTriangularError naming the first zero diagonal entry.
Matrix solve_triangular(TriangularView t, const Matrix& b, Side side,
                        Trans trans_t = Trans::no);

}  // namespace cholgrad
