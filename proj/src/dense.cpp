#include "cholgrad/dense.hpp"

#include <cmath>
#include <string>

#include "cholgrad/errors.hpp"

namespace cholgrad {
namespace {

void require_order(std::size_t n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": n must be at least 1");
}

}  // namespace

Matrix tril(const Matrix& a) {
  require_square(a, "tril");
  require_finite_lower(a, "tril");
  Matrix out(a.rows(), a.cols());
  kernels::copy_lower(a.view(), out.view());
  return out;
}

Matrix phi(const Matrix& a) {
  Matrix out = tril(a);
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) *= 0.5;
  return out;
}

Matrix symmetrize_from_tril(const Matrix& a) {
  require_square(a, "symmetrize_from_tril");
  require_finite_lower(a, "symmetrize_from_tril");
  const std::size_t n = a.rows();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      out(i, j) = a(i, j);
      out(j, i) = a(i, j);
    }
  }
  return out;
}

std::vector<double> vec(const Matrix& a) {
  require_finite(a, "vec");
  std::vector<double> v;
  v.reserve(a.size());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) v.push_back(a(i, j));
  }
  return v;
}

std::vector<double> vech(const Matrix& a) {
  require_square(a, "vech");
  require_finite_lower(a, "vech");
  const std::size_t n = a.rows();
  std::vector<double> v;
  v.reserve(n * (n + 1) / 2);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) v.push_back(a(i, j));
  }
  return v;
}

Matrix unvech(std::size_t n, const std::vector<double>& v) {
  if (v.size() != n * (n + 1) / 2) {
    throw DimensionError("unvech: expected " + std::to_string(n * (n + 1) / 2) +
                         " entries, got " + std::to_string(v.size()));
  }
  Matrix out(n, n);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) out(i, j) = v[k++];
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_finite(a, "kron");
  require_finite(b, "kron");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double s = a(i, j);
      for (std::size_t p = 0; p < b.rows(); ++p) {
        for (std::size_t q = 0; q < b.cols(); ++q) {
          out(i * b.rows() + p, j * b.cols() + q) = s * b(p, q);
        }
      }
    }
  }
  return out;
}

Matrix elimination_matrix(std::size_t n) {
  require_order(n, "elimination_matrix");
  Matrix out(n * (n + 1) / 2, n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) out(vech_index(n, i, j), j * n + i) = 1.0;
  }
  return out;
}

Matrix duplication_matrix(std::size_t n) {
  require_order(n, "duplication_matrix");
  Matrix out(n * n, n * (n + 1) / 2);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t col = i >= j ? vech_index(n, i, j) : vech_index(n, j, i);
      out(j * n + i, col) = 1.0;
    }
  }
  return out;
}

Matrix z_matrix(std::size_t n) {
  require_order(n, "z_matrix");
  Matrix out(n * n, n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = j * n + i;
      out(k, k) = i > j ? 1.0 : (i == j ? 0.5 : 0.0);
    }
  }
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b, Trans trans_a, Trans trans_b) {
  require_finite(a, "matmul");
  require_finite(b, "matmul");
  const std::size_t m = trans_a == Trans::no ? a.rows() : a.cols();
  const std::size_t ka = trans_a == Trans::no ? a.cols() : a.rows();
  const std::size_t kb = trans_b == Trans::no ? b.rows() : b.cols();
  const std::size_t n = trans_b == Trans::no ? b.cols() : b.rows();
  if (ka != kb) {
    throw DimensionError("matmul: inner dimensions " + std::to_string(ka) +
                         " and " + std::to_string(kb) + " do not match");
  }
  Matrix out(m, n);
  kernels::gemm(1.0, a.view(), trans_a, b.view(), trans_b, 0.0, out.view());
  return out;
}

Matrix solve_triangular(TriangularView t, const Matrix& b, Side side,
                        Trans trans_t) {
  const Matrix& m = t.matrix;
  require_square(m, "solve_triangular");
  require_finite(b, "solve_triangular");
  require_valid(m, "solve_triangular");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = t.uplo == Uplo::lower ? 0 : i;
    const std::size_t hi = t.uplo == Uplo::lower ? i + 1 : n;
    for (std::size_t j = lo; j < hi; ++j) {
      if (!std::isfinite(m(i, j))) {
        throw NonFiniteError("solve_triangular: coefficient matrix has non-finite entries");
      }
    }
  }
  const std::size_t needed = side == Side::left ? b.rows() : b.cols();
  if (needed != n) {
    throw DimensionError("solve_triangular: right-hand side is " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ", triangle is " +
                         std::to_string(n) + "x" + std::to_string(n));
  }
  Matrix x = b;
  if (std::size_t bad = kernels::trsm(side, t.uplo, trans_t, t.diag, m.view(), x.view())) {
    throw SingularTriangularError(bad);
  }
  require_finite(x, "solve_triangular result");
  return x;
}

}  // namespace cholgrad
