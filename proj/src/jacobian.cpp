#include "cholgrad/jacobian.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "cholgrad/cholesky.hpp"
#include "cholgrad/dense.hpp"
#include "cholgrad/errors.hpp"

namespace cholgrad {
namespace {

void check_size(std::size_t n, const char* what) {
  if (n > kMaxJacobianSide) {
    throw SizeGuardError(std::string(what) + ": n = " + std::to_string(n) +
                         " exceeds the limit of " +
                         std::to_string(kMaxJacobianSide));
  }
}

void check_factor(const Matrix& l, const char* what) {
  require_square(l, what);
  check_size(l.rows(), what);
  require_finite_lower(l, what);
  for (std::size_t i = 0; i < l.rows(); ++i) {
    if (l(i, i) == 0.0) throw SingularFactorError(i + 1);
  }
}

// Row-oriented forward substitution for L^-1, reading the lower triangle.
Matrix lower_inverse(const Matrix& l) {
  const std::size_t n = l.rows();
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = &inv(i, 0);
    row[i] = 1.0;
    for (std::size_t q = 0; q < i; ++q) {
      const double liq = l(i, q);
      const double* qrow = &inv(q, 0);
      for (std::size_t k = 0; k <= q; ++k) row[k] -= liq * qrow[k];
    }
    const double d = 1.0 / l(i, i);
    for (std::size_t k = 0; k <= i; ++k) row[k] *= d;
  }
  return inv;
}

}  // namespace

JacobianMatrix jacobian_elementwise(const Matrix& l) {
  check_factor(l, "jacobian_elementwise");
  const std::size_t n = l.rows();
  const Matrix inv = lower_inverse(l);
  const std::size_t m = n * (n + 1) / 2;
  JacobianMatrix jac{n, Matrix(m, m)};

  // Entry (i, j; k, c) with k >= c is w[k] inv(j, c) + w[c] inv(j, k), halved
  // when k == c, where w[k] = tail[k] + L(i, j) inv(j, k) / 2 and
  // tail[k] = sum_{q > j} L(i, q) inv(q, k) is updated as j decreases.
  std::vector<std::size_t> row_k(m), col_c(m);
  std::vector<double> weight(m);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t k = c; k < n; ++k) {
      const std::size_t p = vech_index(n, k, c);
      row_k[p] = k;
      col_c[p] = c;
      weight[p] = k == c ? 0.5 : 1.0;
    }
  }
  std::vector<double> tail(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(tail.begin(), tail.end(), 0.0);
    for (std::size_t jp = i + 1; jp-- > 0;) {
      const std::size_t j = jp;
      const double lij = l(i, j);
      const double* inv_j = &inv(j, 0);
      for (std::size_t k = 0; k < n; ++k) w[k] = tail[k] + 0.5 * lij * inv_j[k];
      double* out = &jac.entries(vech_index(n, i, j), 0);
      for (std::size_t p = 0; p < m; ++p) {
        const std::size_t k = row_k[p], c = col_c[p];
        out[p] = weight[p] * (w[k] * inv_j[c] + w[c] * inv_j[k]);
      }
      for (std::size_t k = 0; k < n; ++k) tail[k] += lij * inv_j[k];
    }
  }
  return jac;
}

JacobianMatrix jacobian_kron_form(const Matrix& l) {
  check_factor(l, "jacobian_kron_form");
  const std::size_t n = l.rows();
  const Matrix lt = tril(l);
  const Matrix inv = lower_inverse(lt);
  Matrix right = matmul(kron(inv, inv), duplication_matrix(n));
  right = matmul(z_matrix(n), right);
  right = matmul(kron(Matrix::identity(n), lt), right);
  return {n, matmul(elimination_matrix(n), right)};
}

double default_fd_step(const Matrix& sigma) { return 1e-6 * max_abs(sigma); }

JacobianMatrix finite_difference_jacobian(const Matrix& sigma, double step) {
  require_square(sigma, "finite_difference_jacobian");
  check_size(sigma.rows(), "finite_difference_jacobian");
  require_finite(sigma, "finite_difference_jacobian");
  if (!(step > 0.0)) throw DomainError("finite_difference_jacobian: step must be positive");
  const std::size_t n = sigma.rows();
  const std::size_t m = n * (n + 1) / 2;
  JacobianMatrix jac{n, Matrix(m, m)};
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t k = c; k < n; ++k) {
      Matrix plus = sigma;
      Matrix minus = sigma;
      plus(k, c) += step;
      minus(k, c) -= step;
      if (k != c) {
        plus(c, k) += step;
        minus(c, k) -= step;
      }
      const Matrix lp = cholesky(std::move(plus));
      const Matrix lm = cholesky(std::move(minus));
      const std::size_t col = vech_index(n, k, c);
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t i = q; i < n; ++i) {
          jac.entries(vech_index(n, i, q), col) = (lp(i, q) - lm(i, q)) / (2.0 * step);
        }
      }
    }
  }
  return jac;
}

Matrix reverse_via_jacobian(const Matrix& l, const Matrix& l_bar) {
  require_same_shape(l, l_bar, "reverse_via_jacobian");
  const JacobianMatrix jac = jacobian_elementwise(l);
  const std::vector<double> g = vech(l_bar);
  const std::size_t m = g.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (g[r] == 0.0) continue;
    for (std::size_t c = 0; c < m; ++c) out[c] += g[r] * jac.entries(r, c);
  }
  return unvech(l.rows(), out);
}

}  // namespace cholgrad
