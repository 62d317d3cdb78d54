#pragma once

// Test-only oracles. Nothing here calls into the factorization or derivative
// code paths under test; the FD helpers use the naive textbook factorization
// below.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "cholgrad/matrix.hpp"

namespace cholgrad::testing {

inline Matrix naive_matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      long double s = 0.0L;
      for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<long double>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<double>(s);
    }
  }
  return c;
}

inline Matrix naive_transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

inline Matrix lower_of(const Matrix& a) {
  Matrix t(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i && j < a.cols(); ++j) t(i, j) = a(i, j);
  }
  return t;
}

// Cholesky-Crout in long double, reading the lower triangle of sigma.
inline Matrix naive_cholesky(const Matrix& sigma) {
  const std::size_t n = sigma.rows();
  std::vector<long double> l(n * n, 0.0L);
  for (std::size_t j = 0; j < n; ++j) {
    long double s = sigma(j, j);
    for (std::size_t k = 0; k < j; ++k) s -= l[j * n + k] * l[j * n + k];
    if (!(s > 0.0L)) throw std::domain_error("naive_cholesky: not positive definite");
    l[j * n + j] = std::sqrt(s);
    for (std::size_t i = j + 1; i < n; ++i) {
      long double t = sigma(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = t / l[j * n + j];
    }
  }
  Matrix out(n, n);
  for (std::size_t k = 0; k < n * n; ++k) out.data()[k] = static_cast<double>(l[k]);
  return out;
}

// Central difference of the factor along the symmetric direction v.
inline Matrix fd_forward(const Matrix& sigma, const Matrix& v, double h) {
  Matrix plus = sigma;
  Matrix minus = sigma;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    plus.data()[k] += h * v.data()[k];
    minus.data()[k] -= h * v.data()[k];
  }
  const Matrix lp = naive_cholesky(plus);
  const Matrix lm = naive_cholesky(minus);
  Matrix out(sigma.rows(), sigma.cols());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.data()[k] = (lp.data()[k] - lm.data()[k]) / (2.0 * h);
  }
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

inline double max_abs_diff_lower(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  }
  return m;
}

inline double max_abs_of(const Matrix& a, bool lower_only) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (lower_only && j > i) break;
      m = std::max(m, std::abs(a(i, j)));
    }
  }
  return m;
}

// max|a - b| / max(max|a|, max|b|), 0 when both are zero.
inline double rel_diff(const Matrix& a, const Matrix& b) {
  const double scale = std::max(max_abs_of(a, false), max_abs_of(b, false));
  return scale > 0.0 ? max_abs_diff(a, b) / scale : 0.0;
}

// Same, restricted to the lower triangles.
inline double rel_diff_lower(const Matrix& a, const Matrix& b) {
  const double scale = std::max(max_abs_of(a, true), max_abs_of(b, true));
  return scale > 0.0 ? max_abs_diff_lower(a, b) / scale : 0.0;
}

// sum_{i >= j} a(i, j) b(i, j)
inline double dot_lower(const Matrix& a, const Matrix& b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) s += static_cast<long double>(a(i, j)) * b(i, j);
  }
  return static_cast<double>(s);
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                            double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (double& x : m.data()) x = dist(gen);
  return m;
}

// Determinant by the Leibniz permutation sum; only for tiny matrices.
inline long double leibniz_det(const Matrix& a, std::size_t order) {
  std::vector<std::size_t> perm(order);
  std::iota(perm.begin(), perm.end(), 0);
  long double det = 0.0L;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < order; ++i) {
      for (std::size_t j = i + 1; j < order; ++j) inversions += perm[i] > perm[j];
    }
    long double term = inversions % 2 ? -1.0L : 1.0L;
    for (std::size_t i = 0; i < order; ++i) term *= a(i, perm[i]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// First k (1-based) whose leading principal minor is not positive; 0 if all
// are positive.
inline std::size_t first_nonpositive_minor(const Matrix& a) {
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    if (!(leibniz_det(a, k) > 0.0L)) return k;
  }
  return 0;
}

}  // namespace cholgrad::testing
