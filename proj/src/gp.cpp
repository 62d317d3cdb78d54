#include "cholgrad/gp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cholgrad/chol_diff.hpp"
#include "cholgrad/chol_symbolic.hpp"
#include "cholgrad/cholesky.hpp"
#include "cholgrad/dense.hpp"
#include "cholgrad/errors.hpp"

namespace cholgrad {
namespace {

// Small enough that the demo's 50-point problem spans several blocks.
constexpr std::size_t kGpBlockSize = 16;

void check_problem(const GPProblem& problem) {
  if (problem.inputs.rows() == 0 || problem.inputs.rows() != problem.targets.size()) {
    throw DimensionError("GP problem needs one target per input point");
  }
  require_finite(problem.inputs, "GP inputs");
}

// Noise-free kernel matrix and squared distances.
void signal_kernel(const GPProblem& problem, Matrix& kf, Matrix& dist2) {
  const std::size_t n = problem.inputs.rows();
  const std::size_t dim = problem.inputs.cols();
  const double ell2 = std::exp(2.0 * problem.hyper.log_lengthscale);
  const double sf2 = std::exp(problem.hyper.log_signal_variance);
  kf = Matrix(n, n);
  dist2 = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double r2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = problem.inputs(i, k) - problem.inputs(j, k);
        r2 += diff * diff;
      }
      const double v = sf2 * std::exp(-0.5 * r2 / ell2);
      kf(i, j) = kf(j, i) = v;
      dist2(i, j) = dist2(j, i) = r2;
    }
  }
}

Matrix column(const std::vector<double>& v) {
  return Matrix::from_row_major(v.size(), 1, v);
}

}  // namespace

std::string_view to_string(ReverseMethod method) {
  switch (method) {
    case ReverseMethod::unblocked:
      return "rev_unblocked";
    case ReverseMethod::blocked:
      return "rev_blocked";
    case ReverseMethod::symbolic:
      return "rev_symbolic";
  }
  return "unknown";
}

GPProblem make_demo_problem(std::size_t points, std::uint64_t seed) {
  if (points < 2) throw DomainError("make_demo_problem: need at least 2 points");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 0.1);
  GPProblem problem;
  problem.inputs = Matrix(points, 1);
  problem.targets.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = 5.0 * static_cast<double>(i) / static_cast<double>(points - 1);
    problem.inputs(i, 0) = x;
    problem.targets[i] = std::sin(x) + noise(gen);
  }
  problem.hyper = {std::log(0.8), std::log(1.5), std::log(0.05)};
  return problem;
}

Matrix gp_covariance(const GPProblem& problem) {
  check_problem(problem);
  Matrix k, dist2;
  signal_kernel(problem, k, dist2);
  const double sn2 = std::exp(problem.hyper.log_noise_variance);
  for (std::size_t i = 0; i < k.rows(); ++i) k(i, i) += sn2;
  return k;
}

double gp_loglik(const GPProblem& problem) {
  const Matrix l = cholesky(gp_covariance(problem));
  const std::size_t n = l.rows();
  const Matrix z = solve_triangular({l}, column(problem.targets), Side::left);
  double value = -0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) value -= 0.5 * z(i, 0) * z(i, 0) + std::log(l(i, i));
  return value;
}

LogLikelihood gp_loglik_gradient(const GPProblem& problem, ReverseMethod method) {
  check_problem(problem);
  Matrix kf, dist2;
  signal_kernel(problem, kf, dist2);
  const std::size_t n = kf.rows();
  const double sn2 = std::exp(problem.hyper.log_noise_variance);
  const double ell2 = std::exp(2.0 * problem.hyper.log_lengthscale);
  Matrix k = kf;
  for (std::size_t i = 0; i < n; ++i) k(i, i) += sn2;
  const Matrix l = cholesky(std::move(k));

  // f = -z^T z / 2 - sum log L_ii with z = L^-1 y, alpha = L^-T z = K^-1 y.
  const Matrix z = solve_triangular({l}, column(problem.targets), Side::left);
  const Matrix alpha = solve_triangular({l}, z, Side::left, Trans::yes);
  LogLikelihood out;
  out.value = -0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) out.value -= 0.5 * z(i, 0) * z(i, 0) + std::log(l(i, i));

  // df/dL(i, j) = alpha_i z_j - delta_ij / L_ii on the lower triangle.
  Matrix sens(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) sens(i, j) = alpha(i, 0) * z(j, 0);
    sens(i, i) -= 1.0 / l(i, i);
  }
  switch (method) {
    case ReverseMethod::unblocked:
      chol_unblocked_rev(l, sens);
      break;
    case ReverseMethod::blocked:
      chol_blocked_rev(l, sens, kGpBlockSize);
      break;
    case ReverseMethod::symbolic:
      sens = chol_rev_symbolic_tril(l, sens);
      break;
  }

  // Off-diagonal entries of tril(K_bar) already cover K(i, j) and K(j, i).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double s = sens(i, j);
      out.gradient[0] += s * kf(i, j) * dist2(i, j) / ell2;
      out.gradient[1] += s * kf(i, j);
    }
    out.gradient[2] += sens(i, i) * sn2;
  }
  return out;
}

std::array<double, 3> gp_fd_gradient(const GPProblem& problem, double step) {
  std::array<double, 3> grad{};
  double Hyperparameters::*fields[] = {&Hyperparameters::log_lengthscale,
                                       &Hyperparameters::log_signal_variance,
                                       &Hyperparameters::log_noise_variance};
  for (std::size_t k = 0; k < 3; ++k) {
    GPProblem plus = problem;
    GPProblem minus = problem;
    plus.hyper.*fields[k] += step;
    minus.hyper.*fields[k] -= step;
    grad[k] = (gp_loglik(plus) - gp_loglik(minus)) / (2.0 * step);
  }
  return grad;
}

double max_relative_error(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double scale = std::max(std::abs(a[k]), std::abs(b[k]));
    if (scale > 0.0) worst = std::max(worst, std::abs(a[k] - b[k]) / scale);
  }
  return worst;
}

}  // namespace cholgrad
