#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cholgrad/matrix.hpp"

namespace cholgrad {

// Squared-exponential kernel hyperparameters, all on the log scale:
// k(x, x') = signal_variance * exp(-|x - x'|^2 / (2 lengthscale^2)), plus
// noise_variance on the diagonal.
struct Hyperparameters {
  double log_lengthscale = 0.0;
  double log_signal_variance = 0.0;
  double log_noise_variance = 0.0;
};

struct GPProblem {
  Matrix inputs;  // one point per row
  std::vector<double> targets;
  Hyperparameters hyper;
};

enum class ReverseMethod { unblocked, blocked, symbolic };

inline constexpr ReverseMethod kAllReverseMethods[] = {
    ReverseMethod::unblocked, ReverseMethod::blocked, ReverseMethod::symbolic};

std::string_view to_string(ReverseMethod method);

struct LogLikelihood {
  double value = 0.0;
  // d value / d (log_lengthscale, log_signal_variance, log_noise_variance)
  std::array<double, 3> gradient{};
};

// `points` 1-d inputs on an even grid over [0, 5] with noisy sine targets.
GPProblem make_demo_problem(std::size_t points, std::uint64_t seed);

// K + noise * I for the problem's hyperparameters.
Matrix gp_covariance(const GPProblem& problem);

// Log marginal likelihood -y^T K^-1 y / 2 - log|K| / 2 - n log(2 pi) / 2.
double gp_loglik(const GPProblem& problem);

// Log likelihood and its gradient. The gradient is obtained by seeding the
// sensitivity of the likelihood to L, pulling it back through the Cholesky
// factorization with the chosen reverse routine, and contracting tril(K_bar)
// with dK / dtheta.
LogLikelihood gp_loglik_gradient(const GPProblem& problem,
                                 ReverseMethod method = ReverseMethod::blocked);

// Central differences of gp_loglik in each log-hyperparameter.
std::array<double, 3> gp_fd_gradient(const GPProblem& problem, double step = 1e-5);

// Largest |a_k - b_k| / max(|a_k|, |b_k|) over the three components.
double max_relative_error(const std::array<double, 3>& a, const std::array<double, 3>& b);

}  // namespace cholgrad
