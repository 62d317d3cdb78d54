// cholgrad: timing comparisons of the factorization and derivative routines,
// and the Gaussian-process gradient demonstration.
//
//   cholgrad bench [--sizes 256,512] [--block-sizes 16,64] [--algos a,b]
//                  [--repeats 5] [--seed 0] [--out file.csv]
//   cholgrad gp-demo [--points 50] [--seed 0] [--check]
//
// Exit status: 0 success, 1 numerical failure, 2 usage error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cholgrad/bench.hpp"
#include "cholgrad/errors.hpp"
#include "cholgrad/gp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

constexpr double kGradientTolerance = 1e-5;

struct BenchOptions {
  std::vector<std::size_t> sizes{256, 512, 1024, 2048};
  std::vector<std::size_t> block_sizes{16, 64, 256};
  std::vector<std::string> algos;
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
  std::string out;
};

struct GpOptions {
  std::size_t points = 50;
  std::uint64_t seed = 0;
  bool check = false;
};

int run_bench_command(const BenchOptions& opts) {
  cholgrad::BenchConfig config;
  config.sizes = opts.sizes;
  config.block_sizes = opts.block_sizes;
  config.repeats = opts.repeats;
  config.seed = opts.seed;
  if (!opts.algos.empty()) {
    config.algos.clear();
    for (const auto& name : opts.algos) {
      auto algo = cholgrad::parse_algo(name);
      if (!algo) {
        std::cerr << "unknown algorithm '" << name << "'\n";
        return kExitUsage;
      }
      config.algos.push_back(*algo);
    }
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!opts.out.empty() && opts.out != "-") {
    file.open(opts.out);
    if (!file) {
      std::cerr << "cannot open " << opts.out << " for writing\n";
      return kExitUsage;
    }
    out = &file;
  }
  *out << cholgrad::kCsvHeader << '\n';
  cholgrad::run_bench(config, [&](const cholgrad::BenchRecord& record) {
    cholgrad::write_csv_row(*out, record);
    out->flush();
  });
  return kExitOk;
}

int run_gp_command(const GpOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto problem = cholgrad::make_demo_problem(opts.points, opts.seed);
  std::cout << std::setprecision(12);
  std::cout << "points " << opts.points << " seed " << opts.seed << '\n';

  const auto fd = opts.check ? cholgrad::gp_fd_gradient(problem)
                             : std::array<double, 3>{};
  double worst = 0.0;
  bool printed_value = false;
  for (auto method : cholgrad::kAllReverseMethods) {
    const auto result = cholgrad::gp_loglik_gradient(problem, method);
    if (!printed_value) {
      std::cout << "loglik " << result.value << '\n';
      printed_value = true;
    }
    std::cout << "gradient " << cholgrad::to_string(method) << ' '
              << result.gradient[0] << ' ' << result.gradient[1] << ' '
              << result.gradient[2] << '\n';
    if (opts.check) {
      const double err = cholgrad::max_relative_error(result.gradient, fd);
      worst = std::max(worst, err);
      std::cout << "max_rel_error " << cholgrad::to_string(method) << ' '
                << std::scientific << std::setprecision(3) << err
                << std::defaultfloat << std::setprecision(12) << '\n';
    }
  }
  if (opts.check) {
    std::cout << "fd_gradient " << fd[0] << ' ' << fd[1] << ' ' << fd[2] << '\n';
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "elapsed_seconds " << std::setprecision(3) << seconds << '\n';
  if (opts.check) {
    const bool ok = worst <= kGradientTolerance;
    std::cout << "check " << (ok ? "passed" : "FAILED") << " (max relative error "
              << std::scientific << worst << ", tolerance " << kGradientTolerance
              << ")\n";
    return ok ? kExitOk : kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cholesky factorization and derivative benchmarks"};
  app.require_subcommand(1);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "time factorization and derivative routines, CSV output");
  bench_cmd->add_option("--sizes", bench.sizes, "matrix sizes")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--block-sizes", bench.block_sizes, "block sizes for blocked routines")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--algos", bench.algos, "algorithms (default: all)")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "timed runs per measurement (>= 3)")
      ->check(CLI::Range(std::size_t{3}, std::numeric_limits<std::size_t>::max()));
  bench_cmd->add_option("--seed", bench.seed, "random seed");
  bench_cmd->add_option("--out", bench.out, "output CSV path (default: stdout)");

  GpOptions gp;
  auto* gp_cmd = app.add_subcommand("gp-demo", "Gaussian-process log-likelihood gradient");
  gp_cmd->add_option("--points", gp.points, "number of training points");
  gp_cmd->add_option("--seed", gp.seed, "random seed");
  gp_cmd->add_flag("--check", gp.check, "compare against finite differences");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bench_cmd->parsed()) return run_bench_command(bench);
    return run_gp_command(gp);
  } catch (const cholgrad::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cholgrad::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cholgrad::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
