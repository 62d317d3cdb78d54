#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cholgrad/matrix.hpp"

namespace cholgrad {

enum class Algo {
  chol_unblocked,
  chol_blocked,
  fwd_unblocked,
  fwd_blocked,
  fwd_symbolic,
  rev_unblocked,
  rev_blocked,
  rev_symbolic,
};

inline constexpr Algo kAllAlgos[] = {
    Algo::chol_unblocked, Algo::chol_blocked,  Algo::fwd_unblocked,
    Algo::fwd_blocked,    Algo::fwd_symbolic,  Algo::rev_unblocked,
    Algo::rev_blocked,    Algo::rev_symbolic,
};

std::string_view to_string(Algo algo);
std::optional<Algo> parse_algo(std::string_view name);
// "factor", "forward" or "reverse".
std::string_view mode_of(Algo algo);
bool is_blocked(Algo algo);

struct BenchRecord {
  Algo algo = Algo::chol_unblocked;
  std::size_t n = 0;
  std::size_t block_size = 0;  // 0 for algorithms without blocking
  std::size_t repeats = 0;
  double median_seconds = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct BenchConfig {
  std::vector<std::size_t> sizes{256, 512, 1024, 2048};
  std::vector<std::size_t> block_sizes{16, 64, 256};
  std::vector<Algo> algos{std::begin(kAllAlgos), std::end(kAllAlgos)};
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
};

// G G^T + n I with G drawn from a seeded standard normal generator. Exactly
// symmetric and deterministic per (n, seed).
Matrix random_spd(std::size_t n, std::uint64_t seed);

// Symmetric matrix with standard normal entries, for sensitivity inputs.
Matrix random_symmetric(std::size_t n, std::uint64_t seed);

// Lower-triangular matrix with standard normal entries.
Matrix random_lower(std::size_t n, std::uint64_t seed);

// Times every (algo, n, block size) combination: one warm-up run, then
// `repeats` timed runs on identical inputs. Derivative timings exclude the
// factorization. `on_record` (optional) sees each record as it is produced.
std::vector<BenchRecord> run_bench(
    const BenchConfig& config,
    const std::function<void(const BenchRecord&)>& on_record = {});

// Median wall time of `repeats` calls to `run`, each preceded by an untimed
// call to `setup`.
double median_time(std::size_t repeats, const std::function<void()>& setup,
                   const std::function<void()>& run);

inline constexpr std::string_view kCsvHeader =
    "algo,mode,n,block_size,repeats,median_seconds,seed";

void write_csv(std::ostream& out, std::span<const BenchRecord> records);
void write_csv_row(std::ostream& out, const BenchRecord& record);
// Throws DomainError on a malformed header or row.
std::vector<BenchRecord> read_csv(std::istream& in);

}  // namespace cholgrad
