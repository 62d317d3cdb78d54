#include "cholgrad/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <system_error>

#include "cholgrad/chol_diff.hpp"
#include "cholgrad/chol_symbolic.hpp"
#include "cholgrad/cholesky.hpp"
#include "cholgrad/dense.hpp"
#include "cholgrad/errors.hpp"
#include "cholgrad/kernels.hpp"

namespace cholgrad {
namespace {

struct AlgoName {
  Algo algo;
  std::string_view name;
};

constexpr AlgoName kNames[] = {
    {Algo::chol_unblocked, "chol_unblocked"}, {Algo::chol_blocked, "chol_blocked"},
    {Algo::fwd_unblocked, "fwd_unblocked"},   {Algo::fwd_blocked, "fwd_blocked"},
    {Algo::fwd_symbolic, "fwd_symbolic"},     {Algo::rev_unblocked, "rev_unblocked"},
    {Algo::rev_blocked, "rev_blocked"},       {Algo::rev_symbolic, "rev_symbolic"},
};

Matrix random_normal(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (double& x : g.data()) x = normal(gen);
  return g;
}

template <class T>
void put_number(std::ostream& out, T value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.write(buf, end - buf);
}

template <class T>
T parse_number(std::string_view field, std::string_view what) {
  T value{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw DomainError("read_csv: bad " + std::string(what) + " field '" +
                      std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::string_view to_string(Algo algo) {
  for (const auto& entry : kNames) {
    if (entry.algo == algo) return entry.name;
  }
  return "unknown";
}

std::optional<Algo> parse_algo(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.algo;
  }
  return std::nullopt;
}

std::string_view mode_of(Algo algo) {
  switch (algo) {
    case Algo::chol_unblocked:
    case Algo::chol_blocked:
      return "factor";
    case Algo::fwd_unblocked:
    case Algo::fwd_blocked:
    case Algo::fwd_symbolic:
      return "forward";
    default:
      return "reverse";
  }
}

bool is_blocked(Algo algo) {
  return algo == Algo::chol_blocked || algo == Algo::fwd_blocked ||
         algo == Algo::rev_blocked;
}

Matrix random_spd(std::size_t n, std::uint64_t seed) {
  const Matrix g = random_normal(n, n, seed);
  Matrix sigma(n, n);
  kernels::gemm(1.0, g.view(), Trans::no, g.view(), Trans::yes, 0.0, sigma.view());
  for (std::size_t i = 0; i < n; ++i) {
    sigma(i, i) += static_cast<double>(n);
    for (std::size_t j = 0; j < i; ++j) sigma(j, i) = sigma(i, j);
  }
  return sigma;
}

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
  Matrix s = random_normal(n, n, seed);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) s(j, i) = s(i, j);
  }
  return s;
}

Matrix random_lower(std::size_t n, std::uint64_t seed) {
  return tril(random_normal(n, n, seed));
}

double median_time(std::size_t repeats, const std::function<void()>& setup,
                   const std::function<void()>& run) {
  using clock = std::chrono::steady_clock;
  std::vector<double> times;
  times.reserve(repeats);
  for (std::size_t k = 0; k < repeats; ++k) {
    setup();
    const auto start = clock::now();
    run();
    const auto stop = clock::now();
    // Floor at one clock tick so a record never reports zero time.
    times.push_back(std::max(std::chrono::duration<double>(stop - start).count(),
                             std::chrono::duration<double>(clock::duration(1)).count()));
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  return times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

std::vector<BenchRecord> run_bench(
    const BenchConfig& config,
    const std::function<void(const BenchRecord&)>& on_record) {
  if (config.sizes.empty()) throw DomainError("run_bench: no sizes given");
  if (config.repeats < 3) throw DomainError("run_bench: repeats must be at least 3");
  for (std::size_t nb : config.block_sizes) {
    if (nb < 1) throw DomainError("run_bench: block sizes must be at least 1");
  }
  std::vector<BenchRecord> records;
  for (std::size_t n : config.sizes) {
    if (n < 1) throw DomainError("run_bench: sizes must be at least 1");
    const Matrix sigma = random_spd(n, config.seed);
    const Matrix l = cholesky(sigma);
    const Matrix sigma_dot = random_symmetric(n, config.seed + 1);
    const Matrix l_bar = random_lower(n, config.seed + 2);
    Matrix work;

    for (Algo algo : config.algos) {
      std::vector<std::size_t> blocks{0};
      if (is_blocked(algo)) {
        if (config.block_sizes.empty()) continue;
        blocks = config.block_sizes;
      }
      for (std::size_t nb : blocks) {
        std::function<void()> setup;
        std::function<void()> run;
        switch (algo) {
          case Algo::chol_unblocked:
            setup = [&] { work = sigma; };
            run = [&] { chol_unblocked(work); };
            break;
          case Algo::chol_blocked:
            setup = [&] { work = sigma; };
            run = [&, nb] { chol_blocked(work, nb); };
            break;
          case Algo::fwd_unblocked:
            setup = [&] { work = sigma_dot; };
            run = [&] { chol_unblocked_fwd(l, work); };
            break;
          case Algo::fwd_blocked:
            setup = [&] { work = sigma_dot; };
            run = [&, nb] { chol_blocked_fwd(l, work, nb); };
            break;
          case Algo::fwd_symbolic:
            setup = [] {};
            run = [&] { work = chol_fwd_symbolic(l, sigma_dot); };
            break;
          case Algo::rev_unblocked:
            setup = [&] { work = l_bar; };
            run = [&] { chol_unblocked_rev(l, work); };
            break;
          case Algo::rev_blocked:
            setup = [&] { work = l_bar; };
            run = [&, nb] { chol_blocked_rev(l, work, nb); };
            break;
          case Algo::rev_symbolic:
            setup = [] {};
            run = [&] { work = chol_rev_symbolic_tril(l, l_bar); };
            break;
        }
        setup();
        run();  // warm-up
        BenchRecord record{algo, n, nb, config.repeats,
                           median_time(config.repeats, setup, run), config.seed};
        if (on_record) on_record(record);
        records.push_back(record);
      }
    }
  }
  return records;
}

void write_csv_row(std::ostream& out, const BenchRecord& record) {
  out << to_string(record.algo) << ',' << mode_of(record.algo) << ',';
  put_number(out, record.n);
  out << ',';
  put_number(out, record.block_size);
  out << ',';
  put_number(out, record.repeats);
  out << ',';
  put_number(out, record.median_seconds);
  out << ',';
  put_number(out, record.seed);
  out << '\n';
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& record : records) write_csv_row(out, record);
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw DomainError("read_csv: missing or unexpected header");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != 7) {
      throw DomainError("read_csv: expected 7 fields, got " + std::to_string(fields.size()));
    }
    const auto algo = parse_algo(fields[0]);
    if (!algo) throw DomainError("read_csv: unknown algo '" + std::string(fields[0]) + "'");
    if (fields[1] != mode_of(*algo)) {
      throw DomainError("read_csv: mode '" + std::string(fields[1]) +
                        "' does not match algo " + std::string(fields[0]));
    }
    records.push_back({*algo, parse_number<std::size_t>(fields[2], "n"),
                       parse_number<std::size_t>(fields[3], "block_size"),
                       parse_number<std::size_t>(fields[4], "repeats"),
                       parse_number<double>(fields[5], "median_seconds"),
                       parse_number<std::uint64_t>(fields[6], "seed")});
  }
  return records;
}

}  // namespace cholgrad
