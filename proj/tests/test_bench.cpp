#include <clocale>
#include <cmath>
#include <cstring>
#include <sstream>

#include "cholgrad/bench.hpp"
#include "cholgrad/cholesky.hpp"
#include "cholgrad/errors.hpp"
#include "doctest.h"

using namespace cholgrad;

TEST_CASE("random generators") {
  const Matrix a = random_spd(17, 4);
  const Matrix b = random_spd(17, 4);
  CHECK(std::memcmp(a.data().data(), b.data().data(), a.size() * sizeof(double)) == 0);
  CHECK(a == a.transpose());
  CHECK_FALSE(a == random_spd(17, 5));

  Matrix fifty = random_spd(50, 123);
  CHECK_NOTHROW(chol_unblocked(fifty));

  const Matrix s = random_symmetric(9, 1);
  CHECK(s == s.transpose());
  const Matrix l = random_lower(9, 1);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = i + 1; j < 9; ++j) CHECK(l(i, j) == 0.0);
  }
}

TEST_CASE("algorithm names") {
  for (Algo algo : kAllAlgos) CHECK(parse_algo(to_string(algo)) == algo);
  CHECK_FALSE(parse_algo("rev_fancy").has_value());
  CHECK_FALSE(parse_algo("").has_value());
  CHECK(mode_of(Algo::chol_blocked) == "factor");
  CHECK(mode_of(Algo::fwd_symbolic) == "forward");
  CHECK(mode_of(Algo::rev_unblocked) == "reverse");
  CHECK(is_blocked(Algo::rev_blocked));
  CHECK_FALSE(is_blocked(Algo::rev_symbolic));
}

TEST_CASE("median_time") {
  int setups = 0;
  int runs = 0;
  const double t = median_time(5, [&] { ++setups; }, [&] { ++runs; });
  CHECK(setups == 5);
  CHECK(runs == 5);
  CHECK(t > 0.0);
}

TEST_CASE("run_bench record counts") {
  BenchConfig config;
  config.sizes = {12};
  config.block_sizes = {4};
  config.algos = {Algo::rev_blocked};
  config.repeats = 3;
  CHECK(run_bench(config).size() == 1);

  config.sizes = {5, 9};
  config.block_sizes = {2, 3};
  config.algos = {std::begin(kAllAlgos), std::end(kAllAlgos)};
  std::size_t streamed = 0;
  const auto records = run_bench(config, [&](const BenchRecord&) { ++streamed; });
  // Per size: 5 unblocked algorithms plus 3 blocked ones times 2 block sizes.
  CHECK(records.size() == 2 * (5 + 3 * 2));
  CHECK(streamed == records.size());
  for (const auto& r : records) {
    CHECK(r.repeats == 3);
    CHECK(r.median_seconds > 0.0);
    CHECK((r.block_size == 0) == !is_blocked(r.algo));
  }
}

TEST_CASE("run_bench rejects bad configurations") {
  BenchConfig config;
  config.sizes = {};
  CHECK_THROWS_AS(run_bench(config), DomainError);
  config.sizes = {4};
  config.repeats = 2;
  CHECK_THROWS_AS(run_bench(config), DomainError);
  config.repeats = 3;
  config.block_sizes = {0};
  CHECK_THROWS_AS(run_bench(config), DomainError);
  config.block_sizes = {2};
  config.sizes = {0};
  CHECK_THROWS_AS(run_bench(config), DomainError);
}

TEST_CASE("CSV round trip") {
  const std::vector<BenchRecord> records{
      {Algo::chol_unblocked, 256, 0, 5, 0.0123456789012345678, 0},
      {Algo::rev_blocked, 2048, 64, 3, 1.5e-7, 18446744073709551615ull},
      {Algo::fwd_symbolic, 1, 0, 7, 3.0, 42},
  };
  // A comma decimal separator must not leak into the output.
  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  std::stringstream ss;
  write_csv(ss, records);
  std::setlocale(LC_NUMERIC, "C");
  const std::string text = ss.str();
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find("rev_blocked,reverse,2048,64,3,1.5e-07,18446744073709551615\n") != std::string::npos);
  std::istringstream in(text);
  CHECK(read_csv(in) == records);
}

TEST_CASE("CSV decoding errors") {
  auto decode = [](const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
  };
  const std::string header = std::string(kCsvHeader) + "\n";
  CHECK(decode(header).empty());
  CHECK_THROWS_AS(decode(""), DomainError);
  CHECK_THROWS_AS(decode("algo,n\n"), DomainError);
  CHECK_THROWS_AS(decode(header + "chol_blocked,factor,8,2,3,0.1\n"), DomainError);
  CHECK_THROWS_AS(decode(header + "chol_magic,factor,8,2,3,0.1,0\n"), DomainError);
  CHECK_THROWS_AS(decode(header + "chol_blocked,reverse,8,2,3,0.1,0\n"), DomainError);
  CHECK_THROWS_AS(decode(header + "chol_blocked,factor,8x,2,3,0.1,0\n"), DomainError);
  CHECK_THROWS_AS(decode(header + "chol_blocked,factor,8,2,3,0,1,0\n"), DomainError);
}
