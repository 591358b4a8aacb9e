// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "fockport/exec.hpp"
#include "fockport/rng.hpp"

using namespace fockport;

TEST_CASE("chunked_reduce sums every chunk exactly once") {
  long total = exec::chunked_reduce<long>(
      37, [](int c) { return long(c) * c; },
      [](long& acc, long part) { acc += part; }, 0L);
  long expected = 0;
  for (int c = 0; c < 37; ++c) expected += long(c) * c;
  CHECK(total == expected);
}

TEST_CASE("fold order makes results independent of the thread count") {
  // 1/(c+3) sums are not associative in floating point, so any reordering
  // of the fold would show up as a bitwise difference.
  auto run = [](int threads) {
    return exec::chunked_reduce<double>(
        101, [](int c) { return 1.0 / (c + 3); },
        [](double& acc, double part) { acc += part; }, 0.0, threads);
  };
  double serial = run(1);
  CHECK(run(4) == serial);
  CHECK(run(16) == serial);
}

TEST_CASE("chunked_reduce handles vector accumulators") {
  std::vector<double> out = exec::chunked_reduce<std::vector<double>>(
      8,
      [](int c) {
        return std::vector<double>{double(c), double(2 * c)};
      },
      [](std::vector<double>& acc, std::vector<double> part) {
        if (acc.size() < part.size()) acc.resize(part.size(), 0.0);
        for (size_t i = 0; i < part.size(); ++i) acc[i] += part[i];
      },
      {});
  REQUIRE(out.size() == 2);
  CHECK(out[0] == 28.0);
  CHECK(out[1] == 56.0);
}

TEST_CASE("thread_count honors FOCKPORT_THREADS") {
  setenv("FOCKPORT_THREADS", "3", 1);
  CHECK(exec::thread_count() == 3);
  setenv("FOCKPORT_THREADS", "1", 1);
  CHECK(exec::thread_count() == 1);
  // invalid or non-positive values fall back to a sane default
  setenv("FOCKPORT_THREADS", "abc", 1);
  CHECK(exec::thread_count() >= 1);
  setenv("FOCKPORT_THREADS", "0", 1);
  CHECK(exec::thread_count() >= 1);
  setenv("FOCKPORT_THREADS", "-2", 1);
  CHECK(exec::thread_count() >= 1);
  unsetenv("FOCKPORT_THREADS");
  CHECK(exec::thread_count() >= 1);
}

TEST_CASE("stream rng is deterministic and stream separated") {
  std::mt19937_64 a = stream_rng(123, 7);
  std::mt19937_64 b = stream_rng(123, 7);
  std::mt19937_64 c = stream_rng(123, 8);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    std::uint64_t va = a(), vb = b(), vc = c();
    all_equal = all_equal && va == vb;
    any_diff = any_diff || va != vc;
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform01 stays in [0, 1) and covers the range") {
  std::mt19937_64 g = stream_rng(5, 0);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 20000; ++i) {
    double u = uniform01(g);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
}
