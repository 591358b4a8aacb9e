// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance runner: executes the numbered acceptance checks and prints one
// PASS/FAIL line per criterion.
//
//   acceptance [--only K]... [--seed N] [--cli PATH]
//
// --cli is required only by criterion 10. Exit code 0 iff every executed
// criterion passes.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "fockport/criteria.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20260825;
  std::string cli;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    auto next = [&]() -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", arg.c_str());
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--only") {
      only.push_back(std::atoi(next()));
    } else if (arg == "--seed") {
      seed = std::strtoull(next(), nullptr, 10);
    } else if (arg == "--cli") {
      cli = next();
    } else {
      std::fprintf(stderr, "unknown argument: %s\n", arg.c_str());
      return 2;
    }
  }

  const std::vector<int>& ids =
      only.empty() ? fockport::criteria::all_ids() : only;
  int failed = 0;
  for (int id : ids) {
    fockport::criteria::CriterionResult res =
        fockport::criteria::run_criterion(id, seed, cli);
    std::printf("%s  c%-2d %-42s (%.2f s)\n", res.pass ? "PASS" : "FAIL",
                res.id, res.name.c_str(), res.seconds);
    std::printf("      %s\n", res.details.c_str());
    std::fflush(stdout);
    if (!res.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", ids.size() - size_t(failed),
              ids.size());
  return failed == 0 ? 0 : 1;
}
