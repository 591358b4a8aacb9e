// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// The acceptance checks behind `fockport reproduce` and the standalone
// acceptance runner. Each criterion re-derives its expected values
// independently of the code paths it exercises and reports pass/fail at a
// fixed tolerance. Artifacts contain no timing, so reruns with the same
// seed are byte-identical.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fockport/serialization.hpp"

namespace fockport::criteria {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool informational = false;  // excluded from the pass/fail summary
  std::string details;
  json artifact;
  double seconds = 0.0;  // console-only; never serialized
};

inline const std::vector<int>& all_ids() {
  static const std::vector<int> ids{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  return ids;
}

// cli_path is only needed by criterion 10 (it shells out to the binary);
// empty cli_path makes criterion 10 fail with an explanatory message.
CriterionResult run_criterion(int id, std::uint64_t seed,
                              const std::string& cli_path = "");

// Informational rerun of the reference-value envelope with the resource
// loss forced to zero; demonstrates the lossless-model overshoot.
CriterionResult lossless_envelope_demo(std::uint64_t seed);

json manifest(const std::vector<CriterionResult>& results, std::uint64_t seed);

}  // namespace fockport::criteria
