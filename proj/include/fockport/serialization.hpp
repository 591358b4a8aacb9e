// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON/CSV encodings of states, configs and reports. All emitters are
// deterministic (sorted keys, shortest round-trip doubles, no timestamps)
// so identical configs produce byte-identical files.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockport/metrics.hpp"
#include "fockport/tomography.hpp"

namespace fockport {

using json = nlohmann::json;

struct ChannelConfig {
  TeleportParams params;
  std::optional<AcceptanceWindow> window;
};

// {"modes": m, "cutoff": N, "elements": [[re, im], ...]} row-major.
json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

// {"eta": eta, "alpha": [re, im], "beta": [re, im]}; optional "complement".
json mixture_to_json(const InputMixture& mix);
InputMixture mixture_from_json(const json& j);

// {"g": g, "r": r, "l": l, "window": radius-or-null}.
json channel_to_json(const ChannelConfig& c);
ChannelConfig channel_from_json(const json& j);

json fractions_to_json(const Fractions& f);
json report_to_json(const FidelityReport& rep);

// FNV-1a 64-bit over the compact dump, as a 16-digit hex string.
std::string config_hash(const json& config);

// Column set is fixed: g,f_state,f_qubit,f_thr,vacuum,qubit,multiphoton,
// success_prob. Optional columns are left empty when absent.
std::string sweep_csv_header();
void write_sweep_rows(std::ostream& os, const GainSweep& sweep);
void write_sweep_csv(std::ostream& os, const GainSweep& sweep,
                     const std::string& hash);
void write_samples_csv(std::ostream& os,
                       const std::vector<QuadratureSample>& samples,
                       const std::string& hash);
std::vector<QuadratureSample> read_samples_csv(std::istream& is);

}  // namespace fockport
