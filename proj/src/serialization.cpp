// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#include "fockport/serialization.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fockport {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected [re, im] pair");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

json density_to_json(const DensityMatrix& rho) {
  json elems = json::array();
  int d = rho.space.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) elems.push_back(cplx_to_json(rho.rho(i, j)));
  return json{{"modes", rho.space.modes},
              {"cutoff", rho.space.cutoff},
              {"elements", std::move(elems)}};
}

DensityMatrix density_from_json(const json& j) {
  FockSpace space(j.at("modes").get<int>(), j.at("cutoff").get<int>());
  int d = space.dim();
  const json& elems = j.at("elements");
  if (!elems.is_array() || int(elems.size()) != d * d)
    throw std::invalid_argument("density_from_json: wrong element count");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      m(i, k) = cplx_from_json(elems[size_t(i) * d + k]);
  return DensityMatrix(space, std::move(m), true);
}

json mixture_to_json(const InputMixture& mix) {
  json j{{"eta", mix.eta},
         {"alpha", cplx_to_json(mix.qubit.alpha)},
         {"beta", cplx_to_json(mix.qubit.beta)}};
  if (mix.complement) j["complement"] = density_to_json(*mix.complement);
  return j;
}

InputMixture mixture_from_json(const json& j) {
  InputMixture mix;
  mix.eta = j.at("eta").get<double>();
  mix.qubit = DualRailQubit(cplx_from_json(j.at("alpha")),
                            cplx_from_json(j.at("beta")));
  if (j.contains("complement") && !j["complement"].is_null())
    mix.complement = density_from_json(j["complement"]);
  return mix;
}

json channel_to_json(const ChannelConfig& c) {
  json j{{"g", c.params.g}, {"r", c.params.r}, {"l", c.params.l}};
  j["window"] = c.window ? json(c.window->radius) : json(nullptr);
  return j;
}

ChannelConfig channel_from_json(const json& j) {
  ChannelConfig c;
  c.params.g = j.at("g").get<double>();
  c.params.r = j.at("r").get<double>();
  c.params.l = j.value("l", 0.0);
  if (j.contains("window") && !j["window"].is_null())
    c.window = AcceptanceWindow{j["window"].get<double>()};
  return c;
}

json fractions_to_json(const Fractions& f) {
  json blk = json::array();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) blk.push_back(cplx_to_json(f.qubit_block(i, k)));
  return json{{"vacuum", f.vacuum},
              {"qubit", f.qubit},
              {"multiphoton", f.multiphoton},
              {"qubit_block", std::move(blk)}};
}

json report_to_json(const FidelityReport& rep) {
  json j{{"f_state", rep.f_state},
         {"f_thr", rep.f_thr},
         {"eta_in", rep.eta_in},
         {"fractions", fractions_to_json(rep.fractions_out)}};
  j["f_qubit"] = rep.f_qubit ? json(*rep.f_qubit) : json(nullptr);
  j["success_prob"] = rep.success_prob ? json(*rep.success_prob) : json(nullptr);
  return j;
}

std::string config_hash(const json& config) {
  std::string dump = config.dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string sweep_csv_header() {
  return "g,f_state,f_qubit,f_thr,vacuum,qubit,multiphoton,success_prob";
}

void write_sweep_rows(std::ostream& os, const GainSweep& sweep) {
  for (const GainPoint& p : sweep.points) {
    const FidelityReport& r = p.report;
    os << fmt(p.g) << ',' << fmt(r.f_state) << ','
       << (r.f_qubit ? fmt(*r.f_qubit) : std::string()) << ',' << fmt(r.f_thr)
       << ',' << fmt(r.fractions_out.vacuum) << ','
       << fmt(r.fractions_out.qubit) << ',' << fmt(r.fractions_out.multiphoton)
       << ',' << (r.success_prob ? fmt(*r.success_prob) : std::string())
       << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const GainSweep& sweep,
                     const std::string& hash) {
  os << "# config_hash=" << hash << '\n' << sweep_csv_header() << '\n';
  write_sweep_rows(os, sweep);
}

void write_samples_csv(std::ostream& os,
                       const std::vector<QuadratureSample>& samples,
                       const std::string& hash) {
  os << "# config_hash=" << hash << "\ntheta,x\n";
  for (const QuadratureSample& s : samples)
    os << fmt(s.phase) << ',' << fmt(s.value) << '\n';
}

std::vector<QuadratureSample> read_samples_csv(std::istream& is) {
  std::vector<QuadratureSample> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("theta", 0) == 0) continue;
    std::istringstream ss(line);
    QuadratureSample s{};
    char comma = 0;
    if (!(ss >> s.phase >> comma >> s.value) || comma != ',')
      throw std::invalid_argument("read_samples_csv: malformed row: " + line);
    out.push_back(s);
  }
  return out;
}

}  // namespace fockport
