// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <cmath>
#include <sstream>

#include "fockport/rng.hpp"
#include "fockport/serialization.hpp"

using namespace fockport;

namespace {

DensityMatrix random_density(int modes, int cutoff, std::uint64_t stream) {
  FockSpace s(modes, cutoff);
  std::mt19937_64 rng = stream_rng(99, stream);
  Matrix a(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      a(i, j) = cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
  Matrix m = a * a.adjoint();
  m /= m.trace().real();
  return DensityMatrix(s, std::move(m));
}

}  // namespace

TEST_CASE("density matrices survive a json round trip bit for bit") {
  for (auto [modes, cutoff] : {std::pair{1, 6}, std::pair{2, 3}}) {
    DensityMatrix rho = random_density(modes, cutoff, 10 * modes + cutoff);
    DensityMatrix back = density_from_json(density_to_json(rho));
    CHECK(back.space == rho.space);
    CHECK((back.rho - rho.rho).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("density_from_json rejects a wrong element count") {
  json j = density_to_json(random_density(1, 3, 5));
  j["elements"].erase(0);
  CHECK_THROWS_AS(density_from_json(j), std::invalid_argument);
}

TEST_CASE("mixture round trip with and without a complement") {
  InputMixture mix;
  mix.eta = 0.69;
  mix.qubit = DualRailQubit(cplx(2.0 / std::sqrt(5.0), 0.0),
                            cplx(-1.0 / std::sqrt(5.0), 0.0));
  InputMixture back = mixture_from_json(mixture_to_json(mix));
  CHECK(back.eta == mix.eta);
  CHECK(back.qubit.alpha == mix.qubit.alpha);
  CHECK(back.qubit.beta == mix.qubit.beta);
  CHECK(!back.complement.has_value());

  FockSpace s(2, 2);
  Matrix vac = Matrix::Zero(s.dim(), s.dim());
  vac(0, 0) = 1.0;
  mix.complement = DensityMatrix(s, vac);
  back = mixture_from_json(mixture_to_json(mix));
  REQUIRE(back.complement.has_value());
  CHECK((back.complement->rho - vac).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("channel config round trip preserves the optional window") {
  ChannelConfig c{{0.79, 1.01, 0.25}, std::nullopt};
  json j = channel_to_json(c);
  CHECK(j["window"].is_null());
  ChannelConfig back = channel_from_json(j);
  CHECK(back.params.g == 0.79);
  CHECK(back.params.r == 1.01);
  CHECK(back.params.l == 0.25);
  CHECK(!back.window.has_value());

  c.window = AcceptanceWindow{0.4};
  back = channel_from_json(channel_to_json(c));
  REQUIRE(back.window.has_value());
  CHECK(back.window->radius == 0.4);

  // "l" may be omitted on input and defaults to zero
  back = channel_from_json(json{{"g", 1.0}, {"r", 0.71}});
  CHECK(back.params.l == 0.0);
}

TEST_CASE("report json uses null for absent optional fields") {
  FidelityReport rep;
  rep.f_state = 0.8;
  rep.f_thr = 0.77;
  rep.eta_in = 0.69;
  json j = report_to_json(rep);
  CHECK(j["f_qubit"].is_null());
  CHECK(j["success_prob"].is_null());
  CHECK(j["fractions"].contains("qubit_block"));
  CHECK(j["fractions"]["qubit_block"].size() == 4);

  rep.f_qubit = 0.9;
  rep.success_prob = 0.4;
  j = report_to_json(rep);
  CHECK(j["f_qubit"].get<double>() == 0.9);
  CHECK(j["success_prob"].get<double>() == 0.4);
}

TEST_CASE("config hash is 16 hex digits, stable, and content sensitive") {
  json cfg{{"command", "teleport"}, {"seed", 20260825}};
  std::string h1 = config_hash(cfg);
  CHECK(h1.size() == 16);
  for (char c : h1) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
  CHECK(config_hash(cfg) == h1);
  cfg["seed"] = 20260826;
  CHECK(config_hash(cfg) != h1);
}

TEST_CASE("sweep csv layout: hash line, header, one row per point") {
  GainSweep sweep;
  GainPoint a;
  a.g = 0.63;
  a.report.f_state = 0.825;
  a.report.f_qubit = 0.998;
  a.report.f_thr = 0.77;
  a.report.fractions_out.vacuum = 0.72;
  a.report.fractions_out.qubit = 0.27;
  a.report.fractions_out.multiphoton = 0.01;
  a.report.success_prob = 0.39;
  GainPoint b = a;
  b.g = 1.0;
  b.report.f_qubit.reset();
  b.report.success_prob.reset();
  sweep.points = {a, b};
  sweep.g_best = 0.63;

  std::ostringstream os;
  write_sweep_csv(os, sweep, "deadbeefdeadbeef");
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "# config_hash=deadbeefdeadbeef");
  REQUIRE(std::getline(is, line));
  CHECK(line == sweep_csv_header());
  REQUIRE(std::getline(is, line));
  CHECK(line.rfind("0.63,", 0) == 0);
  CHECK(line.find(",,") == std::string::npos);
  REQUIRE(std::getline(is, line));
  // optional columns are empty: f_qubit slot and trailing success_prob
  CHECK(line.find(",,") != std::string::npos);
  CHECK(line.back() == ',');
  CHECK(!std::getline(is, line));
}

TEST_CASE("samples csv round trip is exact") {
  std::vector<QuadratureSample> samples = {
      {0.0, -1.234567890123456789}, {0.2617993877991494, 0.5}, {3.1, 1e-17}};
  std::ostringstream os;
  write_samples_csv(os, samples, "0123456789abcdef");
  std::istringstream is(os.str());
  std::vector<QuadratureSample> back = read_samples_csv(is);
  REQUIRE(back.size() == samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i].phase == samples[i].phase);
    CHECK(back[i].value == samples[i].value);
  }
}

TEST_CASE("samples csv reader skips comments and rejects junk") {
  std::istringstream ok("# config_hash=x\ntheta,x\n0.5,1.25\n\n1.0,-0.5\n");
  std::vector<QuadratureSample> rows = read_samples_csv(ok);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].phase == 0.5);
  CHECK(rows[1].value == -0.5);

  std::istringstream bad("theta,x\n0.5;1.25\n");
  CHECK_THROWS_AS(read_samples_csv(bad), std::invalid_argument);
  std::istringstream bad2("0.5\n");
  CHECK_THROWS_AS(read_samples_csv(bad2), std::invalid_argument);
}
