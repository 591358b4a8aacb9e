// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#include "fockport/criteria.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>

#include "fockport/channel.hpp"
#include "fockport/metrics.hpp"
#include "fockport/qubit.hpp"
#include "fockport/rng.hpp"
#include "fockport/tomography.hpp"

namespace fockport::criteria {

namespace {

std::string fmt(double v, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ull * (tag + 1));
  std::uint64_t out = splitmix64_next(s);
  return out ^ splitmix64_next(s);
}

DualRailQubit bloch_qubit(std::mt19937_64& rng) {
  double costh = 2.0 * uniform01(rng) - 1.0;
  double phi = 2.0 * M_PI * uniform01(rng);
  double th = std::acos(std::clamp(costh, -1.0, 1.0));
  return DualRailQubit(cplx(std::cos(0.5 * th), 0.0),
                       std::sin(0.5 * th) * std::exp(cplx(0.0, phi)));
}

DualRailQubit psi_plus_i() {
  return DualRailQubit(cplx(M_SQRT1_2, 0.0), cplx(0.0, -M_SQRT1_2));
}

DualRailQubit psi_lopsided() {
  return DualRailQubit(cplx(2.0 / std::sqrt(5.0), 0.0),
                       cplx(-1.0 / std::sqrt(5.0), 0.0));
}

// 1. At g = tanh r and a lossless resource the dual-rail channel reduces to
// pure attenuation: out = g^2 |psi><psi| + (1 - g^2) |0,0><0,0|.
CriterionResult c1(std::uint64_t) {
  CriterionResult res{1, "ideal-gain attenuation identity"};
  FockSpace space(2, 12);
  struct Case {
    const char* label;
    DualRailQubit q;
  };
  const Case cases[] = {
      {"e1", DualRailQubit(cplx(1.0, 0.0), cplx(0.0, 0.0))},
      {"e2", DualRailQubit(cplx(0.0, 0.0), cplx(1.0, 0.0))},
      {"circular", psi_plus_i()},
      {"lopsided", psi_lopsided()},
  };
  double worst = 0.0;
  json rows = json::array();
  for (double r : {0.71, 1.01, 1.56}) {
    double g = optimal_gain(r);
    for (const Case& c : cases) {
      DensityMatrix in = encode_qubit(c.q, space).to_density();
      DensityMatrix out = teleport_dual_rail(in, TeleportParams{g, r, 0.0});
      Matrix expected = (g * g) * in.rho;
      expected(0, 0) += 1.0 - g * g;
      double err = (out.rho - expected).cwiseAbs().maxCoeff();
      worst = std::max(worst, err);
      rows.push_back(json{{"r", r}, {"state", c.label}, {"max_err", err}});
    }
  }
  res.pass = worst <= 1e-6;
  res.details = "max entrywise deviation " + fmt(worst, "%.3g") + " (tol 1e-6)";
  res.artifact = json{{"tolerance", 1e-6}, {"max_error", worst},
                      {"cases", std::move(rows)}};
  return res;
}

// 2. Closed-form photon transfer probabilities against both channel
// realizations on a (g, q) grid.
CriterionResult c2(std::uint64_t) {
  CriterionResult res{2, "photon transfer closed form vs channel"};
  FockSpace space(1, 20);
  int d = space.levels();
  const double gs[] = {0.5, 0.63, 0.79, 0.9, 1.0};
  const double qs[] = {0.0, 0.2, 0.4, std::tanh(0.71), std::tanh(1.01)};
  double worst_kraus = 0.0, worst_transfer = 0.0;
  for (double g : gs) {
    for (double q : qs) {
      TeleportParams p{g, std::atanh(q), 0.0};
      std::vector<KrausSet> stages = teleport_mode(space, p);
      for (int i = 0; i <= 1; ++i) {
        Matrix m = Matrix::Zero(d, d);
        m(i, i) = 1.0;
        DensityMatrix in(space, std::move(m));
        DensityMatrix out = in;
        for (const KrausSet& ks : stages) out = apply_kraus(ks, out);
        DensityMatrix ti = transfer_operator_channel(in, p);
        for (int n = 0; n < d; ++n) {
          double closed = photon_transfer_prob(i, n, g, q);
          worst_kraus =
              std::max(worst_kraus, std::abs(out.rho(n, n).real() - closed));
          worst_transfer =
              std::max(worst_transfer, std::abs(ti.rho(n, n).real() - closed));
        }
      }
    }
  }
  res.pass = worst_kraus <= 1e-6 && worst_transfer <= 1e-4;
  res.details = "Kraus composition off by " + fmt(worst_kraus, "%.3g") +
                " (tol 1e-6), transfer integral by " +
                fmt(worst_transfer, "%.3g") + " (tol 1e-4)";
  res.artifact = json{{"kraus_error", worst_kraus},
                      {"transfer_error", worst_transfer},
                      {"kraus_tolerance", 1e-6},
                      {"transfer_tolerance", 1e-4}};
  return res;
}

// 3. Classical benchmark: analytic optimum, Monte Carlo agreement, and the
// reference threshold at eta = 0.693.
CriterionResult c3(std::uint64_t seed) {
  CriterionResult res{3, "classical bound"};
  double worst_opt = 0.0, worst_dev_se = 0.0;
  json rows = json::array();
  for (int i = 1; i <= 10; ++i) {
    double eta = 0.1 * i;
    StrategyOptimum opt = optimize_classical_strategy(eta);
    double ey = (1.0 - eta) / (3.0 - eta);
    double ef = 1.0 - eta / 3.0;
    double err = std::max({std::abs(opt.strategy.x),
                           std::abs(opt.strategy.y - ey),
                           std::abs(opt.fidelity - ef)});
    worst_opt = std::max(worst_opt, err);
    MCResult mc = simulate_classical_teleporter(
        eta, ClassicalStrategy{0.0, ey}, psi_plus_i(), 1000000,
        derive_seed(seed, 300 + std::uint64_t(i)));
    double dev_se = mc.std_error > 0.0
                        ? std::abs(mc.fidelity - ef) / mc.std_error
                        : (std::abs(mc.fidelity - ef) > 0.0 ? 1e9 : 0.0);
    worst_dev_se = std::max(worst_dev_se, dev_se);
    rows.push_back(json{{"eta", eta},
                        {"optimum_error", err},
                        {"mc_fidelity", mc.fidelity},
                        {"mc_std_error", mc.std_error},
                        {"deviation_in_se", dev_se}});
  }
  double f0693 = optimize_classical_strategy(0.693).fidelity;
  bool thr_ok = std::abs(f0693 - 0.769) <= 5e-4;
  res.pass = worst_opt <= 1e-9 && worst_dev_se <= 4.0 && thr_ok;
  res.details = "optimum off by " + fmt(worst_opt, "%.3g") +
                " (tol 1e-9), worst MC deviation " + fmt(worst_dev_se, "%.2f") +
                " se (tol 4), F*(0.693) = " + fmt(f0693, "%.6f");
  res.artifact = json{{"rows", std::move(rows)},
                      {"f_star_0693", f0693},
                      {"optimum_tolerance", 1e-9},
                      {"mc_se_tolerance", 4.0}};
  return res;
}

// 4. F_state and F_qubit from the full pipeline do not depend on the
// encoded qubit.
CriterionResult c4(std::uint64_t seed) {
  CriterionResult res{4, "qubit independence"};
  FockSpace space(2, 12);
  TeleportParams p{0.79, 1.01, 0.25};
  std::mt19937_64 rng = stream_rng(seed, 400);
  double smin = 1.0, smax = 0.0, qmin = 1.0, qmax = 0.0;
  json rows = json::array();
  for (int k = 0; k < 8; ++k) {
    InputMixture mix;
    mix.eta = 0.69;
    mix.qubit = bloch_qubit(rng);
    FidelityReport rep = fidelity_report(mix, p, space);
    double fq = rep.f_qubit.value();
    smin = std::min(smin, rep.f_state);
    smax = std::max(smax, rep.f_state);
    qmin = std::min(qmin, fq);
    qmax = std::max(qmax, fq);
    rows.push_back(json{{"alpha", {mix.qubit.alpha.real(),
                                   mix.qubit.alpha.imag()}},
                        {"beta", {mix.qubit.beta.real(),
                                  mix.qubit.beta.imag()}},
                        {"f_state", rep.f_state},
                        {"f_qubit", fq}});
  }
  double spread_s = smax - smin, spread_q = qmax - qmin;
  res.pass = spread_s <= 1e-9 && spread_q <= 1e-9;
  res.details = "F_state spread " + fmt(spread_s, "%.3g") +
                ", F_qubit spread " + fmt(spread_q, "%.3g") + " (tol 1e-9)";
  res.artifact = json{{"qubits", std::move(rows)},
                      {"f_state_spread", spread_s},
                      {"f_qubit_spread", spread_q},
                      {"tolerance", 1e-9}};
  return res;
}

// 5. F_qubit peaks at g = tanh r: fine sweep localizes the argmax, the
// coarse experimental grid picks the expected entry.
CriterionResult c5(std::uint64_t) {
  CriterionResult res{5, "optimal gain location"};
  InputMixture mix;
  mix.eta = 0.69;
  mix.qubit = psi_plus_i();
  bool ok = true;
  json rows = json::array();
  for (double r : {0.71, 1.01}) {
    std::vector<double> fine;
    for (int i = 0; i <= 700; ++i) fine.push_back(0.30 + 0.001 * i);
    GainSweep sw = sweep_gain(mix, r, 0.0, fine, FockSpace(2, 8));
    double err = std::abs(sw.g_best - std::tanh(r));
    ok = ok && err <= 0.005;
    rows.push_back(json{{"r", r},
                        {"mode", "fine"},
                        {"g_best", sw.g_best},
                        {"argmax_error", err}});
  }
  const std::vector<double> coarse{0.50, 0.63, 0.79, 1.0};
  const double expected[] = {0.63, 0.79};
  int idx = 0;
  for (double r : {0.71, 1.01}) {
    GainSweep sw = sweep_gain(mix, r, 0.0, coarse, FockSpace(2, 12));
    bool hit = std::abs(sw.g_best - expected[idx]) <= 1e-12;
    ok = ok && hit;
    json pts = json::array();
    for (const GainPoint& p : sw.points)
      pts.push_back(json{{"g", p.g},
                         {"f_qubit", p.report.f_qubit.value()}});
    rows.push_back(json{{"r", r},
                        {"mode", "coarse"},
                        {"g_best", sw.g_best},
                        {"expected", expected[idx]},
                        {"points", std::move(pts)}});
    ++idx;
  }
  res.pass = ok;
  res.details = ok ? "fine argmax within 0.005 of tanh r; coarse grid picks "
                     "0.63 / 0.79"
                   : "argmax check failed; see artifact";
  res.artifact = json{{"sweeps", std::move(rows)}};
  return res;
}

// 6. Reference-value envelope: scan the resource loss over the stated range
// and test the published fidelity windows, the lossless dominance direction,
// and the success probability.
CriterionResult c6(std::uint64_t) {
  CriterionResult res{6, "reference-value envelope"};
  FockSpace space(2, 12);
  InputMixture mix;
  mix.eta = 0.69;
  mix.qubit = psi_plus_i();
  bool exists = false;
  double l_found = -1.0, max_fs = 0.0, max_fq = 0.0;
  json rows = json::array();
  for (int i = 0; i <= 30; ++i) {
    double l = 0.17 + 0.005 * i;
    FidelityReport rep = fidelity_report(mix, TeleportParams{0.79, 1.01, l},
                                         space);
    double fq = rep.f_qubit.value();
    bool in_s = std::abs(rep.f_state - 0.817) <= 0.02;
    bool in_q = std::abs(fq - 0.875) <= 0.04;
    if (in_s && in_q && !exists) {
      exists = true;
      l_found = l;
    }
    max_fs = std::max(max_fs, rep.f_state);
    max_fq = std::max(max_fq, fq);
    rows.push_back(json{{"l", l},
                        {"f_state", rep.f_state},
                        {"f_qubit", fq},
                        {"in_state_window", in_s},
                        {"in_qubit_window", in_q}});
  }
  FidelityReport lossless =
      fidelity_report(mix, TeleportParams{0.79, 1.01, 0.0}, space);
  bool dominance = lossless.f_state > max_fs &&
                   lossless.f_qubit.value() > max_fq;
  FidelityReport succ =
      fidelity_report(mix, TeleportParams{0.63, 0.71, 0.0}, space);
  double sp = succ.success_prob.value();
  bool sp_g2 = std::abs(sp - 0.63 * 0.63) <= 5e-4;
  bool sp_ref = std::abs(sp - 0.43) <= 0.04;
  res.pass = exists && dominance && sp_g2 && sp_ref;
  std::ostringstream os;
  if (exists)
    os << "joint window hit at l = " << fmt(l_found, "%.3f");
  else
    os << "no l in [0.17, 0.32] lands in both windows (max F_state "
       << fmt(max_fs, "%.4f") << " vs needed >= 0.797, max F_qubit "
       << fmt(max_fq, "%.4f") << ")";
  os << "; lossless dominance " << (dominance ? "holds" : "FAILS")
     << "; success prob " << fmt(sp, "%.4f") << " vs g^2 "
     << (sp_g2 ? "ok" : "FAILS") << ", vs 0.43+-0.04 "
     << (sp_ref ? "ok" : "FAILS");
  res.details = os.str();
  res.artifact = json{{"scan", std::move(rows)},
                      {"window_hit", exists},
                      {"l_found", l_found},
                      {"lossless_f_state", lossless.f_state},
                      {"lossless_f_qubit", lossless.f_qubit.value()},
                      {"lossless_dominates", dominance},
                      {"success_prob", sp},
                      {"state_window", {0.797, 0.837}},
                      {"qubit_window", {0.835, 0.915}}};
  return res;
}

// 7. Tuned gain suppresses extra photons relative to unit gain.
CriterionResult c7(std::uint64_t) {
  CriterionResult res{7, "gain tuning suppresses extra photons"};
  FockSpace space(2, 12);
  InputMixture mix;
  mix.eta = 0.69;
  mix.qubit = psi_plus_i();
  bool ok = true;
  double min_margin = 1.0;
  json rows = json::array();
  for (double r : {0.71, 1.01, 1.56}) {
    for (double l : {0.0, 0.25}) {
      FidelityReport unit =
          fidelity_report(mix, TeleportParams{1.0, r, l}, space);
      FidelityReport tuned =
          fidelity_report(mix, TeleportParams{optimal_gain(r), r, l}, space);
      double margin =
          unit.fractions_out.multiphoton - tuned.fractions_out.multiphoton;
      ok = ok && margin > 0.0;
      min_margin = std::min(min_margin, margin);
      rows.push_back(json{{"r", r},
                          {"l", l},
                          {"multiphoton_unit_gain",
                           unit.fractions_out.multiphoton},
                          {"multiphoton_tuned_gain",
                           tuned.fractions_out.multiphoton},
                          {"margin", margin}});
    }
  }
  res.pass = ok;
  res.details = std::string("multiphoton suppression ") +
                (ok ? "holds" : "FAILS") + " on all 6 settings; min margin " +
                fmt(min_margin, "%.4f");
  res.artifact = json{{"rows", std::move(rows)}, {"min_margin", min_margin}};
  return res;
}

// 8. Post-selecting small Bell outcomes raises the qubit-block fidelity at
// low squeezing; a wide window recovers the unconditional channel.
CriterionResult c8(std::uint64_t) {
  CriterionResult res{8, "conditional teleportation"};
  double q = 0.3;
  TeleportParams p{1.0, std::atanh(q), 0.0};
  FockSpace space(2, 10);
  InputMixture mix;
  mix.eta = 1.0;
  mix.qubit = psi_plus_i();
  DensityMatrix in = input_density(mix, space);
  DensityMatrix uncond = teleport_dual_rail(in, p);
  double f_uncond = qubit_fidelity(uncond, mix.qubit);
  ConditionalResult tight = conditional_teleport(in, p, AcceptanceWindow{0.5});
  double f_tight = qubit_fidelity(tight.state, mix.qubit);
  ConditionalResult wide = conditional_teleport(in, p, AcceptanceWindow{6.0});
  Matrix renorm = wide.state.rho / wide.acceptance_prob;
  double conv = (renorm - uncond.rho).cwiseAbs().maxCoeff();
  bool gain = f_tight > f_uncond;
  bool partial = tight.acceptance_prob < 1.0;
  bool converges = conv <= 1e-3;
  res.pass = gain && partial && converges;
  res.details = "B=0.5: F_qubit " + fmt(f_tight, "%.4f") + " vs unconditional " +
                fmt(f_uncond, "%.4f") + ", acceptance " +
                fmt(tight.acceptance_prob, "%.4g") + "; B=6 deviation " +
                fmt(conv, "%.3g") + " (tol 1e-3)";
  res.artifact = json{{"q", q},
                      {"f_unconditional", f_uncond},
                      {"f_conditional_tight", f_tight},
                      {"acceptance_tight", tight.acceptance_prob},
                      {"acceptance_wide", wide.acceptance_prob},
                      {"wide_window_deviation", conv}};
  return res;
}

// 9. Homodyne sampling and maximum-likelihood reconstruction round trip on
// random pure states.
CriterionResult c9(std::uint64_t seed) {
  CriterionResult res{9, "tomography round trip"};
  TomographySettings set;
  set.phases = 12;
  set.samples_per_phase = 8333;
  set.cutoff = 5;
  bool ok = true;
  double min_f = 1.0;
  json rows = json::array();
  for (int k = 0; k < 10; ++k) {
    std::mt19937_64 rng = stream_rng(seed, 910 + std::uint64_t(k));
    int d = set.cutoff + 1;
    Vector amp(d);
    for (int i = 0; i < d; ++i) {
      double w = -std::log(std::max(uniform01(rng), 1e-300));
      double phi = 2.0 * M_PI * uniform01(rng);
      amp(i) = std::sqrt(w) * std::exp(cplx(0.0, phi));
    }
    amp /= amp.norm();
    PureState truth(FockSpace(1, set.cutoff), std::move(amp));
    set.seed = derive_seed(seed, 920 + std::uint64_t(k));
    std::vector<QuadratureSample> samples =
        sample_homodyne(truth.to_density(), set);
    Reconstruction rec = mle_reconstruct(samples, set);
    double f = uhlmann_fidelity(truth.to_density(), rec.state);
    bool monotone = true;
    for (size_t t = 1; t < rec.loglik_trace.size(); ++t)
      monotone = monotone &&
                 rec.loglik_trace[t] >= rec.loglik_trace[t - 1] - 1e-9;
    ok = ok && f >= 0.98 && monotone;
    min_f = std::min(min_f, f);
    rows.push_back(json{{"state", k},
                        {"fidelity", f},
                        {"iterations", rec.iterations},
                        {"monotone", monotone}});
  }
  res.pass = ok;
  res.details = "min reconstruction fidelity " + fmt(min_f, "%.4f") +
                " (tol 0.98); likelihood monotone on all states";
  res.artifact = json{{"states", std::move(rows)}, {"min_fidelity", min_f}};
  return res;
}

// 10. Two subprocess runs of `reproduce` with the same seed emit
// byte-identical manifests.
CriterionResult c10(std::uint64_t seed, const std::string& cli) {
  CriterionResult res{10, "reproduce determinism"};
  if (cli.empty()) {
    res.details = "no CLI path supplied; rerun with --cli <fockport binary>";
    return res;
  }
  namespace fs = std::filesystem;
  auto run_once = [&](const std::string& tag, int& code,
                      std::string& bytes) -> bool {
    fs::path dir = fs::temp_directory_path() /
                   ("fockport-c10-" + std::to_string(seed) + "-" + tag);
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir, ec);
    if (ec) return false;
    std::string cmd = "\"" + cli + "\" reproduce --seed " +
                      std::to_string(seed) + " --out \"" + dir.string() +
                      "\" > \"" + (dir / "console.log").string() + "\" 2>&1";
    int status = std::system(cmd.c_str());
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(dir / "manifest.json", std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    bytes = ss.str();
    fs::remove_all(dir, ec);
    return true;
  };
  int code_a = -1, code_b = -1;
  std::string bytes_a, bytes_b;
  bool ran_a = run_once("a", code_a, bytes_a);
  bool ran_b = run_once("b", code_b, bytes_b);
  bool codes_ok = (code_a == 0 || code_a == 1) && code_a == code_b;
  bool identical = ran_a && ran_b && !bytes_a.empty() && bytes_a == bytes_b;
  res.pass = codes_ok && identical;
  std::ostringstream os;
  os << "exit codes " << code_a << "/" << code_b << "; manifests "
     << (identical ? "byte-identical" : "DIFFER") << " (" << bytes_a.size()
     << " bytes)";
  res.details = os.str();
  res.artifact = json{{"exit_codes", {code_a, code_b}},
                      {"manifest_bytes", bytes_a.size()},
                      {"identical", identical}};
  return res;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed,
                              const std::string& cli_path) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult res;
  switch (id) {
    case 1: res = c1(seed); break;
    case 2: res = c2(seed); break;
    case 3: res = c3(seed); break;
    case 4: res = c4(seed); break;
    case 5: res = c5(seed); break;
    case 6: res = c6(seed); break;
    case 7: res = c7(seed); break;
    case 8: res = c8(seed); break;
    case 9: res = c9(seed); break;
    case 10: res = c10(seed, cli_path); break;
    default:
      throw std::invalid_argument("run_criterion: unknown criterion id " +
                                  std::to_string(id));
  }
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

CriterionResult lossless_envelope_demo(std::uint64_t) {
  CriterionResult res{0, "lossless envelope demo"};
  res.informational = true;
  FockSpace space(2, 12);
  InputMixture mix;
  mix.eta = 0.69;
  mix.qubit = psi_plus_i();
  FidelityReport rep =
      fidelity_report(mix, TeleportParams{0.79, 1.01, 0.0}, space);
  double fq = rep.f_qubit.value();
  bool in_s = std::abs(rep.f_state - 0.817) <= 0.02;
  bool in_q = std::abs(fq - 0.875) <= 0.04;
  res.pass = in_s && in_q;  // expected false: the lossless model overshoots
  res.details = "with l = 0, F_state " + fmt(rep.f_state, "%.4f") +
                " overshoots the reference window [0.797, 0.837] by " +
                fmt(rep.f_state - 0.837, "%.4f") + "; F_qubit " +
                fmt(fq, "%.4f") + " vs [0.835, 0.915]";
  res.artifact = json{{"f_state", rep.f_state},
                      {"f_qubit", fq},
                      {"state_window", {0.797, 0.837}},
                      {"qubit_window", {0.835, 0.915}}};
  return res;
}

json manifest(const std::vector<CriterionResult>& results,
              std::uint64_t seed) {
  json list = json::array();
  bool all_pass = true;
  for (const CriterionResult& r : results) {
    list.push_back(json{{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"informational", r.informational},
                        {"details", r.details}});
    if (!r.informational && !r.pass) all_pass = false;
  }
  json cfg{{"command", "reproduce"}, {"seed", seed}};
  return json{{"seed", seed},
              {"config_hash", config_hash(cfg)},
              {"criteria", std::move(list)},
              {"passed", all_pass}};
}

}  // namespace fockport::criteria
