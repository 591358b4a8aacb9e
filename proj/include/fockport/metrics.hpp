// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// Fidelity criteria and classical benchmarks: Uhlmann fidelity, renormalized
// qubit-block fidelity, the optimal classical (no-entanglement) teleporter,
// and the end-to-end report/sweep drivers.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fockport/channel.hpp"
#include "fockport/qubit.hpp"

namespace fockport {

// Classical measure-and-resend strategy, both parameters in [0, 1]:
//   x: probability of sending a random one-photon state when the QND
//      measurement finds no photon,
//   y: probability of sending vacuum when it finds one.
struct ClassicalStrategy {
  double x;
  double y;
};

struct StrategyOptimum {
  ClassicalStrategy strategy;
  double fidelity;
};

struct FidelityReport {
  double f_state = 0.0;
  std::optional<double> f_qubit;
  double f_thr = 0.0;
  double eta_in = 0.0;
  Fractions fractions_out;
  std::optional<double> success_prob;  // qubit fraction out / qubit fraction in
};

struct TheoryFidelities {
  double f_state;
  double f_qubit;
};

struct MCResult {
  DensityMatrix state;  // lab-frame embedding on FockSpace(2, 2)
  double fidelity;
  double std_error;  // jackknife over trial chunks
};

struct GainPoint {
  double g;
  FidelityReport report;
};

struct GainSweep {
  std::vector<GainPoint> points;
  double g_best;  // argmax of f_qubit, ties resolved to the smaller gain
};

// Squared Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double uhlmann_fidelity(const DensityMatrix& a, const DensityMatrix& b);
double uhlmann_fidelity(const Matrix& a, const Matrix& b);

// Overlap of the ideal qubit with the renormalized one-photon block.
double qubit_fidelity(const DensityMatrix& rho, const DualRailQubit& q);

// Best classical F_state for qubit fraction eta: 1 - eta/3.
double classical_threshold(double eta);

// Bloch-averaged fidelity of the measure-and-resend strategy.
double classical_strategy_fidelity(double eta, const ClassicalStrategy& s);

// 0.01 grid scan refined by coordinate golden-section to 1e-10.
StrategyOptimum optimize_classical_strategy(double eta);

// Seeded Monte Carlo of the classical teleporter; a fresh Bloch-uniform
// qubit is drawn every trial, outcomes are accumulated in that trial's
// {vacuum, psi, psi_perp} frame. `q` fixes the lab frame of the returned
// state only.
MCResult simulate_classical_teleporter(double eta, const ClassicalStrategy& s,
                                       const DualRailQubit& q, long trials,
                                       std::uint64_t seed);

// Closed-form F_state / F_qubit for the lossless channel (l = 0).
TheoryFidelities theory_fidelities(double eta, double g, double q);

FidelityReport fidelity_report(const InputMixture& mix,
                               const TeleportParams& p, const FockSpace& space,
                               Diagnostics* diag = nullptr);

GainSweep sweep_gain(const InputMixture& mix, double r, double l,
                     const std::vector<double>& gains, const FockSpace& space);

}  // namespace fockport
