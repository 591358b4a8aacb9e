// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// Continuous-variable teleportation channel acting mode-wise on dual-rail
// states: attenuation by g^2 followed by Gaussian classical noise, or the
// equivalent Bell-measurement transfer-operator integral.

#pragma once

#include "fockport/fock.hpp"

namespace fockport {

struct TeleportParams {
  double g;        // feedforward gain
  double r;        // squeezing parameter, q = tanh r
  double l = 0.0;  // loss on the squeezed resource
};

// Post-selection on Bell outcomes with |beta| < radius.
struct AcceptanceWindow {
  double radius;
};

// Decomposition of the teleportation channel per mode: pure loss of
// transmissivity g^2 followed by classical Gaussian noise of variance
// classical_var per quadrature, realized as loss 1/G then amplification G
// with G = 1 + classical_var. added_var is the total quadrature noise
// referred to the channel input.
struct GaussianChannelForm {
  double amp_gain;
  double added_var;
  double loss_transmissivity;
  double classical_var;
};

struct ConditionalResult {
  DensityMatrix state;  // subnormalized
  double acceptance_prob;
};

double optimal_gain(double r);

// P(n photons out | i photons in) for the single-mode teleportation channel
// at loss l = 0. i must be 0 or 1; closed form in g and q = tanh r.
double photon_transfer_prob(int i, int n, double g, double q);

// Total added quadrature noise variance of the gain-g teleporter.
double added_noise_variance(const TeleportParams& p);

// Throws when the implied classical variance is below -1e-9; values in
// [-1e-12, 0) are clamped to zero.
GaussianChannelForm gaussian_form(const TeleportParams& p);

KrausSet loss_channel(const FockSpace& space, double transmissivity);
KrausSet amplifier_channel(const FockSpace& space, double gain);

// Kraus stages, to be applied in order.
std::vector<KrausSet> classical_noise_channel(const FockSpace& space,
                                              double classical_var);
std::vector<KrausSet> teleport_mode(const FockSpace& space,
                                    const TeleportParams& p);

// Applies teleport_mode to mode 1 then mode 2 of a two-mode state.
DensityMatrix teleport_dual_rail(const DensityMatrix& input,
                                 const TeleportParams& p,
                                 Diagnostics* diag = nullptr);

// Direct numerical integral of T(beta) rho T(beta)^dag over Bell outcomes
// (polar Gauss-Legendre x trapezoid grid), applied to each mode. Only the
// lossless resource (l = 0) has this Kraus family; l != 0 throws.
DensityMatrix transfer_operator_channel(const DensityMatrix& input,
                                        const TeleportParams& p,
                                        Diagnostics* diag = nullptr);

// Same integral restricted to |beta| < window.radius on every mode; returns
// the subnormalized state and the acceptance probability (its trace).
// Throws when the acceptance probability falls below 1e-12.
ConditionalResult conditional_teleport(const DensityMatrix& input,
                                       const TeleportParams& p,
                                       const AcceptanceWindow& window,
                                       Diagnostics* diag = nullptr);

// Radius that makes the windowed integral effectively unconditional.
double default_window_radius(const TeleportParams& p);

}  // namespace fockport
