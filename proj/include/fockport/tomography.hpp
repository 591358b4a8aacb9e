// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// Homodyne quadrature sampling and iterative maximum-likelihood state
// reconstruction (diluted R rho R) for single-mode states.

#pragma once

#include <cstdint>
#include <vector>

#include "fockport/fock.hpp"

namespace fockport {

struct QuadratureSample {
  double phase;  // in [0, pi)
  double value;
};

struct TomographySettings {
  int phases = 12;
  int samples_per_phase = 8333;
  int cutoff = 5;
  int max_iters = 4000;
  double convergence_tol = 1e-11;
  std::uint64_t seed = 1;
};

struct Reconstruction {
  DensityMatrix state;
  int iterations = 0;
  double log_likelihood = 0.0;
  bool converged = false;
  bool improvement_failed = false;  // dilution hit its floor without gain
  std::vector<double> loglik_trace;  // accepted log-likelihood per iteration
};

// p(x|theta) for x_theta = (a e^{-i theta} + a^dag e^{i theta})/sqrt(2);
// vacuum variance 1/2.
std::vector<double> quadrature_pdf(const DensityMatrix& rho, double theta,
                                   const std::vector<double>& xs);

// Inverse-CDF sampling on a fixed grid over [-8, 8]; phase k gets
// theta = k pi / phases and its own deterministic substream of `seed`.
std::vector<QuadratureSample> sample_homodyne(const DensityMatrix& rho,
                                              const TomographySettings& s);

// Diluted R rho R iteration on 200-bin histograms per phase. Throws
// std::invalid_argument on an empty sample set.
Reconstruction mle_reconstruct(const std::vector<QuadratureSample>& samples,
                               const TomographySettings& s);

// Reconstructs each mode independently and returns the product state.
DensityMatrix reconstruct_dual_rail_product(
    const std::vector<QuadratureSample>& mode1,
    const std::vector<QuadratureSample>& mode2, const TomographySettings& s);

}  // namespace fockport
