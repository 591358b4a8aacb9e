// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fockport/channel.hpp"
#include "fockport/qubit.hpp"

using namespace fockport;

TEST_CASE("optimal gain is tanh r") {
  CHECK(optimal_gain(0.71) == doctest::Approx(std::tanh(0.71)).epsilon(1e-15));
  CHECK(optimal_gain(0.0) == 0.0);
}

TEST_CASE("photon transfer probabilities: pinned values and limits") {
  double q = std::tanh(0.71);
  CHECK(photon_transfer_prob(0, 2, 0.63, q) ==
        doctest::Approx(3.539161394514e-07).epsilon(1e-9));
  CHECK(photon_transfer_prob(1, 2, 0.63, q) ==
        doctest::Approx(4.717496663216e-04).epsilon(1e-9));

  // at g = q the channel is pure loss: vacuum stays vacuum and one photon
  // splits binomially
  for (double g : {0.3, 0.6107}) {
    CHECK(photon_transfer_prob(0, 0, g, g) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(photon_transfer_prob(0, 1, g, g) == doctest::Approx(0.0));
    CHECK(photon_transfer_prob(1, 0, g, g) ==
          doctest::Approx(1.0 - g * g).epsilon(1e-12));
    CHECK(photon_transfer_prob(1, 1, g, g) ==
          doctest::Approx(g * g).epsilon(1e-12));
  }

  // distributions normalize
  for (double g : {0.5, 0.79, 1.0}) {
    for (int i = 0; i <= 1; ++i) {
      double sum = 0.0;
      for (int n = 0; n <= 60; ++n) sum += photon_transfer_prob(i, n, g, 0.4);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(photon_transfer_prob(2, 0, 0.5, 0.3), std::invalid_argument);
}

TEST_CASE("added noise variance: pinned values") {
  CHECK(added_noise_variance(TeleportParams{0.79, 1.01, 0.25}) ==
        doctest::Approx(0.345040282232).epsilon(1e-10));
  CHECK(added_noise_variance(TeleportParams{1.0, 0.71, 0.0}) ==
        doctest::Approx(0.241714016897).epsilon(1e-10));
}

TEST_CASE("gaussian_form splits loss plus classical noise") {
  GaussianChannelForm f = gaussian_form(TeleportParams{0.79, 1.01, 0.25});
  CHECK(f.loss_transmissivity == doctest::Approx(0.79 * 0.79).epsilon(1e-14));
  CHECK(f.classical_var == doctest::Approx(0.157090282232).epsilon(1e-9));
  CHECK(f.amp_gain == doctest::Approx(1.157090282232).epsilon(1e-9));

  // at the matched gain the classical noise vanishes
  double r = 1.01;
  GaussianChannelForm ideal =
      gaussian_form(TeleportParams{std::tanh(r), r, 0.0});
  CHECK(ideal.classical_var < 1e-12);
  CHECK_THROWS_AS(gaussian_form(TeleportParams{0.79, 1.01, 1.5}),
                  std::invalid_argument);
}

TEST_CASE("loss channel preserves trace and acts binomially on |1>") {
  FockSpace s(1, 8);
  KrausSet loss = loss_channel(s, 0.37);
  Matrix sum = Matrix::Zero(s.dim(), s.dim());
  for (const Matrix& k : loss.ops) sum += k.adjoint() * k;
  CHECK((sum - Matrix::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff() <
        1e-12);

  Matrix one = Matrix::Zero(s.dim(), s.dim());
  one(1, 1) = 1.0;
  Matrix out = apply_kraus(loss, one);
  CHECK(out(0, 0).real() == doctest::Approx(0.63).epsilon(1e-12));
  CHECK(out(1, 1).real() == doctest::Approx(0.37).epsilon(1e-12));

  KrausSet id = loss_channel(s, 1.0);
  CHECK(id.ops.size() == 1);
}

TEST_CASE("amplifier channel keeps trace when the tail fits") {
  FockSpace s(1, 16);
  KrausSet amp = amplifier_channel(s, 1.3);
  Matrix rho = Matrix::Zero(s.dim(), s.dim());
  rho(0, 0) = 0.4;
  rho(1, 1) = 0.6;
  Matrix out = apply_kraus(amp, rho);
  CHECK(std::abs(out.trace().real() - 1.0) < 1e-8);
  // vacuum maps to a geometric photon distribution
  Matrix vac = Matrix::Zero(s.dim(), s.dim());
  vac(0, 0) = 1.0;
  Matrix gout = apply_kraus(amp, vac);
  double ratio = 0.3 / 1.3;
  for (int n = 0; n <= 5; ++n)
    CHECK(gout(n, n).real() ==
          doctest::Approx(std::pow(ratio, n) / 1.3).epsilon(1e-10));
}

TEST_CASE("teleport_dual_rail reduces to attenuation at the matched gain") {
  FockSpace s(2, 8);
  double r = 1.01, g = std::tanh(r);
  DualRailQubit q(cplx(2.0 / std::sqrt(5.0), 0.0),
                  cplx(-1.0 / std::sqrt(5.0), 0.0));
  DensityMatrix in = encode_qubit(q, s).to_density();
  Diagnostics diag;
  DensityMatrix out = teleport_dual_rail(in, TeleportParams{g, r, 0.0}, &diag);
  Matrix expected = g * g * in.rho;
  expected(0, 0) += 1.0 - g * g;
  CHECK((out.rho - expected).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(diag.trace_error < 1e-8);
}

TEST_CASE("teleport_dual_rail preserves trace away from the matched gain") {
  FockSpace s(2, 12);
  InputMixture mix;
  mix.eta = 0.69;
  mix.qubit = DualRailQubit(cplx(M_SQRT1_2, 0.0), cplx(0.0, -M_SQRT1_2));
  DensityMatrix in = input_density(mix, s);
  Diagnostics diag;
  DensityMatrix out =
      teleport_dual_rail(in, TeleportParams{0.79, 1.01, 0.25}, &diag);
  CHECK(std::abs(out.trace() - 1.0) < 1e-8);
  CHECK(diag.tail_mass < 1e-6);
  out.validate();
}

TEST_CASE("channel on half a maximally entangled state stays PSD") {
  FockSpace s(2, 6);
  int lv = s.levels();
  Vector amp = Vector::Zero(s.dim());
  for (int n = 0; n < lv; ++n) amp(s.index(n, n)) = 1.0 / std::sqrt(double(lv));
  DensityMatrix rho = PureState(s, amp).to_density();
  FockSpace one(1, 6);
  for (const KrausSet& ks : teleport_mode(one, TeleportParams{0.8, 0.5, 0.1}))
    rho = apply_kraus_mode(ks, rho, 1);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho.rho + rho.rho.adjoint()),
                                           Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-9);
}

TEST_CASE("transfer integral agrees with Kraus composition off-diagonal") {
  FockSpace s(1, 12);
  double g = 0.63, r = 0.71;
  TeleportParams p{g, r, 0.0};
  Vector amp = Vector::Zero(s.dim());
  amp(0) = M_SQRT1_2;
  amp(1) = M_SQRT1_2;
  DensityMatrix in = PureState(s, amp).to_density();
  DensityMatrix kraus = in;
  for (const KrausSet& ks : teleport_mode(s, p)) kraus = apply_kraus(ks, kraus);
  DensityMatrix integral = transfer_operator_channel(in, p);
  CHECK((kraus.rho - integral.rho).cwiseAbs().maxCoeff() < 1e-4);
  CHECK_THROWS_AS(transfer_operator_channel(in, TeleportParams{0.63, 0.71, 0.2}),
                  std::invalid_argument);
}

TEST_CASE("conditional window: partial acceptance, wide-window recovery") {
  FockSpace s(2, 8);
  TeleportParams p{1.0, std::atanh(0.3), 0.0};
  DualRailQubit q(cplx(M_SQRT1_2, 0.0), cplx(0.0, -M_SQRT1_2));
  DensityMatrix in = encode_qubit(q, s).to_density();
  ConditionalResult tight = conditional_teleport(in, p, AcceptanceWindow{0.4});
  CHECK(tight.acceptance_prob > 0.0);
  CHECK(tight.acceptance_prob < 0.5);
  CHECK(tight.state.subnormalized);
  CHECK(std::abs(tight.state.trace() - tight.acceptance_prob) < 1e-9);

  ConditionalResult wide = conditional_teleport(
      in, p, AcceptanceWindow{default_window_radius(p)});
  DensityMatrix uncond = teleport_dual_rail(in, p);
  CHECK((wide.state.rho / wide.acceptance_prob - uncond.rho)
            .cwiseAbs()
            .maxCoeff() < 1e-3);
}

TEST_CASE("parameter validation") {
  FockSpace s(1, 4);
  CHECK_THROWS_AS(loss_channel(s, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(amplifier_channel(s, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(teleport_mode(s, TeleportParams{-0.1, 0.5, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(teleport_mode(s, TeleportParams{0.5, 0.5, 1.0}),
                  std::invalid_argument);
}
