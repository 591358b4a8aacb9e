// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fockport/channel.hpp"
#include "fockport/metrics.hpp"
#include "fockport/qubit.hpp"
#include "fockport/rng.hpp"
#include "fockport/tomography.hpp"

using namespace fockport;

namespace {

DensityMatrix fock_diag(const FockSpace& s, std::vector<double> pops) {
  Matrix m = Matrix::Zero(s.dim(), s.dim());
  for (size_t n = 0; n < pops.size(); ++n) m(int(n), int(n)) = pops[n];
  return DensityMatrix(s, std::move(m));
}

// x_theta = (a e^{-i theta} + a^dag e^{i theta}) / sqrt(2)
Matrix quadrature_op(const FockSpace& s, double theta) {
  Matrix a = annihilation_matrix(s.levels());
  return (a * std::exp(cplx(0.0, -theta)) +
          a.adjoint() * std::exp(cplx(0.0, theta))) /
         std::sqrt(2.0);
}

double second_moment_from_pdf(const DensityMatrix& rho, double theta) {
  int n = 4001;
  double lo = -8.0, hi = 8.0, dx = (hi - lo) / (n - 1);
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = lo + i * dx;
  std::vector<double> p = quadrature_pdf(rho, theta, xs);
  double m2 = 0.0;
  for (int i = 1; i < n; ++i)
    m2 += 0.5 * (xs[i - 1] * xs[i - 1] * p[i - 1] + xs[i] * xs[i] * p[i]) * dx;
  return m2;
}

TomographySettings quick(int per_phase, std::uint64_t seed) {
  TomographySettings s;
  s.phases = 12;
  s.samples_per_phase = per_phase;
  s.cutoff = 5;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("quadrature pdf second moments match operator expectations") {
  FockSpace s(1, 5);
  std::vector<DensityMatrix> states;
  states.push_back(fock_diag(s, {1.0}));             // vacuum
  states.push_back(fock_diag(s, {0.0, 1.0}));        // one photon
  states.push_back(fock_diag(s, {0.5, 0.2, 0.3}));   // mixed
  Vector amp = Vector::Zero(s.dim());
  amp(0) = std::sqrt(0.5);
  amp(1) = cplx(0.3, 0.4);
  amp(3) = std::sqrt(0.25);
  amp /= amp.norm();
  states.push_back(PureState(s, amp).to_density());
  for (const DensityMatrix& rho : states) {
    for (double theta : {0.0, 0.7, 2.1}) {
      Matrix x = quadrature_op(s, theta);
      double expected = (rho.rho * x * x).trace().real();
      CHECK(std::abs(second_moment_from_pdf(rho, theta) - expected) < 1e-8);
    }
  }
}

TEST_CASE("vacuum homodyne samples have quadrature variance 1/2") {
  FockSpace s(1, 5);
  std::vector<QuadratureSample> data =
      sample_homodyne(fock_diag(s, {1.0}), quick(8333, 5));
  CHECK(data.size() == 12u * 8333u);
  double mean = 0.0, m2 = 0.0;
  for (const QuadratureSample& q : data) mean += q.value;
  mean /= double(data.size());
  for (const QuadratureSample& q : data)
    m2 += (q.value - mean) * (q.value - mean);
  m2 /= double(data.size());
  CHECK(std::abs(m2 - 0.5) < 0.01);
}

TEST_CASE("same seed reproduces the identical dataset") {
  FockSpace s(1, 5);
  DensityMatrix rho = fock_diag(s, {0.3, 0.7});
  std::vector<QuadratureSample> a = sample_homodyne(rho, quick(500, 77));
  std::vector<QuadratureSample> b = sample_homodyne(rho, quick(500, 77));
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].phase == b[i].phase);
    CHECK(a[i].value == b[i].value);  // bitwise
  }
}

TEST_CASE("one-photon samples avoid the origin") {
  FockSpace s(1, 5);
  std::vector<QuadratureSample> data =
      sample_homodyne(fock_diag(s, {0.0, 1.0}), quick(8333, 6));
  long close = 0;
  for (const QuadratureSample& q : data)
    if (std::abs(q.value) < 0.1) ++close;
  CHECK(double(close) / double(data.size()) < 0.006);
}

TEST_CASE("mle reconstructs the vacuum") {
  FockSpace s(1, 5);
  TomographySettings set = quick(8333, 21);
  std::vector<QuadratureSample> data =
      sample_homodyne(fock_diag(s, {1.0}), set);
  Reconstruction rec = mle_reconstruct(data, set);
  CHECK(uhlmann_fidelity(fock_diag(s, {1.0}), rec.state) > 0.999);
  CHECK(std::abs(rec.state.trace() - 1.0) < 1e-9);
  rec.state.validate();
  for (size_t t = 1; t < rec.loglik_trace.size(); ++t)
    CHECK(rec.loglik_trace[t] >= rec.loglik_trace[t - 1] - 1e-9);
}

TEST_CASE("mle reconstructs an equal superposition with phase") {
  FockSpace s(1, 5);
  Vector amp = Vector::Zero(s.dim());
  amp(0) = M_SQRT1_2;
  amp(1) = M_SQRT1_2;
  DensityMatrix truth = PureState(s, amp).to_density();
  TomographySettings set = quick(10000, 22);
  std::vector<QuadratureSample> data = sample_homodyne(truth, set);
  Reconstruction rec = mle_reconstruct(data, set);
  CHECK(uhlmann_fidelity(truth, rec.state) > 0.99);
  // the off-diagonal coherence must be recovered with its sign
  CHECK(rec.state.rho(0, 1).real() > 0.3);
}

TEST_CASE("mle input validation") {
  TomographySettings set = quick(100, 1);
  CHECK_THROWS_AS(mle_reconstruct({}, set), std::invalid_argument);
  std::vector<QuadratureSample> two_phases;
  for (int i = 0; i < 100; ++i) {
    two_phases.push_back({0.0, 0.1 * (i % 7) - 0.3});
    two_phases.push_back({1.0, 0.1 * (i % 5) - 0.2});
  }
  CHECK_THROWS_AS(mle_reconstruct(two_phases, set), std::invalid_argument);
}

TEST_CASE("product reconstruction recovers a teleported |0,1>") {
  double r = 0.71, g = std::tanh(r);
  // per-mode channel at matched gain: pure loss g^2 on each rail
  FockSpace one(1, 5);
  TeleportParams p{g, r, 0.0};
  Matrix vac = Matrix::Zero(one.dim(), one.dim());
  vac(0, 0) = 1.0;
  Matrix single = Matrix::Zero(one.dim(), one.dim());
  single(1, 1) = 1.0;
  DensityMatrix m1(one, vac), m2(one, single);
  for (const KrausSet& ks : teleport_mode(one, p)) {
    m1 = apply_kraus(ks, m1);
    m2 = apply_kraus(ks, m2);
  }
  DensityMatrix expected = tensor(m1, m2);

  TomographySettings set = quick(4000, 31);
  std::vector<QuadratureSample> d1 = sample_homodyne(m1, set);
  set.seed = 32;
  std::vector<QuadratureSample> d2 = sample_homodyne(m2, set);
  DensityMatrix rec = reconstruct_dual_rail_product(d1, d2, set);
  CHECK(rec.space.modes == 2);
  CHECK(uhlmann_fidelity(expected, rec) > 0.99);
}

TEST_CASE("product reconstruction of independent vacua") {
  FockSpace one(1, 5);
  DensityMatrix vac = fock_diag(one, {1.0});
  TomographySettings set = quick(4000, 41);
  std::vector<QuadratureSample> d1 = sample_homodyne(vac, set);
  set.seed = 42;
  std::vector<QuadratureSample> d2 = sample_homodyne(vac, set);
  DensityMatrix rec = reconstruct_dual_rail_product(d1, d2, set);
  FockSpace two(2, 5);
  Matrix vv = Matrix::Zero(two.dim(), two.dim());
  vv(0, 0) = 1.0;
  CHECK(uhlmann_fidelity(DensityMatrix(two, vv), rec) > 0.99);
}
