// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#include "fockport/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fockport/exec.hpp"
#include "fockport/rng.hpp"

namespace fockport {

namespace {

constexpr double kGolden = 0.6180339887498949;

// Golden-section maximization of a unimodal-enough 1D function on [lo, hi].
template <class F>
double golden_max(F f, double lo, double hi, double tol) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double uhlmann_fidelity(const Matrix& a, const Matrix& b) {
  Matrix sa = matrix_sqrt_psd(a);
  Matrix inner = sa * b * sa;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()),
                                           Eigen::EigenvaluesOnly);
  // Eigenvalues below lmax * 1e-12 are rounding debris of the rank-deficient
  // product; their square roots would otherwise dominate the error budget.
  double lmax = std::max(0.0, es.eigenvalues().maxCoeff());
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (l > lmax * 1e-12) s += std::sqrt(l);
  }
  return s * s;
}

double uhlmann_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.space == b.space))
    throw std::invalid_argument("uhlmann_fidelity: space mismatch");
  return uhlmann_fidelity(a.rho, b.rho);
}

double qubit_fidelity(const DensityMatrix& rho, const DualRailQubit& q) {
  const FockSpace& s = rho.space;
  if (s.modes != 2)
    throw std::invalid_argument("qubit_fidelity: two-mode state required");
  SubspaceBlock blk = subspace_block(rho, {s.index(0, 1), s.index(1, 0)});
  Eigen::Vector2cd v;
  v << q.alpha, q.beta;
  return (v.adjoint() * blk.block * v)(0, 0).real();
}

double classical_threshold(double eta) { return 1.0 - eta / 3.0; }

double classical_strategy_fidelity(double eta, const ClassicalStrategy& s) {
  // Bloch-averaged output in the {vacuum, psi, psi_perp} frame:
  //   vacuum weight: (1-eta)(1-x) + eta y
  //   psi weight:    (1-eta) x/2 + eta (1-y) 2/3
  double vac = (1.0 - eta) * (1.0 - s.x) + eta * s.y;
  double psi = (1.0 - eta) * s.x / 2.0 + eta * (1.0 - s.y) * 2.0 / 3.0;
  double f = std::sqrt((1.0 - eta) * vac) + std::sqrt(eta * psi);
  return f * f;
}

StrategyOptimum optimize_classical_strategy(double eta) {
  double bx = 0.0, by = 0.0, bf = -1.0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      double f = classical_strategy_fidelity(eta, {0.01 * i, 0.01 * j});
      if (f > bf) {
        bf = f;
        bx = 0.01 * i;
        by = 0.01 * j;
      }
    }
  for (int round = 0; round < 4; ++round) {
    double lo = std::max(0.0, bx - 0.01), hi = std::min(1.0, bx + 0.01);
    bx = golden_max(
        [&](double x) { return classical_strategy_fidelity(eta, {x, by}); },
        lo, hi, 1e-12);
    lo = std::max(0.0, by - 0.01);
    hi = std::min(1.0, by + 0.01);
    by = golden_max(
        [&](double y) { return classical_strategy_fidelity(eta, {bx, y}); },
        lo, hi, 1e-12);
  }
  // boundary polish: the grid step bracket can hide an edge optimum
  for (double x : {0.0, 1.0})
    if (classical_strategy_fidelity(eta, {x, by}) >
        classical_strategy_fidelity(eta, {bx, by}))
      bx = x;
  for (double y : {0.0, 1.0})
    if (classical_strategy_fidelity(eta, {bx, y}) >
        classical_strategy_fidelity(eta, {bx, by}))
      by = y;
  // Function comparisons cannot localize a flat quadratic maximum beyond
  // ~sqrt(eps); a three-point parabola fit recovers the interior vertex.
  auto polish = [&](auto f, double b) {
    const double h = 1e-5;
    if (b < h || b > 1.0 - h) return b;
    double fm = f(b - h), f0 = f(b), fp = f(b + h);
    double curv = fp - 2.0 * f0 + fm;
    if (!(curv < -1e-18)) return b;
    double step = -0.5 * h * (fp - fm) / curv;
    return std::abs(step) <= h ? b + step : b;
  };
  for (int round = 0; round < 2; ++round) {
    bx = polish(
        [&](double x) { return classical_strategy_fidelity(eta, {x, by}); },
        bx);
    by = polish(
        [&](double y) { return classical_strategy_fidelity(eta, {bx, y}); },
        by);
  }
  return StrategyOptimum{{bx, by}, classical_strategy_fidelity(eta, {bx, by})};
}

MCResult simulate_classical_teleporter(double eta, const ClassicalStrategy& s,
                                       const DualRailQubit& q, long trials,
                                       std::uint64_t seed) {
  if (trials <= 0)
    throw std::invalid_argument("simulate_classical_teleporter: trials <= 0");
  using M3 = Eigen::Matrix3cd;
  int nchunks = int(std::min<long>(100, trials));
  std::vector<long> sizes(nchunks, trials / nchunks);
  for (int c = 0; c < trials % nchunks; ++c) sizes[c] += 1;

  auto run_chunk = [&](int c) -> M3 {
    std::mt19937_64 rng = stream_rng(seed, std::uint64_t(c));
    M3 w = M3::Zero();
    auto add_state = [&w](cplx c1, cplx c2) {
      // contribution of the lab state with frame coordinates (c1, c2)
      Eigen::Vector3cd v;
      v << 0.0, c1, c2;
      w.noalias() += v * v.adjoint();
    };
    for (long t = 0; t < sizes[c]; ++t) {
      // fresh Bloch-uniform qubit: alpha = cos(th/2), beta = e^{i ph} sin
      double costh = 2.0 * uniform01(rng) - 1.0;
      double phi = 2.0 * M_PI * uniform01(rng);
      double ah = std::sqrt(0.5 * (1.0 + costh));
      double bh = std::sqrt(0.5 * (1.0 - costh));
      cplx alpha(ah, 0.0);
      cplx beta = bh * cplx(std::cos(phi), std::sin(phi));
      bool photon = uniform01(rng) < eta;  // QND photon count
      if (!photon) {
        if (uniform01(rng) < 1.0 - s.x) {
          w(0, 0) += 1.0;  // resend vacuum
        } else if (uniform01(rng) < 0.5) {
          add_state(std::conj(alpha), -beta);  // lab |0,1>
        } else {
          add_state(std::conj(beta), alpha);  // lab |1,0>
        }
      } else {
        if (uniform01(rng) < s.y) {
          w(0, 0) += 1.0;
        } else if (uniform01(rng) < std::norm(alpha)) {
          add_state(std::conj(alpha), -beta);  // measured |0,1>, resend it
        } else {
          add_state(std::conj(beta), alpha);
        }
      }
    }
    return w;
  };
  std::vector<M3> parts(nchunks);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(exec::thread_count()) \
    if (exec::thread_count() > 1)
  for (int c = 0; c < nchunks; ++c) parts[c] = run_chunk(c);
#else
  for (int c = 0; c < nchunks; ++c) parts[c] = run_chunk(c);
#endif
  M3 total = M3::Zero();
  for (const M3& p : parts) total += p;

  M3 target = M3::Zero();
  target(0, 0) = 1.0 - eta;
  target(1, 1) = eta;
  auto fidelity_of = [&](const M3& w) {
    return uhlmann_fidelity(Matrix(target), Matrix(w));
  };
  double fid = fidelity_of(total / double(trials));
  double se = 0.0;
  if (nchunks > 1) {
    double mean = 0.0;
    std::vector<double> loo(nchunks);
    for (int c = 0; c < nchunks; ++c) {
      loo[c] = fidelity_of((total - parts[c]) / double(trials - sizes[c]));
      mean += loo[c];
    }
    mean /= nchunks;
    double ss = 0.0;
    for (double v : loo) ss += (v - mean) * (v - mean);
    se = std::sqrt(ss * double(nchunks - 1) / double(nchunks));
  }

  // lab-frame embedding on a small two-mode space
  FockSpace small(2, 2);
  Matrix basis = Matrix::Zero(small.dim(), 3);
  basis(small.index(0, 0), 0) = 1.0;
  basis(small.index(0, 1), 1) = q.alpha;
  basis(small.index(1, 0), 1) = q.beta;
  basis(small.index(0, 1), 2) = -std::conj(q.beta);
  basis(small.index(1, 0), 2) = std::conj(q.alpha);
  Matrix lab = basis * (total / double(trials)) * basis.adjoint();
  return MCResult{DensityMatrix(small, std::move(lab)), fid, se};
}

TheoryFidelities theory_fidelities(double eta, double g, double q) {
  double p00 = photon_transfer_prob(0, 0, g, q);
  double p01 = photon_transfer_prob(0, 1, g, q);
  double p10 = photon_transfer_prob(1, 0, g, q);
  double p11 = photon_transfer_prob(1, 1, g, q);
  double s1 = (1.0 - eta) * p01 + eta * p11;
  double s0 = (1.0 - eta) * p00 + eta * p10;
  double root = std::sqrt((1.0 - eta) * s0) + std::sqrt(eta * s1);
  TheoryFidelities out;
  out.f_state = p00 * root * root;
  out.f_qubit = p00 * s1 / (p00 * s1 + p01 * s0);
  return out;
}

FidelityReport fidelity_report(const InputMixture& mix, const TeleportParams& p,
                               const FockSpace& space, Diagnostics* diag) {
  DensityMatrix rho_in = input_density(mix, space);
  DensityMatrix rho_out = teleport_dual_rail(rho_in, p, diag);
  Fractions in_frac = decompose_fractions(rho_in);
  FidelityReport rep;
  rep.f_state = uhlmann_fidelity(rho_in, rho_out);
  rep.f_thr = classical_threshold(mix.eta);
  rep.eta_in = mix.eta;
  rep.fractions_out = decompose_fractions(rho_out);
  if (in_frac.qubit > 1e-15) {
    rep.f_qubit = qubit_fidelity(rho_out, mix.qubit);
    rep.success_prob = rep.fractions_out.qubit / in_frac.qubit;
  }
  return rep;
}

GainSweep sweep_gain(const InputMixture& mix, double r, double l,
                     const std::vector<double>& gains,
                     const FockSpace& space) {
  if (gains.empty()) throw std::invalid_argument("sweep_gain: empty gain grid");
  int n = int(gains.size());
  std::vector<GainPoint> pts(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1) \
    num_threads(exec::thread_count()) if (exec::thread_count() > 1 && n > 1)
  for (int i = 0; i < n; ++i)
    pts[i] = GainPoint{gains[i],
                       fidelity_report(mix, {gains[i], r, l}, space)};
#else
  for (int i = 0; i < n; ++i)
    pts[i] = GainPoint{gains[i],
                       fidelity_report(mix, {gains[i], r, l}, space)};
#endif
  GainSweep sweep{std::move(pts), gains[0]};
  double best = -1.0;
  for (const GainPoint& pt : sweep.points) {
    double f = pt.report.f_qubit.value_or(pt.report.f_state);
    if (f > best) {  // strict: ties keep the smaller gain
      best = f;
      sweep.g_best = pt.g;
    }
  }
  return sweep;
}

}  // namespace fockport
