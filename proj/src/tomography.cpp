// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#include "fockport/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fockport/exec.hpp"
#include "fockport/rng.hpp"

namespace fockport {

namespace {

constexpr double kXmin = -8.0;
constexpr double kXmax = 8.0;
constexpr int kSampleGrid = 4001;  // inverse-CDF grid resolution
constexpr int kBins = 200;         // histogram bins per phase
constexpr double kDilutionFloor = 1e-8;

// Harmonic-oscillator eigenfunctions psi_0..psi_nmax at x, for the
// convention x = (a + a^dag)/sqrt(2) (vacuum variance 1/2).
void hermite_functions(double x, int nmax, std::vector<double>& out) {
  out.resize(nmax + 1);
  out[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (nmax >= 1) out[1] = std::sqrt(2.0) * x * out[0];
  for (int n = 2; n <= nmax; ++n)
    out[n] = std::sqrt(2.0 / n) * x * out[n - 1] -
             std::sqrt((n - 1.0) / n) * out[n - 2];
}

// p(x|theta) = u^dag rho u with u_n = e^{i n theta} psi_n(x).
double pdf_point(const Matrix& rho, const Vector& phase, double x,
                 std::vector<double>& work) {
  int d = int(rho.rows());
  hermite_functions(x, d - 1, work);
  Vector u(d);
  for (int n = 0; n < d; ++n) u(n) = phase(n) * work[n];
  return std::max(0.0, (u.adjoint() * rho * u)(0, 0).real());
}

Vector phase_vector(int d, double theta) {
  Vector p(d);
  for (int n = 0; n < d; ++n) p(n) = std::exp(cplx(0.0, n * theta));
  return p;
}

}  // namespace

std::vector<double> quadrature_pdf(const DensityMatrix& rho, double theta,
                                   const std::vector<double>& xs) {
  if (rho.space.modes != 1)
    throw std::invalid_argument("quadrature_pdf: single-mode state required");
  int d = rho.space.levels();
  Vector ph = phase_vector(d, theta);
  std::vector<double> out(xs.size()), work;
  for (size_t i = 0; i < xs.size(); ++i)
    out[i] = pdf_point(rho.rho, ph, xs[i], work);
  return out;
}

std::vector<QuadratureSample> sample_homodyne(const DensityMatrix& rho,
                                              const TomographySettings& s) {
  if (rho.space.modes != 1)
    throw std::invalid_argument("sample_homodyne: single-mode state required");
  if (s.phases <= 0 || s.samples_per_phase <= 0)
    throw std::invalid_argument("sample_homodyne: empty sampling plan");
  double dx = (kXmax - kXmin) / (kSampleGrid - 1);
  std::vector<QuadratureSample> all(size_t(s.phases) * s.samples_per_phase);

  auto sample_phase = [&](int k) {
    double theta = k * M_PI / s.phases;
    std::vector<double> xs(kSampleGrid);
    for (int i = 0; i < kSampleGrid; ++i) xs[i] = kXmin + i * dx;
    std::vector<double> p = quadrature_pdf(rho, theta, xs);
    // trapezoid CDF on the grid
    std::vector<double> cdf(kSampleGrid, 0.0);
    for (int i = 1; i < kSampleGrid; ++i)
      cdf[i] = cdf[i - 1] + 0.5 * (p[i - 1] + p[i]) * dx;
    double total = cdf.back();
    if (total <= 0.0)
      throw std::runtime_error("sample_homodyne: degenerate distribution");
    for (double& c : cdf) c /= total;
    std::mt19937_64 rng = stream_rng(s.seed, std::uint64_t(k));
    for (int t = 0; t < s.samples_per_phase; ++t) {
      double u = uniform01(rng);
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      int hi = int(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                            kSampleGrid - 1));
      int lo = hi - 1;
      double span = cdf[hi] - cdf[lo];
      double frac = span > 0.0 ? (u - cdf[lo]) / span : 0.5;
      all[size_t(k) * s.samples_per_phase + t] =
          QuadratureSample{theta, xs[lo] + frac * dx};
    }
  };
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1) \
    num_threads(exec::thread_count()) if (exec::thread_count() > 1)
  for (int k = 0; k < s.phases; ++k) sample_phase(k);
#else
  for (int k = 0; k < s.phases; ++k) sample_phase(k);
#endif
  return all;
}

Reconstruction mle_reconstruct(const std::vector<QuadratureSample>& samples,
                               const TomographySettings& s) {
  if (samples.empty())
    throw std::invalid_argument("mle_reconstruct: empty sample set");
  int d = s.cutoff + 1;
  double dx = (kXmax - kXmin) / kBins;

  // histogram per distinct phase
  std::map<double, std::vector<double>> hist;
  for (const QuadratureSample& smp : samples) {
    auto& h = hist[smp.phase];
    if (h.empty()) h.assign(kBins, 0.0);
    int bin = int((smp.value - kXmin) / dx);
    if (bin >= 0 && bin < kBins) h[size_t(bin)] += 1.0;
  }
  if (hist.size() < 4)
    throw std::invalid_argument(
        "mle_reconstruct: need at least 4 distinct phases to recover "
        "coherences");

  // POVM elements at occupied bins: Pi = dx * u u^dag at the bin midpoint
  struct Element {
    Vector u;
    double count;
  };
  std::vector<Element> elems;
  double total = 0.0;
  std::vector<double> work;
  for (const auto& [theta, h] : hist) {
    Vector ph = phase_vector(d, theta);
    for (int b = 0; b < kBins; ++b) {
      if (h[b] == 0.0) continue;
      double mid = kXmin + (b + 0.5) * dx;
      hermite_functions(mid, d - 1, work);
      Vector u(d);
      for (int n = 0; n < d; ++n) u(n) = ph(n) * work[n];
      u *= std::sqrt(dx);  // fold the bin width into the element
      elems.push_back(Element{std::move(u), h[b]});
      total += h[b];
    }
  }

  Matrix rho = Matrix::Identity(d, d) / double(d);
  auto loglik = [&](const Matrix& m) {
    double L = 0.0;
    for (const Element& e : elems) {
      double p = std::max(1e-300, (e.u.adjoint() * m * e.u)(0, 0).real());
      L += e.count * std::log(p);
    }
    return L;
  };

  Reconstruction rec{DensityMatrix(FockSpace(1, s.cutoff), rho), 0, 0.0,
                     false, false, {}};
  double cur = loglik(rho);
  rec.loglik_trace.push_back(cur);
  for (int it = 0; it < s.max_iters; ++it) {
    Matrix R = Matrix::Zero(d, d);
    for (const Element& e : elems) {
      double p = std::max(1e-300, (e.u.adjoint() * rho * e.u)(0, 0).real());
      R.noalias() += (e.count / p) * (e.u * e.u.adjoint());
    }
    R /= total;
    double delta = 0.5;
    bool accepted = false;
    while (delta >= kDilutionFloor) {
      Matrix G =
          (1.0 - delta) * Matrix::Identity(d, d) + delta * R;
      Matrix cand = G * rho * G.adjoint();
      cand /= cand.trace().real();
      double L = loglik(cand);
      if (L > cur) {
        rho = std::move(cand);
        cur = L;
        accepted = true;
        break;
      }
      delta *= 0.5;
    }
    rec.iterations = it + 1;
    if (!accepted) {
      rec.improvement_failed = true;
      break;
    }
    rec.loglik_trace.push_back(cur);
    double gain = cur - rec.loglik_trace[rec.loglik_trace.size() - 2];
    if (std::abs(gain) < s.convergence_tol) {
      rec.converged = true;
      break;
    }
  }
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  rec.state = DensityMatrix(FockSpace(1, s.cutoff), std::move(rho));
  rec.log_likelihood = cur;
  return rec;
}

DensityMatrix reconstruct_dual_rail_product(
    const std::vector<QuadratureSample>& mode1,
    const std::vector<QuadratureSample>& mode2, const TomographySettings& s) {
  Reconstruction r1 = mle_reconstruct(mode1, s);
  Reconstruction r2 = mle_reconstruct(mode2, s);
  return tensor(r1.state, r2.state);
}

}  // namespace fockport
