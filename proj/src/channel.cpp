// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#include "fockport/channel.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <gsl/gsl_integration.h>

#include "fockport/exec.hpp"

namespace fockport {

namespace {

constexpr int kRadialNodes = 64;
constexpr int kAngularNodes = 64;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double lchoose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

void check_params(const TeleportParams& p) {
  require(p.g >= 0.0, "TeleportParams: gain must be nonnegative");
  require(p.r >= 0.0, "TeleportParams: squeezing must be nonnegative");
  require(p.l >= 0.0 && p.l < 1.0, "TeleportParams: loss must be in [0, 1)");
}

struct GlNodes {
  std::vector<double> x, w;
};

GlNodes gl_nodes(int n, double a, double b) {
  std::unique_ptr<gsl_integration_glfixed_table,
                  decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(n),
            gsl_integration_glfixed_table_free);
  GlNodes out;
  out.x.resize(n);
  out.w.resize(n);
  for (int i = 0; i < n; ++i)
    gsl_integration_glfixed_point(a, b, i, &out.x[i], &out.w[i], table.get());
  return out;
}

}  // namespace

double optimal_gain(double r) { return std::tanh(r); }

double photon_transfer_prob(int i, int n, double g, double q) {
  require(i == 0 || i == 1, "photon_transfer_prob: input must be 0 or 1");
  require(n >= 0, "photon_transfer_prob: output count must be nonnegative");
  require(q >= 0.0 && q < 1.0, "photon_transfer_prob: q must be in [0, 1)");
  double D = 1.0 + g * g - 2.0 * g * q;
  double one = 1.0 - q * q;
  double gq2 = (g - q) * (g - q);
  if (i == 0) return one * std::pow(gq2, n) / std::pow(D, n + 1);
  double t1 = (1.0 - g * q) * (1.0 - g * q) * std::pow(gq2, n);
  double t2 = n == 0 ? 0.0 : n * g * g * one * one * std::pow(gq2, n - 1);
  return one * (t1 + t2) / std::pow(D, n + 2);
}

double added_noise_variance(const TeleportParams& p) {
  check_params(p);
  double sm = (1.0 - p.l) * std::exp(-2.0 * p.r) + p.l;
  double sp = (1.0 - p.l) * std::exp(2.0 * p.r) + p.l;
  return ((1.0 + p.g) * (1.0 + p.g) * sm + (1.0 - p.g) * (1.0 - p.g) * sp) /
         4.0;
}

GaussianChannelForm gaussian_form(const TeleportParams& p) {
  double v = added_noise_variance(p);
  double tau = p.g * p.g;
  double sigma2 = v - (1.0 - tau) / 2.0;
  if (sigma2 < -1e-9) {
    std::ostringstream os;
    os << "gaussian_form: classical variance " << sigma2 << " below -1e-9";
    throw std::invalid_argument(os.str());
  }
  if (sigma2 < 0.0) sigma2 = 0.0;
  return GaussianChannelForm{1.0 + sigma2, v, tau, sigma2};
}

KrausSet loss_channel(const FockSpace& space, double transmissivity) {
  require(space.modes == 1, "loss_channel: single-mode space required");
  require(transmissivity >= 0.0 && transmissivity <= 1.0,
          "loss_channel: transmissivity must be in [0, 1]");
  int d = space.levels();
  double tau = transmissivity, lam = 1.0 - transmissivity;
  KrausSet ks;
  int kmax = lam == 0.0 ? 0 : space.cutoff;
  for (int k = 0; k <= kmax; ++k) {
    Matrix A = Matrix::Zero(d, d);
    for (int n = k; n < d; ++n)
      A(n - k, n) = std::exp(0.5 * lchoose(n, k)) *
                    std::pow(tau, 0.5 * (n - k)) * std::pow(lam, 0.5 * k);
    ks.ops.push_back(std::move(A));
  }
  return ks;
}

KrausSet amplifier_channel(const FockSpace& space, double gain) {
  require(space.modes == 1, "amplifier_channel: single-mode space required");
  require(gain >= 1.0, "amplifier_channel: gain must be at least 1");
  int d = space.levels();
  double ratio = (gain - 1.0) / gain;
  KrausSet ks;
  int kmax = ratio == 0.0 ? 0 : space.cutoff;
  for (int k = 0; k <= kmax; ++k) {
    Matrix K = Matrix::Zero(d, d);
    for (int n = 0; n + k < d; ++n)
      K(n + k, n) = std::exp(0.5 * lchoose(n + k, k)) *
                    std::pow(ratio, 0.5 * k) *
                    std::pow(gain, -0.5 * (n + 1.0));
    ks.ops.push_back(std::move(K));
  }
  return ks;
}

std::vector<KrausSet> classical_noise_channel(const FockSpace& space,
                                              double classical_var) {
  require(classical_var >= 0.0,
          "classical_noise_channel: variance must be nonnegative");
  double G = 1.0 + classical_var;
  std::vector<KrausSet> stages;
  stages.push_back(loss_channel(space, 1.0 / G));
  stages.push_back(amplifier_channel(space, G));
  return stages;
}

std::vector<KrausSet> teleport_mode(const FockSpace& space,
                                    const TeleportParams& p) {
  GaussianChannelForm form = gaussian_form(p);
  std::vector<KrausSet> stages;
  stages.push_back(loss_channel(space, form.loss_transmissivity));
  for (auto& s : classical_noise_channel(space, form.classical_var))
    stages.push_back(std::move(s));
  return stages;
}

DensityMatrix teleport_dual_rail(const DensityMatrix& input,
                                 const TeleportParams& p, Diagnostics* diag) {
  require(input.space.modes == 2, "teleport_dual_rail: two-mode input");
  FockSpace mode_space(1, input.space.cutoff);
  std::vector<KrausSet> stages = teleport_mode(mode_space, p);
  DensityMatrix out = input;
  for (int mode = 1; mode <= 2; ++mode)
    for (const KrausSet& ks : stages) out = apply_kraus_mode(ks, out, mode);
  if (diag) {
    diag->trace_error = std::abs(out.trace() - input.trace());
    diag->tail_mass = tail_mass(out);
    if (diag->tail_mass > 1e-6)
      diag->warn("teleport_dual_rail: output tail mass above 1e-6; "
                 "increase the cutoff");
  }
  return out;
}

namespace {

// Exact elements of D(beta) on the top-left (rows x cols) block of the
// untruncated operator. Magnitudes are assembled in log space so large
// |m - n| does not overflow the factorial ratio or beta^(m-n).
Matrix displacement_block(int rows, int cols, cplx beta) {
  double x = std::norm(beta);
  cplx unit = x > 0.0 ? beta / std::abs(beta) : cplx(1.0, 0.0);
  Matrix D(rows, cols);
  for (int m = 0; m < rows; ++m)
    for (int n = 0; n < cols; ++n) {
      int lo = std::min(m, n), hi = std::max(m, n), a = hi - lo;
      double logmag =
          0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)) - 0.5 * x;
      if (a > 0) logmag += x > 0.0 ? 0.5 * a * std::log(x) : -1e300;
      // associated Laguerre L_lo^(a)(x) by the three-term recurrence
      double L = 1.0, Lm1 = 0.0;
      for (int k = 0; k < lo; ++k) {
        double Lp = ((2.0 * k + 1.0 + a - x) * L - (k + a) * Lm1) / (k + 1.0);
        Lm1 = L;
        L = Lp;
      }
      cplx ph = 1.0;
      cplx base = m >= n ? unit : -std::conj(unit);
      for (int t = 0; t < a; ++t) ph *= base;
      D(m, n) = std::exp(logmag) * ph * L;
    }
  return D;
}

// T(b) for real b > 0: sqrt((1-q^2)/pi) D(g b) q^n D(-b), contracted over an
// enlarged internal space so the q^n damping, not the output cutoff, decides
// where the middle sum stops. The full family follows by phase conjugation:
// T(b e^{i t}) = R(t) T(b) R(t)^dag with R(t) = diag(e^{i n t}).
Matrix shell_operator(double b, double g, double q, int d) {
  int extra =
      q <= 0.0 ? 0 : int(std::ceil(std::log(1e-16) / std::log(q)));
  int K = d + std::min(std::max(extra, 0), 460);
  Matrix Dp = displacement_block(d, K, cplx(b * g, 0.0));
  Matrix Dm = displacement_block(K, d, cplx(-b, 0.0));
  Vector qn(K);
  for (int k = 0; k < K; ++k) qn(k) = std::pow(q, double(k));
  return std::sqrt((1.0 - q * q) / M_PI) * (Dp * qn.asDiagonal() * Dm);
}

Matrix phase_conjugate(const Matrix& T, double theta, int d) {
  Matrix out(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      out(m, n) = std::exp(cplx(0.0, (m - n) * theta)) * T(m, n);
  return out;
}

bool exactly_diagonal(const Matrix& rho) {
  for (int i = 0; i < rho.rows(); ++i)
    for (int j = 0; j < rho.cols(); ++j)
      if (i != j && rho(i, j) != 0.0) return false;
  return true;
}

// Windowed transfer integral on one mode. Radial shells are independent
// work chunks folded in a fixed order, so the result does not depend on the
// thread count.
Matrix windowed_apply_mode(const Matrix& rho, int modes, int mode, int d,
                           double g, double q, double B) {
  GlNodes radial = gl_nodes(kRadialNodes, 0.0, B);
  double wang = 2.0 * M_PI / kAngularNodes;
  bool diag_fast = modes == 1 && exactly_diagonal(rho);
  Matrix work = mode == 2 ? detail::swap_modes_raw(rho, d) : rho;
  auto map = [&](int c) -> Matrix {
    double b = radial.x[c];
    double wr = radial.w[c] * b * wang;  // polar measure: b db dtheta
    Matrix Tb = shell_operator(b, g, q, d);
    Matrix acc = Matrix::Zero(work.rows(), work.cols());
    for (int j = 0; j < kAngularNodes; ++j) {
      Matrix T = phase_conjugate(Tb, wang * j, d);
      if (modes == 1) {
        if (diag_fast) {
          for (int n = 0; n < d; ++n) {
            cplx p = work(n, n);
            if (p == 0.0) continue;
            acc.noalias() += (wr * p) * (T.col(n) * T.col(n).adjoint());
          }
        } else {
          acc.noalias() += wr * (T * work * T.adjoint());
        }
      } else {
        KrausSet one{{T}};
        acc.noalias() += wr * detail::apply_kraus_mode1(one, work, d);
      }
    }
    return acc;
  };
  auto fold = [](Matrix& a, Matrix&& b) { a += b; };
  Matrix out = exec::chunked_reduce<Matrix>(
      kRadialNodes, map, fold, Matrix::Zero(work.rows(), work.cols()));
  return mode == 2 ? detail::swap_modes_raw(out, d) : out;
}

DensityMatrix windowed_channel(const DensityMatrix& input,
                               const TeleportParams& p, double B, bool subnorm,
                               Diagnostics* diag) {
  check_params(p);
  require(p.l <= 1e-15,
          "transfer integral: only the lossless resource (l = 0) has this "
          "Kraus family");
  double q = std::tanh(p.r);
  int d = input.space.levels();
  Matrix out = input.rho;
  for (int mode = 1; mode <= input.space.modes; ++mode)
    out = windowed_apply_mode(out, input.space.modes, mode, d, p.g, q, B);
  double trace_err = std::abs(out.trace().real() - input.trace());
  if (diag) {
    diag->trace_error = trace_err;
    if (!subnorm && trace_err > 1e-3)
      diag->warn("transfer integral: trace self-check failed; increase the "
                 "cutoff or the window");
  }
  return DensityMatrix(input.space, std::move(out),
                       subnorm || input.subnormalized);
}

}  // namespace

double default_window_radius(const TeleportParams& p) {
  return 6.0 * std::max(1.0, std::sqrt(added_noise_variance(p)));
}

DensityMatrix transfer_operator_channel(const DensityMatrix& input,
                                        const TeleportParams& p,
                                        Diagnostics* diag) {
  return windowed_channel(input, p, default_window_radius(p), false, diag);
}

ConditionalResult conditional_teleport(const DensityMatrix& input,
                                       const TeleportParams& p,
                                       const AcceptanceWindow& window,
                                       Diagnostics* diag) {
  require(window.radius > 0.0,
          "conditional_teleport: window radius must be positive");
  DensityMatrix state = windowed_channel(input, p, window.radius, true, diag);
  double acc = state.trace();
  if (acc < 1e-12)
    throw std::runtime_error(
        "conditional_teleport: acceptance probability below 1e-12");
  return ConditionalResult{std::move(state), acc};
}

}  // namespace fockport
