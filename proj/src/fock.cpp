// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#include "fockport/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fockport {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

FockSpace::FockSpace(int modes_, int cutoff_) : modes(modes_), cutoff(cutoff_) {
  require(modes == 1 || modes == 2, "FockSpace: modes must be 1 or 2");
  require(cutoff >= 2, "FockSpace: cutoff must be at least 2");
}

int FockSpace::dim() const {
  int d = levels();
  return modes == 1 ? d : d * d;
}

int FockSpace::index(int n1) const {
  require(modes == 1, "FockSpace::index: single-mode index on two-mode space");
  require(n1 >= 0 && n1 <= cutoff, "FockSpace::index: level out of range");
  return n1;
}

int FockSpace::index(int n1, int n2) const {
  require(modes == 2, "FockSpace::index: two-mode index on single-mode space");
  require(n1 >= 0 && n1 <= cutoff && n2 >= 0 && n2 <= cutoff,
          "FockSpace::index: level out of range");
  return n1 * levels() + n2;
}

PureState::PureState(FockSpace s, Vector a) : space(s), amp(std::move(a)) {
  require(amp.size() == space.dim(), "PureState: amplitude size mismatch");
  require(std::abs(amp.norm() - 1.0) <= 1e-10, "PureState: not normalized");
}

DensityMatrix PureState::to_density() const {
  return DensityMatrix(space, amp * amp.adjoint());
}

DensityMatrix::DensityMatrix(FockSpace s, Matrix m, bool subnorm)
    : space(s), rho(std::move(m)), subnormalized(subnorm) {
  require(rho.rows() == space.dim() && rho.cols() == space.dim(),
          "DensityMatrix: dimension mismatch");
}

void DensityMatrix::validate() const {
  double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (deviation " << herm << ")";
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                           Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  if (lo < -1e-9) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << lo;
    throw std::invalid_argument(os.str());
  }
  double tr = trace();
  if (tr > 1.0 + 1e-9 || (!subnormalized && std::abs(tr - 1.0) > 1e-9)) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " out of range";
    throw std::invalid_argument(os.str());
  }
}

Matrix annihilation_matrix(int levels) {
  Matrix a = Matrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  require(a.space.modes == 1 && b.space.modes == 1,
          "tensor: both factors must be single-mode");
  require(a.space.cutoff == b.space.cutoff, "tensor: cutoff mismatch");
  int d = a.space.levels();
  FockSpace out(2, a.space.cutoff);
  Matrix m(out.dim(), out.dim());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m.block(i * d, j * d, d, d) = a.rho(i, j) * b.rho;
  return DensityMatrix(out, std::move(m),
                       a.subnormalized || b.subnormalized);
}

DensityMatrix partial_trace(const DensityMatrix& rho, int traced_mode) {
  require(rho.space.modes == 2, "partial_trace: needs a two-mode state");
  require(traced_mode == 1 || traced_mode == 2,
          "partial_trace: mode must be 1 or 2");
  int d = rho.space.levels();
  FockSpace out(1, rho.space.cutoff);
  Matrix m = Matrix::Zero(d, d);
  if (traced_mode == 1) {
    // keep mode 2: sum diagonal blocks
    for (int k = 0; k < d; ++k) m += rho.rho.block(k * d, k * d, d, d);
  } else {
    // keep mode 1: trace within each block
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        cplx t = 0.0;
        for (int k = 0; k < d; ++k) t += rho.rho(i * d + k, j * d + k);
        m(i, j) = t;
      }
  }
  return DensityMatrix(out, std::move(m), rho.subnormalized);
}

DensityMatrix swap_modes(const DensityMatrix& rho) {
  require(rho.space.modes == 2, "swap_modes: needs a two-mode state");
  return DensityMatrix(rho.space,
                       detail::swap_modes_raw(rho.rho, rho.space.levels()),
                       rho.subnormalized);
}

FockOperator displacement_operator(const FockSpace& space, cplx beta,
                                   Diagnostics* diag) {
  require(space.modes == 1, "displacement_operator: single-mode only");
  int d = space.levels();
  double x = std::norm(beta);
  if (diag && x > 0.25 * space.cutoff) {
    std::ostringstream os;
    os << "displacement_operator: |beta|^2 = " << x
       << " exceeds cutoff/4; truncation error will be significant";
    diag->warn(os.str());
  }
  Matrix D(d, d);
  double pref = std::exp(-0.5 * x);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      int lo = std::min(m, n), hi = std::max(m, n), a = hi - lo;
      // sqrt(lo!/hi!)
      double ratio = 1.0;
      for (int t = lo + 1; t <= hi; ++t) ratio /= double(t);
      double coef = std::sqrt(ratio);
      // associated Laguerre L_lo^(a)(x) by the three-term recurrence
      double L = 1.0, Lm1 = 0.0;
      for (int k = 0; k < lo; ++k) {
        double Lp = ((2.0 * k + 1.0 + a - x) * L - (k + a) * Lm1) / (k + 1.0);
        Lm1 = L;
        L = Lp;
      }
      cplx pw = 1.0;
      if (m >= n) {
        for (int t = 0; t < a; ++t) pw *= beta;
      } else {
        for (int t = 0; t < a; ++t) pw *= -std::conj(beta);
      }
      D(m, n) = coef * pw * pref * L;
    }
  return FockOperator{space, std::move(D)};
}

Matrix matrix_sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues();
  double lo = ev.minCoeff();
  if (lo < -1e-9) {
    std::ostringstream os;
    os << "matrix_sqrt_psd: eigenvalue " << lo << " below -1e-9";
    throw std::invalid_argument(os.str());
  }
  Eigen::VectorXd root(ev.size());
  for (int i = 0; i < ev.size(); ++i)
    root(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * root.asDiagonal() *
         es.eigenvectors().adjoint();
}

SubspaceBlock subspace_block(const DensityMatrix& rho,
                             const std::vector<int>& indices) {
  int k = int(indices.size());
  require(k > 0, "subspace_block: empty index list");
  Matrix block(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) block(i, j) = rho.rho(indices[i], indices[j]);
  double w = block.trace().real();
  if (w < 1e-12)
    throw std::invalid_argument("subspace_block: weight below 1e-12");
  block /= w;
  return SubspaceBlock{std::move(block), w};
}

double tail_mass(const DensityMatrix& rho) {
  int d = rho.space.levels();
  int top = rho.space.cutoff - 2;
  double mass = 0.0;
  if (rho.space.modes == 1) {
    for (int n = 0; n < d; ++n)
      if (n > top) mass += rho.rho(n, n).real();
  } else {
    for (int n1 = 0; n1 < d; ++n1)
      for (int n2 = 0; n2 < d; ++n2)
        if (n1 > top || n2 > top)
          mass += rho.rho(n1 * d + n2, n1 * d + n2).real();
  }
  return mass;
}

Matrix apply_kraus(const KrausSet& ks, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  Matrix tmp(rho.rows(), rho.cols());
  for (const Matrix& K : ks.ops) {
    tmp.noalias() = K * rho;
    if (tmp.isZero(0.0)) continue;
    out.noalias() += tmp * K.adjoint();
  }
  return out;
}

DensityMatrix apply_kraus(const KrausSet& ks, const DensityMatrix& rho) {
  require(rho.space.modes == 1, "apply_kraus: single-mode state expected");
  return DensityMatrix(rho.space, apply_kraus(ks, rho.rho), rho.subnormalized);
}

namespace detail {

Matrix swap_modes_raw(const Matrix& rho, int d) {
  Matrix m(rho.rows(), rho.cols());
  for (int i1 = 0; i1 < d; ++i1)
    for (int i2 = 0; i2 < d; ++i2)
      for (int j1 = 0; j1 < d; ++j1)
        for (int j2 = 0; j2 < d; ++j2)
          m(i2 * d + i1, j2 * d + j1) = rho(i1 * d + i2, j1 * d + j2);
  return m;
}

// out = sum_K (K (x) I) rho (K (x) I)^dag on the slow (first) mode.
Matrix apply_kraus_mode1(const KrausSet& ks, const Matrix& rho, int d) {
  int D = d * d;
  Matrix out = Matrix::Zero(D, D);
  Matrix tmp(D, D);
  for (const Matrix& K : ks.ops) {
    tmp.setZero();
    bool any = false;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        cplx k = K(a, b);
        if (k == 0.0) continue;
        tmp.middleRows(a * d, d).noalias() += k * rho.middleRows(b * d, d);
        any = true;
      }
    if (!any) continue;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        cplx k = std::conj(K(a, b));
        if (k == 0.0) continue;
        out.middleCols(a * d, d).noalias() += k * tmp.middleCols(b * d, d);
      }
  }
  return out;
}

}  // namespace detail

DensityMatrix apply_kraus_mode(const KrausSet& ks, const DensityMatrix& rho,
                               int mode) {
  require(rho.space.modes == 2, "apply_kraus_mode: two-mode state expected");
  require(mode == 1 || mode == 2, "apply_kraus_mode: mode must be 1 or 2");
  int d = rho.space.levels();
  if (mode == 1)
    return DensityMatrix(rho.space, detail::apply_kraus_mode1(ks, rho.rho, d),
                         rho.subnormalized);
  DensityMatrix s = swap_modes(rho);
  s = DensityMatrix(s.space, detail::apply_kraus_mode1(ks, s.rho, d),
                    s.subnormalized);
  return swap_modes(s);
}

}  // namespace fockport
