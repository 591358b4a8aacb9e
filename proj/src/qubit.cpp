// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#include "fockport/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fockport {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return m;
}

}  // namespace

DualRailQubit::DualRailQubit(cplx a, cplx b) : alpha(a), beta(b) {
  double n = std::norm(alpha) + std::norm(beta);
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument("DualRailQubit: |alpha|^2 + |beta|^2 != 1");
}

PureState encode_qubit(const DualRailQubit& q, const FockSpace& space) {
  if (space.modes != 2)
    throw std::invalid_argument("encode_qubit: two-mode space required");
  Vector amp = Vector::Zero(space.dim());
  amp(space.index(0, 1)) = q.alpha;
  amp(space.index(1, 0)) = q.beta;
  return PureState(space, std::move(amp));
}

DensityMatrix input_density(const InputMixture& mix, const FockSpace& space) {
  if (mix.eta < 0.0 || mix.eta > 1.0)
    throw std::invalid_argument("input_density: eta outside [0, 1]");
  PureState psi = encode_qubit(mix.qubit, space);
  Matrix qp = psi.amp * psi.amp.adjoint();
  Matrix comp;
  if (mix.complement) {
    if (!(mix.complement->space == space))
      throw std::invalid_argument("input_density: complement space mismatch");
    double overlap =
        std::abs((psi.amp.adjoint() * mix.complement->rho * psi.amp)(0, 0));
    if (overlap > 1e-10)
      throw std::invalid_argument(
          "input_density: complement not orthogonal to the qubit");
    comp = mix.complement->rho;
  } else {
    comp = Matrix::Zero(space.dim(), space.dim());
    comp(space.index(0, 0), space.index(0, 0)) = 1.0;
  }
  return DensityMatrix(space, mix.eta * qp + (1.0 - mix.eta) * comp);
}

FockOperator qubit_rotation_unitary(const DualRailQubit& q,
                                    const FockSpace& space) {
  if (space.modes != 2)
    throw std::invalid_argument(
        "qubit_rotation_unitary: two-mode space required");
  // One-photon action in coordinates (c_{01}, c_{10}): S maps the encoded
  // qubit to (1, 0) and its orthogonal partner to (0, 1).
  Eigen::Matrix2cd S;
  S << std::conj(q.alpha), std::conj(q.beta), -q.beta, q.alpha;
  // Principal logarithm of an SU(2) element: S = cos(t) I + i sin(t) A with
  // A Hermitian, A^2 = I.
  double ct = std::clamp(S.trace().real() * 0.5, -1.0, 1.0);
  double t = std::acos(ct);
  Eigen::Matrix2cd H;
  if (std::sin(t) < 1e-12) {
    H = t * Eigen::Matrix2cd::Identity();  // S = +I or -I
  } else {
    Eigen::Matrix2cd A =
        (S - ct * Eigen::Matrix2cd::Identity()) / cplx(0.0, std::sin(t));
    H = t * A;
  }
  // Reorder to per-mode coordinates: coordinate 1 of S is the photon in
  // mode 2, coordinate 2 the photon in mode 1.
  Eigen::Matrix2cd P;
  P << 0, 1, 1, 0;
  Eigen::Matrix2cd h = P * H * P;
  int d = space.levels();
  Matrix a = annihilation_matrix(d);
  Matrix eye = Matrix::Identity(d, d);
  std::vector<Matrix> A = {kron(a, eye), kron(eye, a)};
  Matrix K = Matrix::Zero(space.dim(), space.dim());
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      if (h(j, k) != 0.0) K.noalias() += h(j, k) * (A[j].adjoint() * A[k]);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (K + K.adjoint()));
  Vector phase(es.eigenvalues().size());
  for (int i = 0; i < phase.size(); ++i)
    phase(i) = std::exp(cplx(0.0, es.eigenvalues()(i)));
  Matrix U = es.eigenvectors() * phase.asDiagonal() *
             es.eigenvectors().adjoint();
  return FockOperator{space, std::move(U)};
}

Fractions decompose_fractions(const DensityMatrix& rho) {
  if (rho.space.modes != 2)
    throw std::invalid_argument("decompose_fractions: two-mode state required");
  const FockSpace& s = rho.space;
  int i00 = s.index(0, 0), i01 = s.index(0, 1), i10 = s.index(1, 0);
  Fractions f;
  f.vacuum = rho.rho(i00, i00).real();
  f.qubit = rho.rho(i01, i01).real() + rho.rho(i10, i10).real();
  f.multiphoton = std::max(0.0, rho.trace() - f.vacuum - f.qubit);
  f.qubit_block << rho.rho(i01, i01), rho.rho(i01, i10), rho.rho(i10, i01),
      rho.rho(i10, i10);
  return f;
}

}  // namespace fockport
