// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// Truncated Fock-space state and operator toolbox: one and two bosonic
// modes with a hard photon-number cutoff per mode.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fockport {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Collects soft warnings and numeric self-check results from operations
// that can silently lose accuracy (cutoff truncation, trace leakage).
struct Diagnostics {
  double tail_mass = 0.0;
  double trace_error = 0.0;
  std::vector<std::string> warnings;
  void warn(std::string msg) { warnings.push_back(std::move(msg)); }
};

// Basis: |n1,n2> with n_i in 0..cutoff, mode 1 slow in the flat index.
struct FockSpace {
  int modes;
  int cutoff;

  FockSpace(int modes_, int cutoff_);

  int levels() const { return cutoff + 1; }
  int dim() const;
  int index(int n1) const;
  int index(int n1, int n2) const;

  friend bool operator==(const FockSpace&, const FockSpace&) = default;
};

struct DensityMatrix;

struct PureState {
  FockSpace space;
  Vector amp;

  PureState(FockSpace s, Vector a);
  DensityMatrix to_density() const;
};

// Density operator on a FockSpace. `subnormalized` marks states whose trace
// is legitimately below one (conditional outputs, truncation leakage).
struct DensityMatrix {
  FockSpace space;
  Matrix rho;
  bool subnormalized = false;

  DensityMatrix(FockSpace s, Matrix m, bool subnorm = false);

  double trace() const { return rho.trace().real(); }

  // Throws std::invalid_argument on Hermiticity violation (> 1e-10),
  // eigenvalue below -1e-9, trace above 1 + 1e-9, or (unless subnormalized)
  // trace away from 1 by more than 1e-9.
  void validate() const;
};

struct FockOperator {
  FockSpace space;
  Matrix mat;
};

struct KrausSet {
  std::vector<Matrix> ops;
};

struct SubspaceBlock {
  Matrix block;   // renormalized to unit trace
  double weight;  // probability weight of the subspace
};

// Single-mode ladder operator, levels x levels.
Matrix annihilation_matrix(int levels);

// Kronecker product with mode 1 slow; both factors single-mode.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Traces out the given mode (1 or 2) of a two-mode state.
DensityMatrix partial_trace(const DensityMatrix& rho, int traced_mode);

// Exchanges the two modes.
DensityMatrix swap_modes(const DensityMatrix& rho);

// D(beta) = exp(beta a^dag - conj(beta) a) on a single mode, built from the
// closed-form matrix elements (associated Laguerre polynomials). Truncation
// makes the top rows/columns inaccurate; a warning is recorded when
// |beta|^2 > cutoff/4.
FockOperator displacement_operator(const FockSpace& space, cplx beta,
                                   Diagnostics* diag = nullptr);

// Hermitian PSD square root via eigendecomposition. Eigenvalues in
// [-1e-9, 0) are clamped to zero; below -1e-9 throws std::invalid_argument.
Matrix matrix_sqrt_psd(const Matrix& m);

// Renormalized restriction of rho to the given flat basis indices.
// Throws std::invalid_argument when the contained weight is below 1e-12.
SubspaceBlock subspace_block(const DensityMatrix& rho,
                             const std::vector<int>& indices);

// Probability of finding any single mode above cutoff - 2 photons.
double tail_mass(const DensityMatrix& rho);

// sum_k K rho K^dag for a single-mode state / raw matrix.
Matrix apply_kraus(const KrausSet& ks, const Matrix& rho);
DensityMatrix apply_kraus(const KrausSet& ks, const DensityMatrix& rho);

// Applies a single-mode Kraus set to one mode (1 or 2) of a two-mode state.
DensityMatrix apply_kraus_mode(const KrausSet& ks, const DensityMatrix& rho,
                               int mode);

namespace detail {

// Raw-matrix workhorses shared by the channel kernels: d is levels per mode.
Matrix apply_kraus_mode1(const KrausSet& ks, const Matrix& rho, int d);
Matrix swap_modes_raw(const Matrix& rho, int d);

}  // namespace detail

}  // namespace fockport
