// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// Dual-rail photonic qubit model: a single photon shared between two modes,
// logical basis {|0,1>, |1,0>}, mixed with a vacuum-dominated complement.

#pragma once

#include <optional>

#include "fockport/fock.hpp"

namespace fockport {

struct DualRailQubit {
  cplx alpha{1.0, 0.0};  // amplitude on |0,1>
  cplx beta{0.0, 0.0};   // amplitude on |1,0>

  DualRailQubit() = default;
  DualRailQubit(cplx a, cplx b);  // requires |a|^2 + |b|^2 = 1 within 1e-12
};

// eta * qubit + (1 - eta) * complement; complement defaults to vacuum and
// must be orthogonal to the encoded qubit.
struct InputMixture {
  double eta = 1.0;
  DualRailQubit qubit;
  std::optional<DensityMatrix> complement;
};

struct Fractions {
  double vacuum = 0.0;
  double qubit = 0.0;
  double multiphoton = 0.0;
  Eigen::Matrix2cd qubit_block;  // unrenormalized, basis {|0,1>, |1,0>}
};

PureState encode_qubit(const DualRailQubit& q, const FockSpace& space);

DensityMatrix input_density(const InputMixture& mix, const FockSpace& space);

// Photon-number-conserving unitary U with U |psi_q> = |0,1>. Exact on every
// total-photon sector that fits completely under the cutoff.
FockOperator qubit_rotation_unitary(const DualRailQubit& q,
                                    const FockSpace& space);

// Vacuum / one-photon (qubit) / rest decomposition of a two-mode state.
Fractions decompose_fractions(const DensityMatrix& rho);

}  // namespace fockport
