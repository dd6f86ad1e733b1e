// Copyright 2026 The qswitchsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <optional>
#include <utility>

#include "qss/gates.hpp"
#include "qss/linalg.hpp"

// Teleportation of a qubit over an arbitrary (possibly degraded) shared
// pair: the full circuit (CNOT, Hadamard, projective measurement, Pauli
// correction) and the equivalent block closed form of Bob's state per
// measurement outcome. Tensor order is (message, pair qubit A, pair qubit B).

namespace qss {

// Alice's two measurement bits: msg_bit from the message wire, epr_bit from
// her pair qubit.
struct AliceOutcome {
  int msg_bit = 0;
  int epr_bit = 0;

  AliceOutcome() = default;
  AliceOutcome(int msg, int epr) : msg_bit(msg), epr_bit(epr) {
    if ((msg_bit != 0 && msg_bit != 1) || (epr_bit != 0 && epr_bit != 1)) {
      throw std::out_of_range("AliceOutcome: bits must be 0 or 1");
    }
  }

  int index() const { return 2 * msg_bit + epr_bit; }
};

// 2x2 quadrants of a 4x4 pair state. The lower-left block must be the
// adjoint of the upper-right one and the reassembled matrix must be a valid
// density matrix.
template <typename Real>
struct EprBlocks {
  ComplexMatrix<Real> b11, b12, b21, b22;

  EprBlocks(ComplexMatrix<Real> b11_, ComplexMatrix<Real> b12_,
            ComplexMatrix<Real> b21_, ComplexMatrix<Real> b22_)
      : b11(std::move(b11_)),
        b12(std::move(b12_)),
        b21(std::move(b21_)),
        b22(std::move(b22_)) {
    for (const auto* b : {&b11, &b12, &b21, &b22}) {
      if (b->rows() != 2 || b->cols() != 2) {
        throw ShapeError("EprBlocks: blocks must be 2x2");
      }
    }
    if ((b21 - b12.adjoint().eval()).cwiseAbs().maxCoeff() > Real(1e-12)) {
      throw std::invalid_argument("EprBlocks: lower-left block is not the "
                                  "adjoint of the upper-right block");
    }
    ComplexMatrix<Real> full(4, 4);
    full.block(0, 0, 2, 2) = b11;
    full.block(0, 2, 2, 2) = b12;
    full.block(2, 0, 2, 2) = b21;
    full.block(2, 2, 2, 2) = b22;
    validate_density<Real>(full);
  }
};

/// Quadrants of the pair state.
template <typename Real>
EprBlocks<Real> split_blocks(const DensityMatrix<Real>& pair) {
  if (pair.dim() != 4) throw ShapeError("split_blocks: expected dim 4");
  const ComplexMatrix<Real>& m = pair.matrix();
  return EprBlocks<Real>(m.block(0, 0, 2, 2), m.block(0, 2, 2, 2),
                         m.block(2, 0, 2, 2), m.block(2, 2, 2, 2));
}

template <typename Real>
DensityMatrix<Real> reassemble(const EprBlocks<Real>& blocks) {
  ComplexMatrix<Real> full(4, 4);
  full.block(0, 0, 2, 2) = blocks.b11;
  full.block(0, 2, 2, 2) = blocks.b12;
  full.block(2, 0, 2, 2) = blocks.b21;
  full.block(2, 2, 2, 2) = blocks.b22;
  return validate_density<Real>(full);
}

// One of the four measurement branches: its probability and Bob's corrected
// state (absent when the probability is below 1e-12).
template <typename Real>
struct TeleportResult {
  AliceOutcome outcome;
  Real probability{};
  std::optional<DensityMatrix<Real>> bob_state;
};

namespace detail {

// Signed block combination of Bob's post-measurement state, before the
// Pauli correction and including the leading factor 2. Exact only when the
// four outcomes are equiprobable, which holds for every pair produced by
// the flip channels. Generic over the block matrix type so the quadrature
// loops can run on fixed-size matrices.
template <typename Real, typename MatType>
MatType teleport_block_combo(const std::complex<Real>& m11,
                             const std::complex<Real>& m12,
                             const std::complex<Real>& m21,
                             const std::complex<Real>& m22, const MatType& b11,
                             const MatType& b12, const MatType& b21,
                             const MatType& b22, int outcome_index) {
  switch (outcome_index) {
    case 0:
      return Real(2) * (m11 * b11 + m12 * b12 + m21 * b21 + m22 * b22);
    case 1:
      return Real(2) * (m22 * b11 + m21 * b12 + m12 * b21 + m11 * b22);
    case 2:
      return Real(2) * (m11 * b11 - m12 * b12 - m21 * b21 + m22 * b22);
    default:
      return Real(2) * (m22 * b11 - m21 * b12 - m12 * b21 + m11 * b22);
  }
}

// Pauli correction for an outcome: identity, X, Z or ZX.
template <typename Real>
ComplexMatrix<Real> teleport_correction(const AliceOutcome& outcome) {
  switch (outcome.index()) {
    case 0:
      return identity<Real>(2);
    case 1:
      return pauli_x<Real>();
    case 2:
      return pauli_z<Real>();
    default:
      return (pauli_z<Real>() * pauli_x<Real>()).eval();
  }
}

template <typename Real>
ComplexMatrix<Real> teleport_outcome_state(
    const std::complex<Real>& m11, const std::complex<Real>& m12,
    const std::complex<Real>& m21, const std::complex<Real>& m22,
    const EprBlocks<Real>& blocks, const AliceOutcome& outcome) {
  const ComplexMatrix<Real> combo = teleport_block_combo<Real, ComplexMatrix<Real>>(
      m11, m12, m21, m22, blocks.b11, blocks.b12, blocks.b21, blocks.b22,
      outcome.index());
  if (outcome.index() == 0) return combo;
  const ComplexMatrix<Real> corr = teleport_correction<Real>(outcome);
  return (corr * combo * corr.adjoint()).eval();
}

}  // namespace detail

/// Bob's corrected state for one measurement outcome, from the block closed
/// form of the shared pair.
template <typename Real>
DensityMatrix<Real> teleport_closed_form(const DensityMatrix<Real>& message,
                                         const EprBlocks<Real>& blocks,
                                         const AliceOutcome& outcome) {
  if (message.dim() != 2) throw ShapeError("teleport_closed_form: expected dim 2");
  const ComplexMatrix<Real>& m = message.matrix();
  return validate_density<Real>(detail::teleport_outcome_state(
      m(0, 0), m(0, 1), m(1, 0), m(1, 1), blocks, outcome));
}

/// Full teleportation circuit. Alice entangles the message with her pair
/// qubit (CNOT), rotates the message wire (H) and measures both qubits; Bob
/// applies the outcome-dependent Pauli correction to his qubit. Returns all
/// four branches with exact probabilities.
template <typename Real>
std::array<TeleportResult<Real>, 4> teleport_circuit(
    const DensityMatrix<Real>& message, const DensityMatrix<Real>& pair) {
  if (message.dim() != 2) throw ShapeError("teleport_circuit: message must be dim 2");
  if (pair.dim() != 4) throw ShapeError("teleport_circuit: pair must be dim 4");

  const ComplexMatrix<Real> rho1 = tensor(message.matrix(), pair.matrix());
  const ComplexMatrix<Real> u_cnot = tensor(cnot<Real>(), identity<Real>(2));
  const ComplexMatrix<Real> rho2 = (u_cnot * rho1 * u_cnot.adjoint()).eval();
  const ComplexMatrix<Real> u_h = tensor(hadamard<Real>(), identity<Real>(4));
  const ComplexMatrix<Real> rho3 = (u_h * rho2 * u_h.adjoint()).eval();

  std::array<TeleportResult<Real>, 4> results;
  for (int msg_bit = 0; msg_bit < 2; ++msg_bit) {
    for (int epr_bit = 0; epr_bit < 2; ++epr_bit) {
      const AliceOutcome outcome(msg_bit, epr_bit);
      const ComplexMatrix<Real> proj =
          tensor(ket_bra<Real>(4, outcome.index(), outcome.index()),
                 identity<Real>(2));
      const ComplexMatrix<Real> collapsed = (proj * rho3 * proj.adjoint()).eval();
      const Real prob = collapsed.trace().real();
      TeleportResult<Real> res{outcome, std::clamp(prob, Real(0), Real(1)), {}};
      if (prob > Real(1e-12)) {
        const ComplexMatrix<Real> bob_pre = partial_trace<Real>(
            (collapsed / prob).eval(), {2, 2, 2}, {2});
        const ComplexMatrix<Real> corr = detail::teleport_correction<Real>(outcome);
        res.bob_state =
            validate_density<Real>((corr * bob_pre * corr.adjoint()).eval());
      }
      results[outcome.index()] = std::move(res);
    }
  }
  return results;
}

}  // namespace qss
