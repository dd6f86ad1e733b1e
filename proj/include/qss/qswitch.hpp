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

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "qss/channels.hpp"
#include "qss/gates.hpp"
#include "qss/linalg.hpp"

// The quantum switch: two channels traversed in a superposition of the two
// possible orders, selected by a control qubit stored as the last tensor
// factor. Includes the entangled-pair form, Hadamard-basis heralding with
// the corrective unitary, and the definite-order (sequential) baseline.

namespace qss {

// Control qubit selecting (or superposing) the traversal order.
template <typename Real>
struct ControlQubit {
  DensityMatrix<Real> state;

  static ControlQubit zero() {
    return {validate_density<Real>(ket_bra<Real>(2, 0, 0))};
  }
  static ControlQubit one() {
    return {validate_density<Real>(ket_bra<Real>(2, 1, 1))};
  }
  static ControlQubit plus() {
    return {validate_density<Real>(projector_plus<Real>())};
  }
};

// Kraus operators of the superposed trajectories, complete within tol.
template <typename Real>
class SwitchKrausSet {
 public:
  explicit SwitchKrausSet(std::vector<ComplexMatrix<Real>> operators,
                          Real tol = Real(1e-10))
      : ops_(std::move(operators)) {
    if (ops_.empty()) throw ShapeError("switch Kraus set is empty");
    const Eigen::Index d = ops_.front().rows();
    ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(d, d);
    for (const auto& w : ops_) {
      if (w.rows() != d || w.cols() != d) {
        throw ShapeError("switch Kraus operators must share one dimension");
      }
      sum += w.adjoint() * w;
    }
    const Real dev = (sum - identity<Real>(d)).cwiseAbs().maxCoeff();
    if (dev > tol) {
      throw std::invalid_argument("switch Kraus set violates completeness");
    }
  }

  const std::vector<ComplexMatrix<Real>>& operators() const { return ops_; }
  Eigen::Index dim() const { return ops_.front().rows(); }

 private:
  std::vector<ComplexMatrix<Real>> ops_;
};

enum class ControlOutcome { Plus, Minus };

// One branch of the control-qubit measurement: its probability and the
// conditional pair state. The state is absent when the probability is below
// 1e-12.
template <typename Real>
struct HeraldedBranch {
  ControlOutcome outcome{};
  Real probability{};
  std::optional<DensityMatrix<Real>> pair_state;
};

template <typename Real>
struct HeraldResult {
  HeraldedBranch<Real> plus;
  HeraldedBranch<Real> minus;
};

// Plus branch as heralded; minus branch after the corrective unitary.
template <typename Real>
struct SwitchDistribution {
  HeraldedBranch<Real> plus;
  HeraldedBranch<Real> minus;
};

/// Kraus operators W_ij = D_i E_j (x) |0><0| + E_j D_i (x) |1><1| of the
/// switched channel pair. For carrier_dim 4 the single-qubit channels act on
/// the second qubit of the carrier pair, so each operator gains a leading
/// identity factor.
template <typename Real>
SwitchKrausSet<Real> switch_kraus(const KrausChannel<Real>& d,
                                  const KrausChannel<Real>& e,
                                  Eigen::Index carrier_dim) {
  if (d.dim() != 2 || e.dim() != 2) {
    throw ShapeError("switch_kraus: expected single-qubit channels");
  }
  if (carrier_dim != 2 && carrier_dim != 4) {
    throw ShapeError("switch_kraus: carrier dimension must be 2 or 4");
  }
  const KrausChannel<Real> dc = carrier_dim == 4 ? extend_to_carrier(d) : d;
  const KrausChannel<Real> ec = carrier_dim == 4 ? extend_to_carrier(e) : e;
  const ComplexMatrix<Real> p0 = ket_bra<Real>(2, 0, 0);
  const ComplexMatrix<Real> p1 = ket_bra<Real>(2, 1, 1);
  std::vector<ComplexMatrix<Real>> ops;
  ops.reserve(dc.operators().size() * ec.operators().size());
  for (const auto& di : dc.operators()) {
    for (const auto& ej : ec.operators()) {
      ops.push_back(
          (tensor((di * ej).eval(), p0) + tensor((ej * di).eval(), p1)).eval());
    }
  }
  return SwitchKrausSet<Real>(std::move(ops));
}

/// Switched transmission of a single qubit: sum W (rho (x) rho_c) W^dag.
template <typename Real>
DensityMatrix<Real> switch_apply_single(const KrausChannel<Real>& d,
                                        const KrausChannel<Real>& e,
                                        const ControlQubit<Real>& ctrl,
                                        const DensityMatrix<Real>& rho) {
  if (rho.dim() != 2) throw ShapeError("switch_apply_single: expected dim 2");
  const SwitchKrausSet<Real> ks = switch_kraus(d, e, 2);
  const ComplexMatrix<Real> joint = tensor(rho.matrix(), ctrl.state.matrix());
  return validate_density<Real>(detail::kraus_sum(ks.operators(), joint));
}

/// Switched distribution of one member of an entangled pair; the first pair
/// qubit stays put, the second traverses the superposed trajectories.
template <typename Real>
DensityMatrix<Real> switch_apply_pair(const KrausChannel<Real>& d,
                                      const KrausChannel<Real>& e,
                                      const ControlQubit<Real>& ctrl,
                                      const DensityMatrix<Real>& rho_e) {
  if (rho_e.dim() != 4) throw ShapeError("switch_apply_pair: expected dim 4");
  const SwitchKrausSet<Real> ks = switch_kraus(d, e, 4);
  const ComplexMatrix<Real> joint = tensor(rho_e.matrix(), ctrl.state.matrix());
  return validate_density<Real>(detail::kraus_sum(ks.operators(), joint));
}

namespace detail {

// Basis ket-bra expansions of the pair-space operators I(x)Z, I(x)X and
// I(x)XZ, indexed as |ab> -> 2a + b.
template <typename Real>
ComplexMatrix<Real> pair_phase_op() {
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(4, 4);
  for (Eigen::Index i = 0; i < 2; ++i) {
    m += ket_bra<Real>(4, 2 * i + 0, 2 * i + 0);
    m -= ket_bra<Real>(4, 2 * (i ^ 1) + 1, 2 * (i ^ 1) + 1);
  }
  return m;
}

template <typename Real>
ComplexMatrix<Real> pair_flip_op() {
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(4, 4);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      m += ket_bra<Real>(4, 2 * i + j, 2 * i + (j ^ 1));
    }
  }
  return m;
}

template <typename Real>
ComplexMatrix<Real> pair_flip_phase_op() {
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(4, 4);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      const Real sign = (j ^ 1) ? Real(-1) : Real(1);
      m += sign * ket_bra<Real>(4, 2 * i + j, 2 * i + (j ^ 1));
    }
  }
  return m;
}

}  // namespace detail

/// Closed form of the switch output on a pair with the control prepared in
/// |+>: three decohered terms stay tensored with |+><+| while the pq term,
/// conjugated by I(x)XZ, flips the control to |-><-|.
template <typename Real>
DensityMatrix<Real> switch_pair_closed_form(const FlipParams<Real>& params,
                                            const DensityMatrix<Real>& rho_e) {
  if (rho_e.dim() != 4) throw ShapeError("switch_pair_closed_form: expected dim 4");
  const Real p = params.p;
  const Real q = params.q;
  const ComplexMatrix<Real>& rho = rho_e.matrix();
  const ComplexMatrix<Real> zc = detail::pair_phase_op<Real>();
  const ComplexMatrix<Real> xc = detail::pair_flip_op<Real>();
  const ComplexMatrix<Real> xzc = detail::pair_flip_phase_op<Real>();

  const ComplexMatrix<Real> plus_part =
      ((Real(1) - p) * (Real(1) - q) * rho +
       (Real(1) - p) * q * (zc * rho * zc.adjoint()) +
       p * (Real(1) - q) * (xc * rho * xc.adjoint()))
          .eval();
  const ComplexMatrix<Real> minus_part =
      (p * q * (xzc * rho * xzc.adjoint())).eval();

  return validate_density<Real>(
      (tensor(plus_part, projector_plus<Real>()) +
       tensor(minus_part, projector_minus<Real>()))
          .eval());
}

/// Measures the control qubit (last factor of the 8-dim joint state) in the
/// Hadamard basis. Each branch carries the outcome probability and, when the
/// probability exceeds 1e-12, the renormalized pair state with the control
/// traced out.
template <typename Real>
HeraldResult<Real> herald(const DensityMatrix<Real>& joint) {
  if (joint.dim() != 8) throw ShapeError("herald: expected dim 8");
  auto branch = [&joint](ControlOutcome outcome) {
    const ComplexMatrix<Real> proj =
        outcome == ControlOutcome::Plus ? projector_plus<Real>()
                                        : projector_minus<Real>();
    const ComplexMatrix<Real> big = tensor(identity<Real>(4), proj);
    const ComplexMatrix<Real> projected = (big * joint.matrix() * big).eval();
    const Real prob = projected.trace().real();
    if (prob < Real(-1e-12) || prob > Real(1) + Real(1e-12)) {
      throw std::runtime_error("herald: branch probability outside [0, 1]");
    }
    HeraldedBranch<Real> b{outcome, std::clamp(prob, Real(0), Real(1)), {}};
    if (b.probability > Real(1e-12)) {
      b.pair_state = validate_density<Real>(
          partial_trace<Real>((projected / prob).eval(), {4, 2}, {0}));
    }
    return b;
  };
  return {branch(ControlOutcome::Plus), branch(ControlOutcome::Minus)};
}

/// Corrective unitary I(x)XZ on a heralded minus branch. For the switch
/// output this recovers the input pair exactly; applying it twice is the
/// identity up to the cancelling global phase of (XZ)^2.
template <typename Real>
DensityMatrix<Real> correct_minus(const HeraldedBranch<Real>& branch) {
  if (branch.outcome != ControlOutcome::Minus || !branch.pair_state) {
    throw std::invalid_argument("correct_minus: empty or non-minus branch");
  }
  const ComplexMatrix<Real> u =
      tensor(identity<Real>(2), (pauli_x<Real>() * pauli_z<Real>()).eval());
  return validate_density<Real>(
      (u * branch.pair_state->matrix() * u.adjoint()).eval());
}

/// Full switched-distribution pipeline with the control fixed at |+>:
/// switch, herald, and correct the minus branch. The minus branch returns
/// the input pair with probability p*q; the plus branch carries the
/// renormalized degraded mixture.
template <typename Real>
SwitchDistribution<Real> distribute_qs(const FlipParams<Real>& params,
                                       const DensityMatrix<Real>& rho_e) {
  const DensityMatrix<Real> joint =
      switch_apply_pair(bit_flip(params.p), phase_flip(params.q),
                        ControlQubit<Real>::plus(), rho_e);
  HeraldResult<Real> heralded = herald(joint);
  SwitchDistribution<Real> out{std::move(heralded.plus), std::move(heralded.minus)};
  if (out.minus.pair_state) {
    out.minus.pair_state = correct_minus(out.minus);
  }
  return out;
}

/// Definite-order baseline: the pair member traverses the bit-flip channel
/// and then the phase-flip channel. The result is order-symmetric for these
/// channels.
template <typename Real>
DensityMatrix<Real> distribute_ct(const FlipParams<Real>& params,
                                  const DensityMatrix<Real>& rho_e) {
  if (rho_e.dim() != 4) throw ShapeError("distribute_ct: expected dim 4");
  const KrausChannel<Real> first = extend_to_carrier(bit_flip(params.p));
  const KrausChannel<Real> second = extend_to_carrier(phase_flip(params.q));
  return apply(second, apply(first, rho_e));
}

}  // namespace qss
