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
#include <string>
#include <utility>
#include <vector>

#include "qss/gates.hpp"
#include "qss/linalg.hpp"

// Kraus-operator channels: the bit-flip and phase-flip channels, their
// carrier extension and sequential composition, and the single-channel
// capacity utilities.

namespace qss {

// Error probabilities of the bit-flip (p) and phase-flip (q) channels.
template <typename Real>
struct FlipParams {
  Real p{};
  Real q{};

  FlipParams(Real p_, Real q_) : p(p_), q(q_) {
    if (p < Real(0) || p > Real(1) || q < Real(0) || q > Real(1)) {
      throw std::out_of_range("flip probabilities must lie in [0, 1]");
    }
  }
};

// A named set of Kraus operators {K_i}, all square of equal dimension,
// satisfying the completeness relation sum K_i^dag K_i = I within tol.
template <typename Real>
class KrausChannel {
 public:
  KrausChannel(std::string name, std::vector<ComplexMatrix<Real>> operators,
               Real tol = Real(1e-10))
      : name_(std::move(name)), ops_(std::move(operators)) {
    if (ops_.empty()) throw ShapeError("channel needs at least one operator");
    const Eigen::Index d = ops_.front().rows();
    if (d < 1 || d > kMaxDim) throw ShapeError("channel dimension out of range");
    for (const auto& k : ops_) {
      if (k.rows() != d || k.cols() != d) {
        throw ShapeError("channel operators must be square of equal dimension");
      }
    }
    ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(d, d);
    for (const auto& k : ops_) sum += k.adjoint() * k;
    const Real dev = (sum - identity<Real>(d)).cwiseAbs().maxCoeff();
    if (dev > tol) {
      throw std::invalid_argument("channel '" + name_ +
                                  "' violates completeness (deviation " +
                                  std::to_string(dev) + ")");
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<ComplexMatrix<Real>>& operators() const { return ops_; }
  Eigen::Index dim() const { return ops_.front().rows(); }

 private:
  std::string name_;
  std::vector<ComplexMatrix<Real>> ops_;
};

namespace detail {

template <typename Real>
ComplexMatrix<Real> kraus_sum(const std::vector<ComplexMatrix<Real>>& ops,
                              const ComplexMatrix<Real>& m) {
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(m.rows(), m.cols());
  for (const auto& k : ops) out += k * m * k.adjoint();
  return out;
}

}  // namespace detail

/// Flips |0> and |1> with probability p: Kraus set {sqrt(1-p) I, sqrt(p) X},
/// acting as rho -> (1-p) rho + p X rho X.
template <typename Real>
KrausChannel<Real> bit_flip(Real p) {
  if (p < Real(0) || p > Real(1)) throw std::out_of_range("bit_flip: p outside [0, 1]");
  std::vector<ComplexMatrix<Real>> ops;
  ops.push_back((std::sqrt(Real(1) - p) * identity<Real>(2)).eval());
  ops.push_back((std::sqrt(p) * pauli_x<Real>()).eval());
  return KrausChannel<Real>("bit_flip", std::move(ops));
}

/// Applies a relative phase of pi with probability q: {sqrt(1-q) I, sqrt(q) Z}.
template <typename Real>
KrausChannel<Real> phase_flip(Real q) {
  if (q < Real(0) || q > Real(1)) throw std::out_of_range("phase_flip: q outside [0, 1]");
  std::vector<ComplexMatrix<Real>> ops;
  ops.push_back((std::sqrt(Real(1) - q) * identity<Real>(2)).eval());
  ops.push_back((std::sqrt(q) * pauli_z<Real>()).eval());
  return KrausChannel<Real>("phase_flip", std::move(ops));
}

template <typename Real>
KrausChannel<Real> identity_channel(Eigen::Index dim) {
  return KrausChannel<Real>("identity", {identity<Real>(dim)});
}

/// rho -> sum K rho K^dag; the output is validated as a density matrix.
template <typename Real>
DensityMatrix<Real> apply(const KrausChannel<Real>& chan,
                          const DensityMatrix<Real>& rho) {
  if (chan.dim() != rho.dim()) throw ShapeError("apply: dimension mismatch");
  return validate_density<Real>(detail::kraus_sum(chan.operators(), rho.matrix()));
}

/// Lifts a single-qubit channel to the second qubit of a pair: every K
/// becomes I (x) K. Completeness carries over.
template <typename Real>
KrausChannel<Real> extend_to_carrier(const KrausChannel<Real>& chan) {
  if (chan.dim() != 2) {
    throw ShapeError("extend_to_carrier: expected a single-qubit channel");
  }
  std::vector<ComplexMatrix<Real>> ops;
  ops.reserve(chan.operators().size());
  for (const auto& k : chan.operators()) {
    ops.push_back(tensor(identity<Real>(2), k));
  }
  return KrausChannel<Real>(chan.name() + " on carrier", std::move(ops));
}

/// Channel traversal first -> second, materialized as the operator set
/// {S_j F_i}. Acting with the composed set equals applying the two channels
/// in sequence.
template <typename Real>
KrausChannel<Real> compose_sequential(const KrausChannel<Real>& first,
                                      const KrausChannel<Real>& second) {
  if (first.dim() != second.dim()) {
    throw ShapeError("compose_sequential: dimension mismatch");
  }
  std::vector<ComplexMatrix<Real>> ops;
  ops.reserve(first.operators().size() * second.operators().size());
  for (const auto& f : first.operators()) {
    for (const auto& s : second.operators()) {
      ops.push_back((s * f).eval());
    }
  }
  return KrausChannel<Real>(first.name() + "->" + second.name(), std::move(ops));
}

/// -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0 by continuity.
template <typename Real>
Real binary_entropy(Real x) {
  if (x < Real(0) || x > Real(1)) {
    throw std::out_of_range("binary_entropy: argument outside [0, 1]");
  }
  if (x <= Real(0) || x >= Real(1)) return Real(0);
  return -x * std::log2(x) - (Real(1) - x) * std::log2(Real(1) - x);
}

/// Quantum capacity of a flip channel with error probability x.
template <typename Real>
Real flip_capacity(Real x) {
  return Real(1) - binary_entropy(x);
}

/// Upper bound on the capacity of the two flip channels in sequence: a
/// cascade cannot beat its worst link. No claim about the exact composed
/// capacity.
template <typename Real>
Real bottleneck_bound(const FlipParams<Real>& params) {
  return Real(1) - std::max(binary_entropy(params.p), binary_entropy(params.q));
}

}  // namespace qss
