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

#include "qss/linalg.hpp"

// The standard gate set plus a few basis kets, projectors and the maximally
// entangled two-qubit state used throughout.

namespace qss {

template <typename Real>
ComplexMatrix<Real> identity(Eigen::Index dim) {
  return ComplexMatrix<Real>::Identity(dim, dim);
}

template <typename Real>
ComplexMatrix<Real> pauli_x() {
  ComplexMatrix<Real> m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

template <typename Real>
ComplexMatrix<Real> pauli_y() {
  const std::complex<Real> i(0, 1);
  ComplexMatrix<Real> m(2, 2);
  m << std::complex<Real>(0), -i, i, std::complex<Real>(0);
  return m;
}

template <typename Real>
ComplexMatrix<Real> pauli_z() {
  ComplexMatrix<Real> m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

template <typename Real>
ComplexMatrix<Real> hadamard() {
  const Real s = Real(1) / std::sqrt(Real(2));
  ComplexMatrix<Real> m(2, 2);
  m << s, s, s, -s;
  return m;
}

/// CNOT with the first qubit as control, second as target.
template <typename Real>
ComplexMatrix<Real> cnot() {
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

template <typename Real>
ComplexVector<Real> basis_ket(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw ShapeError("basis_ket: index out of range");
  ComplexVector<Real> v = ComplexVector<Real>::Zero(dim);
  v(index) = 1;
  return v;
}

/// |i><j| on a dim-dimensional space.
template <typename Real>
ComplexMatrix<Real> ket_bra(Eigen::Index dim, Eigen::Index i, Eigen::Index j) {
  if (i < 0 || i >= dim || j < 0 || j >= dim) {
    throw ShapeError("ket_bra: index out of range");
  }
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(dim, dim);
  m(i, j) = 1;
  return m;
}

// |+><+| and |-><-| with exact 1/2 entries.
template <typename Real>
ComplexMatrix<Real> projector_plus() {
  ComplexMatrix<Real> m(2, 2);
  m << Real(0.5), Real(0.5), Real(0.5), Real(0.5);
  return m;
}

template <typename Real>
ComplexMatrix<Real> projector_minus() {
  ComplexMatrix<Real> m(2, 2);
  m << Real(0.5), Real(-0.5), Real(-0.5), Real(0.5);
  return m;
}

/// (|00> + |11>) / sqrt(2).
template <typename Real>
PureState<Real> bell_phi_plus_state() {
  const Real s = Real(1) / std::sqrt(Real(2));
  ComplexVector<Real> v = ComplexVector<Real>::Zero(4);
  v(0) = s;
  v(3) = s;
  return PureState<Real>(std::move(v));
}

/// Density matrix of the |Phi+> pair, with exact 1/2 entries at the corners.
template <typename Real>
DensityMatrix<Real> bell_phi_plus() {
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(4, 4);
  m(0, 0) = Real(0.5);
  m(0, 3) = Real(0.5);
  m(3, 0) = Real(0.5);
  m(3, 3) = Real(0.5);
  return validate_density<Real>(m);
}

}  // namespace qss
