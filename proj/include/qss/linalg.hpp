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

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Dense complex linear algebra for few-qubit states (dimensions 2..8).
// Everything is exact double-precision arithmetic on small matrices; all
// values are immutable after construction and all functions are pure.

namespace qss {

template <typename Real>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

// Largest Hilbert-space dimension handled anywhere (three qubits).
inline constexpr Eigen::Index kMaxDim = 8;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionOverflow : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Raised when a matrix fails one of the density-matrix invariants. The kind
// identifies which invariant broke.
class DensityError : public std::runtime_error {
 public:
  enum class Kind { NotHermitian, TraceNotOne, NotPositive };

  DensityError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Conjugate transpose, materialized.
template <typename Derived>
auto dagger(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint().eval();
}

/// Kronecker product with block ordering a_ij * b. Dimensions multiply; the
/// result must stay within kMaxDim.
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a,
            const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() * b.rows() > kMaxDim || a.cols() * b.cols() > kMaxDim) {
    throw DimensionOverflow("tensor: result dimension exceeds " +
                            std::to_string(kMaxDim));
  }
  return Eigen::kroneckerProduct(a, b).eval();
}

/// Partial trace of a square matrix over a tensor factorization.
///
/// `dims` lists the factor dimensions in row-major (first factor most
/// significant) order and must multiply to the matrix dimension. `keep`
/// selects the factor indices to retain (nonempty, deduplicated here); the
/// reduced matrix keeps the factors in their original relative order.
template <typename Real>
ComplexMatrix<Real> partial_trace(const ComplexMatrix<Real>& m,
                                  const std::vector<int>& dims,
                                  std::vector<int> keep) {
  if (m.rows() != m.cols()) throw ShapeError("partial_trace: matrix not square");
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d < 1) throw ShapeError("partial_trace: nonpositive factor dimension");
    total *= d;
  }
  if (total != m.rows()) {
    throw ShapeError("partial_trace: factor dimensions do not match matrix");
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw ShapeError("partial_trace: empty keep set");
  for (int f : keep) {
    if (f < 0 || f >= static_cast<int>(dims.size())) {
      throw ShapeError("partial_trace: keep index out of range");
    }
  }

  const int n_factors = static_cast<int>(dims.size());
  std::vector<Eigen::Index> stride(n_factors, 1);
  for (int f = n_factors - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  std::vector<int> traced;
  for (int f = 0; f < n_factors; ++f) {
    if (!std::binary_search(keep.begin(), keep.end(), f)) traced.push_back(f);
  }

  // Flat offsets contributed by every multi-index over a factor subset.
  auto offsets_over = [&](const std::vector<int>& factors) {
    std::vector<Eigen::Index> offs{0};
    for (int f : factors) {
      std::vector<Eigen::Index> next;
      next.reserve(offs.size() * dims[f]);
      for (Eigen::Index base : offs) {
        for (int digit = 0; digit < dims[f]; ++digit) {
          next.push_back(base + digit * stride[f]);
        }
      }
      offs = std::move(next);
    }
    return offs;
  };

  const std::vector<Eigen::Index> kept_offsets = offsets_over(keep);
  const std::vector<Eigen::Index> traced_offsets = offsets_over(traced);

  const auto out_dim = static_cast<Eigen::Index>(kept_offsets.size());
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(out_dim, out_dim);
  for (Eigen::Index r = 0; r < out_dim; ++r) {
    for (Eigen::Index c = 0; c < out_dim; ++c) {
      std::complex<Real> sum{};
      for (Eigen::Index t : traced_offsets) {
        sum += m(kept_offsets[r] + t, kept_offsets[c] + t);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

// A dim x dim (dim in {2, 4, 8}) complex matrix certified Hermitian,
// unit-trace and positive semidefinite at construction. The eigenvalue check
// runs a Hermitian eigensolver on the symmetrized matrix; the PSD tolerance
// is negative to absorb rounding on rank-deficient projected states.
template <typename Real>
class DensityMatrix {
 public:
  static constexpr Real kDefaultTol = Real(1e-10);

  explicit DensityMatrix(ComplexMatrix<Real> m, Real tol = kDefaultTol)
      : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() ||
        (mat_.rows() != 2 && mat_.rows() != 4 && mat_.rows() != 8)) {
      throw ShapeError("density matrix must be square with dim in {2,4,8}");
    }
    const Real herm_dev = (mat_ - mat_.adjoint().eval()).cwiseAbs().maxCoeff();
    if (herm_dev > tol) {
      throw DensityError(DensityError::Kind::NotHermitian,
                         "density matrix not Hermitian (deviation " +
                             std::to_string(herm_dev) + ")");
    }
    const std::complex<Real> tr = mat_.trace();
    if (std::abs(tr.real() - Real(1)) > tol || std::abs(tr.imag()) > tol) {
      throw DensityError(DensityError::Kind::TraceNotOne,
                         "density matrix trace differs from one");
    }
    const ComplexMatrix<Real> sym = (mat_ + mat_.adjoint().eval()) / Real(2);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(sym,
                                                          Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
      throw DensityError(DensityError::Kind::NotPositive,
                         "density matrix has a negative eigenvalue");
    }
  }

  const ComplexMatrix<Real>& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  ComplexMatrix<Real> mat_;
};

/// Checked construction of a DensityMatrix; throws ShapeError or
/// DensityError with the violated invariant.
template <typename Real>
DensityMatrix<Real> validate_density(const ComplexMatrix<Real>& m,
                                     Real tol = DensityMatrix<Real>::kDefaultTol) {
  return DensityMatrix<Real>(m, tol);
}

/// Partial trace over a state; the reduction of a valid density matrix is
/// again a valid density matrix.
template <typename Real>
DensityMatrix<Real> partial_trace(const DensityMatrix<Real>& rho,
                                  const std::vector<int>& dims,
                                  const std::vector<int>& keep) {
  return validate_density<Real>(partial_trace<Real>(rho.matrix(), dims, keep));
}

// Pure state on one, two or three qubits; amplitudes are unit-norm within
// 1e-12.
template <typename Real>
class PureState {
 public:
  explicit PureState(ComplexVector<Real> amplitudes)
      : amp_(std::move(amplitudes)) {
    const Eigen::Index n = amp_.size();
    if (n != 2 && n != 4 && n != 8) {
      throw ShapeError("pure state dimension must be in {2,4,8}");
    }
    if (std::abs(amp_.squaredNorm() - Real(1)) > Real(1e-12)) {
      throw std::invalid_argument("pure state amplitudes are not normalized");
    }
  }

  const ComplexVector<Real>& amplitudes() const { return amp_; }
  Eigen::Index dim() const { return amp_.size(); }

 private:
  ComplexVector<Real> amp_;
};

// Spherical coordinates of a qubit state: theta in [0, pi], phi in [0, 2*pi).
template <typename Real>
struct BlochAngles {
  Real theta{};
  Real phi{};

  BlochAngles(Real theta_, Real phi_) : theta(theta_), phi(phi_) {
    const Real pi = std::acos(Real(-1));
    if (theta < Real(0) || theta > pi) {
      throw std::out_of_range("bloch theta outside [0, pi]");
    }
    if (phi < Real(0) || phi >= 2 * pi) {
      throw std::out_of_range("bloch phi outside [0, 2*pi)");
    }
  }
};

/// (cos(theta/2), e^{i phi} sin(theta/2)).
template <typename Real>
PureState<Real> bloch_to_state(const BlochAngles<Real>& angles) {
  ComplexVector<Real> amp(2);
  amp(0) = std::cos(angles.theta / 2);
  amp(1) = std::polar(std::sin(angles.theta / 2), angles.phi);
  return PureState<Real>(std::move(amp));
}

/// Rank-one projector |psi><psi|.
template <typename Real>
DensityMatrix<Real> state_to_density(const PureState<Real>& psi) {
  return validate_density<Real>(
      (psi.amplitudes() * psi.amplitudes().adjoint()).eval());
}

/// Overlap <psi|rho|psi>. Real by construction; the imaginary residue must
/// stay below 1e-12 and the result is clamped to [0, 1] only after checking
/// it lies in [-1e-12, 1+1e-12].
template <typename Real>
Real fidelity_pure(const PureState<Real>& psi, const DensityMatrix<Real>& rho) {
  if (psi.dim() != rho.dim()) {
    throw ShapeError("fidelity_pure: dimension mismatch");
  }
  const std::complex<Real> f =
      (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes()).value();
  if (std::abs(f.imag()) >= Real(1e-12)) {
    throw std::runtime_error("fidelity_pure: non-negligible imaginary part");
  }
  const Real value = f.real();
  if (value < Real(-1e-12) || value > Real(1) + Real(1e-12)) {
    throw std::runtime_error("fidelity_pure: value outside [0, 1]");
  }
  return std::clamp(value, Real(0), Real(1));
}

}  // namespace qss
