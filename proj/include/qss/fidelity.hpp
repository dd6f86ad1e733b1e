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
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qss/channels.hpp"
#include "qss/linalg.hpp"
#include "qss/teleport.hpp"

// Conditional and Bloch-sphere-averaged fidelity of the teleported qubit:
// closed forms in the flip probabilities plus a generic quadrature engine
// that averages the conditional fidelity over uniformly distributed message
// states. The average fixes Alice's outcome to (0,0); any other outcome
// yields the same average for pairs produced by the flip channels, which is
// asserted by tests rather than assumed.

namespace qss {

// Bloch-sphere integration rule. Deterministic mode crosses Gauss-Legendre
// nodes in cos(theta) with a uniform periodic trapezoid in phi; Monte Carlo
// mode samples the sphere uniformly with the given seed.
struct QuadratureSpec {
  enum class Mode { Deterministic, MonteCarlo };

  Mode mode = Mode::Deterministic;
  int theta_nodes = 64;
  int phi_nodes = 64;
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;

  static QuadratureSpec deterministic(int theta_nodes, int phi_nodes) {
    QuadratureSpec spec;
    spec.mode = Mode::Deterministic;
    spec.theta_nodes = theta_nodes;
    spec.phi_nodes = phi_nodes;
    return spec;
  }

  static QuadratureSpec monte_carlo(std::int64_t samples, std::uint64_t seed) {
    QuadratureSpec spec;
    spec.mode = Mode::MonteCarlo;
    spec.samples = samples;
    spec.seed = seed;
    return spec;
  }
};

inline void validate(const QuadratureSpec& spec) {
  if (spec.mode == QuadratureSpec::Mode::Deterministic) {
    if (spec.theta_nodes < 8 || spec.phi_nodes < 8) {
      throw std::invalid_argument("quadrature: deterministic node counts must be >= 8");
    }
  } else {
    if (spec.samples < 1000) {
      throw std::invalid_argument("quadrature: Monte Carlo needs >= 1000 samples");
    }
  }
}

/// Gauss-Legendre nodes and weights on [-1, 1] via the Golub-Welsch
/// eigenvalue method; exact for polynomials up to degree 2n-1.
template <typename Real>
std::pair<std::vector<Real>, std::vector<Real>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  RealMatrix jacobi = RealMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const Real b = Real(k) / std::sqrt(Real(4) * k * k - Real(1));
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(jacobi);
  std::vector<Real> nodes(n), weights(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = es.eigenvalues()(i);
    const Real first = es.eigenvectors()(0, i);
    weights[i] = Real(2) * first * first;
  }
  return {std::move(nodes), std::move(weights)};
}

// Switched-distribution average fidelities: the minus branch is noiseless,
// the plus branch is undefined only when it has zero weight (p = q = 1).
template <typename Real>
struct SwitchFidelity {
  Real f_minus{};
  std::optional<Real> f_plus;
  Real combined{};
};

/// Average teleportation fidelity over the switched distribution:
/// f_minus = 1, f_plus = (3-2p-2q+pq)/(3(1-pq)), and the probability-weighted
/// combination (3-2p-2q+4pq)/3.
template <typename Real>
SwitchFidelity<Real> f_qs_closed(const FlipParams<Real>& params) {
  const Real p = params.p;
  const Real q = params.q;
  const Real pq = p * q;
  SwitchFidelity<Real> out;
  out.f_minus = Real(1);
  out.combined = (Real(3) - 2 * p - 2 * q + 4 * pq) / Real(3);
  if (Real(1) - pq > Real(0)) {
    out.f_plus = (Real(3) - 2 * p - 2 * q + pq) / (Real(3) * (Real(1) - pq));
  }
  return out;
}

/// Average teleportation fidelity over the definite-order distribution:
/// (3-2p-2q+2pq)/3.
template <typename Real>
Real f_ct_closed(const FlipParams<Real>& params) {
  const Real p = params.p;
  const Real q = params.q;
  return (Real(3) - 2 * p - 2 * q + 2 * p * q) / Real(3);
}

/// Ratio of the switched average fidelity to the definite-order one; the
/// denominator never drops below 1/3.
template <typename Real>
Real gain_ratio(const FlipParams<Real>& params) {
  return f_qs_closed(params).combined / f_ct_closed(params);
}

/// Maximum average fidelity achievable with purely classical distribution.
template <typename Real = double>
constexpr Real classical_threshold() {
  return Real(2) / Real(3);
}

namespace detail {

// Fixed-size copies of the pair blocks and the outcome correction, hoisted
// out of the quadrature loops.
template <typename Real>
struct FidelityKernel {
  using M2 = Eigen::Matrix<std::complex<Real>, 2, 2>;

  M2 b11, b12, b21, b22;
  M2 correction;
  int outcome_index;

  FidelityKernel(const EprBlocks<Real>& blocks, const AliceOutcome& outcome)
      : b11(blocks.b11),
        b12(blocks.b12),
        b21(blocks.b21),
        b22(blocks.b22),
        correction(teleport_correction<Real>(outcome)),
        outcome_index(outcome.index()) {}

  // <psi|rho_t|psi> for amplitudes (a, b), with rho_t the closed-form
  // outcome state. Skips re-validation.
  Real operator()(const std::complex<Real>& a, const std::complex<Real>& b) const {
    const std::complex<Real> m11 = a * std::conj(a);
    const std::complex<Real> m12 = a * std::conj(b);
    const std::complex<Real> m21 = std::conj(m12);
    const std::complex<Real> m22 = b * std::conj(b);
    M2 rho_t = teleport_block_combo<Real, M2>(m11, m12, m21, m22, b11, b12, b21,
                                              b22, outcome_index);
    if (outcome_index != 0) {
      rho_t = (correction * rho_t * correction.adjoint()).eval();
    }
    const std::complex<Real> f =
        std::conj(a) * (rho_t(0, 0) * a + rho_t(0, 1) * b) +
        std::conj(b) * (rho_t(1, 0) * a + rho_t(1, 1) * b);
    return f.real();
  }
};

// Amplitudes of the message state from u = cos(theta) and phi.
template <typename Real>
std::pair<std::complex<Real>, std::complex<Real>> sphere_amplitudes(Real u, Real phi) {
  const Real half_cos = std::sqrt((Real(1) + u) / Real(2));
  const Real half_sin = std::sqrt((Real(1) - u) / Real(2));
  return {std::complex<Real>(half_cos, Real(0)), std::polar(half_sin, phi)};
}

}  // namespace detail

/// Fidelity of the teleported state against the message |psi(theta, phi)>,
/// conditioned on one measurement outcome.
template <typename Real>
Real conditional_fidelity(const DensityMatrix<Real>& pair,
                          const BlochAngles<Real>& angles,
                          const AliceOutcome& outcome) {
  const PureState<Real> psi = bloch_to_state(angles);
  const DensityMatrix<Real> message = state_to_density(psi);
  const DensityMatrix<Real> rho_t =
      teleport_closed_form(message, split_blocks(pair), outcome);
  return fidelity_pure(psi, rho_t);
}

/// Average of the conditional fidelity over the uniform Bloch-sphere
/// measure (1/4pi) sin(theta) dtheta dphi. Feed it any distributed pair
/// state (plus branch, corrected minus branch, definite-order output).
template <typename Real>
Real avg_fidelity_numeric(const DensityMatrix<Real>& pair,
                          const QuadratureSpec& spec,
                          const AliceOutcome& outcome = AliceOutcome()) {
  validate(spec);
  const detail::FidelityKernel<Real> kernel(split_blocks(pair), outcome);
  const Real two_pi = 2 * std::acos(Real(-1));

  if (spec.mode == QuadratureSpec::Mode::Deterministic) {
    const auto [nodes, weights] = gauss_legendre<Real>(spec.theta_nodes);
    Real sum = 0;
    for (int i = 0; i < spec.theta_nodes; ++i) {
      Real phi_sum = 0;
      for (int j = 0; j < spec.phi_nodes; ++j) {
        const Real phi = two_pi * j / spec.phi_nodes;
        const auto [a, b] = detail::sphere_amplitudes(nodes[i], phi);
        phi_sum += kernel(a, b);
      }
      sum += weights[i] * phi_sum;
    }
    // 1/(4pi) measure: Gauss-Legendre weights sum to 2, phi averages over 2pi.
    return sum / (Real(2) * spec.phi_nodes);
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<Real> cos_theta(Real(-1), Real(1));
  std::uniform_real_distribution<Real> azimuth(Real(0), two_pi);
  Real sum = 0;
  for (std::int64_t s = 0; s < spec.samples; ++s) {
    const Real u = cos_theta(rng);
    const Real phi = azimuth(rng);
    const auto [a, b] = detail::sphere_amplitudes(u, phi);
    sum += kernel(a, b);
  }
  return sum / Real(spec.samples);
}

}  // namespace qss
