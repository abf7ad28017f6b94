// Copyright 2026 The chshlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CHSH analysis of a Bell scenario.
//
// The Bell operator is taken with the 1/2 prefactor,
//   B = 1/2 [A1 (B1 + B2) + A2 (B1 - B2)],
// so the classical bound is 1 and the qubit maximum is sqrt(2). Its square
// obeys the Landau identity
//   B^2 = I - 1/4 [A1, A2][B1, B2] = I + 1/4 M_A M_B,
// with M_A = i[A1, A2], M_B = i[B1, B2]. Because M_A and M_B commute, the
// top of the spectrum of B^2 is 1 + mu/4 where mu is the largest product of
// paired common eigenvalues; interchanging B1 and B2 flips the sign of M_B,
// which is why every bound below maximizes over both B orderings.
#pragma once

#include <optional>

#include "chsh/operator.hpp"
#include "chsh/scenario.hpp"
#include "chsh/serialize.hpp"

namespace chsh {

// A commutator counts as nonzero above this spectral norm.
inline constexpr double kIncompatibilityTol = 1e-9;

HermitianOperator bell_operator(const BellScenario& s);

// 1/2 [<A1B1> + <A1B2> + <A2B1> - <A2B2>], from the four correlations.
double chsh_correlation(const BellScenario& s, const PureState& psi);
double chsh_correlation(const BellScenario& s, const DensityOperator& rho);

// I - 1/4 [A1, A2][B1, B2].
HermitianOperator landau_square(const BellScenario& s);

// || B*B - landau_square(s) ||.
double landau_residual(const BellScenario& s);

struct IncompatibilityReport {
  HermitianOperator m_a;   // i[A1, A2]
  HermitianOperator m_b;   // i[B1, B2]
  HermitianOperator m_ab;  // M_A M_B
  double norm_ma = 0.0;
  double norm_mb = 0.0;
  double commutator_residual = 0.0;  // ||[M_A, M_B]||
  double mu_a = 0.0;                 // paired common eigenvalues achieving mu
  double mu_b = 0.0;                 // (mu_b as seen in the selected ordering)
  double mu = 0.0;                   // mu_a * mu_b >= 0
  BOrdering ordering = BOrdering::kOriginal;
  double b_predicted = 1.0;          // sqrt(1 + mu/4)
  // sqrt(1 + ||M_A|| ||M_B|| / 4); equals b_predicted for tensor scenarios.
  double b_norm_product = 1.0;
  double b_eigen = 1.0;              // max over orderings of ||B||
  bool m_ab_zero = false;            // both commutators nonzero, product zero
  bool violation_possible = false;   // mu > 0 (up to tolerance)

  double chsh_s() const { return 2.0 * b_predicted; }
  Json to_json() const;
};

IncompatibilityReport incompatibility_report(const BellScenario& s);

// Orthonormal basis diagonalizing both commuting operators. Tries the
// eigenbasis of X + gamma Y with a golden-ratio gamma and falls back to
// diagonalizing Y inside each eigenspace of X.
struct CommonEigenbasis {
  Matrix basis;                  // columns
  std::vector<double> x_values;  // <e_k|X|e_k>
  std::vector<double> y_values;  // <e_k|Y|e_k>
  bool used_fallback = false;
};
CommonEigenbasis common_eigenbasis(const HermitianOperator& x, const HermitianOperator& y);

// max over B orderings of spectral_norm(bell_operator).
struct BellNorm {
  double value = 0.0;
  BOrdering ordering = BOrdering::kOriginal;
};
BellNorm max_bell_norm(const BellScenario& s);

// sqrt(1 + 1/4 ||[a1, a2]|| ||[b1, b2]||); tensor structure only.
double quantum_bound(const BellScenario& s);

struct ExtractedIncompatibility {
  double value = 0.0;          // 4 (b^2 - 1) / ||M_B||
  bool clamped = false;        // b_observed < 1 was raised to 1
};
// ||[A1, A2]|| from an observed CHSH value and the auxiliary ||[B1, B2]||.
ExtractedIncompatibility extract_incompatibility(double b_observed, double norm_mb);

struct Theorem1Result {
  bool locally_incompatible = false;
  bool violation_exists = false;
  bool agree = false;
  double norm_ma = 0.0;
  double norm_mb = 0.0;
  double bell_norm = 0.0;
  BOrdering ordering = BOrdering::kOriginal;
  std::optional<PureState> witness;  // |<B>| > 1 in `ordering`
  double witness_value = 0.0;
};
Theorem1Result theorem1_check(const BellScenario& s);

struct SeparableWitness {
  PureState psi_sep;  // psi_a (x) psi_b
  PureState psi_a;
  PureState psi_b;
  double mu_a = 0.0;
  double mu_b = 0.0;  // in the selected ordering
  BOrdering ordering = BOrdering::kOriginal;
  double value = 0.0;  // <psi_sep| B^2 |psi_sep> = 1 + mu_a mu_b / 4
};
// Product of top local commutator eigenvectors; PreconditionError when no
// positive product is available in either ordering.
SeparableWitness separable_square_witness(const BellScenario& s);

}  // namespace chsh
