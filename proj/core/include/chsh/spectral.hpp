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

// Eigenvectors of a Hermitian C assembled from eigenvectors of C^2.
//
// If C^2 u = lambda u with lambda > 0 and u is not itself an eigenvector of
// C, then v = C u / sqrt(lambda) satisfies C u = sqrt(lambda) v and
// C v = sqrt(lambda) u, so psi+- = u +- v are eigenvectors of C with
// eigenvalues +-sqrt(lambda). Starting from a top eigenvector of C^2 this
// yields a state maximizing the quadratic form of C; for the Bell operator
// the top eigenvectors of B^2 can be chosen separable while those of B are
// entangled.
#pragma once

#include <vector>

#include "chsh/operator.hpp"

namespace chsh {

struct CEntanglePair {
  PureState u;
  PureState v;          // C u / sqrt(lambda)
  double lambda = 0.0;  // C^2 eigenvalue of u
  PureState psi_plus;   // C psi_plus = +sqrt(lambda) psi_plus
  PureState psi_minus;  // C psi_minus = -sqrt(lambda) psi_minus
};

// Preconditions: u is an eigenvector of C^2 with eigenvalue > 1e-10 and is
// not an eigenvector of C (residual ||C u - <u|C|u> u|| > 1e-8).
CEntanglePair c_entangle(const HermitianOperator& c, const PureState& u);

struct MaxState {
  PureState phi;
  double value = 0.0;        // |<phi|C|phi>| = sqrt(lambda_max(C^2))
  double expectation = 0.0;  // <phi|C|phi>, sign included
  int sign = +1;             // -1 when u + C u / sqrt(lambda) degenerated
};

// phi = normalize(u + C u / sqrt(lambda)) for the top eigenvector u of C^2,
// falling back to u - C u / sqrt(lambda) when the sum vanishes.
MaxState max_state_from_square(const HermitianOperator& c);
// Same construction from a caller-supplied top eigenvector u of C^2.
MaxState max_state_from_square(const HermitianOperator& c, const PureState& u);

struct SquareVsLinear {
  PureState psi_sq;   // maximizes <psi|C^2|psi>
  PureState phi_lin;  // maximizes |<psi|C|psi>|
  bool same = false;  // |<psi_sq|phi_lin>| > 1 - 1e-9
  // phi_lin in the canonical basis of the top eigenspace of C^2; the first
  // basis vector is psi_sq.
  std::vector<Complex> decomposition;
  std::size_t top_multiplicity = 0;
};
SquareVsLinear square_vs_linear_max_states(const HermitianOperator& c);

}  // namespace chsh
