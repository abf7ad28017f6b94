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

// Bell scenarios: four dichotomic observables A1, A2, B1, B2 on one Hilbert
// space with every A commuting with every B. A scenario is either "general"
// (only the global operators are known) or "tensor", where
// Ai = a_i (x) I and Bj = I (x) b_j for local operators a_i, b_j.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "chsh/operator.hpp"
#include "chsh/rng.hpp"
#include "chsh/serialize.hpp"

namespace chsh {

inline constexpr double kDichotomicTol = 1e-9;
inline constexpr double kCompatibilityTol = 1e-9;

// Observable with spectrum in {-1, +1}: ||X^2 - I|| <= 1e-9.
class DichotomicObservable {
 public:
  explicit DichotomicObservable(HermitianOperator op);

  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  std::size_t size() const { return op_.size(); }

 private:
  HermitianOperator op_;
};

enum class Structure { kGeneral, kTensor };

// Which ordering of the B pair a bound or witness refers to.
enum class BOrdering { kOriginal, kSwapped };

std::string to_string(BOrdering o);

struct LocalObservables {
  DichotomicObservable a1, a2;  // on H_A
  DichotomicObservable b1, b2;  // on H_B
};

class BellScenario {
 public:
  // Validates cross-commutativity ||[Ai, Bj]|| <= 1e-9.
  static BellScenario general(DichotomicObservable a1, DichotomicObservable a2,
                              DichotomicObservable b1, DichotomicObservable b2);
  // Lifts local operators into H_A (x) H_B.
  static BellScenario tensor(DichotomicObservable a1, DichotomicObservable a2,
                             DichotomicObservable b1, DichotomicObservable b2);

  Structure structure() const { return local_ ? Structure::kTensor : Structure::kGeneral; }
  bool is_tensor() const { return local_.has_value(); }
  std::size_t dim() const { return a_[0].size(); }
  // Local dimensions (d_A, d_B); PreconditionError on general structure.
  std::array<std::size_t, 2> local_dims() const;

  // i, j in {0, 1}.
  const DichotomicObservable& a(std::size_t i) const { return a_.at(i); }
  const DichotomicObservable& b(std::size_t j) const { return b_.at(j); }
  const LocalObservables& local() const;

  // Same scenario with B1 and B2 interchanged (A1, A2 for swapped_a).
  BellScenario swapped_b() const;
  BellScenario swapped_a() const;
  BellScenario ordered(BOrdering o) const {
    return o == BOrdering::kOriginal ? *this : swapped_b();
  }

  // Global operators in JSON form plus, for tensor structure, the locals.
  Json to_json() const;
  static BellScenario from_json(const Json& j);

 private:
  BellScenario(std::array<DichotomicObservable, 2> a, std::array<DichotomicObservable, 2> b,
               std::optional<LocalObservables> local);

  std::array<DichotomicObservable, 2> a_;
  std::array<DichotomicObservable, 2> b_;
  std::optional<LocalObservables> local_;
};

// Tensor scenario with locally random dichotomic observables (Haar-random
// unitaries conjugating diagonal +-1 matrices).
BellScenario random_tensor_scenario(std::size_t dim_a, std::size_t dim_b, CounterRng& rng);

// General-structure scenario of total dimension <= max_dim: either one tensor
// scenario or a direct sum of two, conjugated by a global Haar unitary so no
// tensor factorization is visible in the computational basis.
BellScenario random_general_scenario(std::size_t max_dim, CounterRng& rng);

// Scenario in which one pair (A if `commuting_a`, else B) shares an
// eigenbasis and therefore commutes.
BellScenario random_commuting_pair_scenario(bool tensor, bool commuting_a, CounterRng& rng);

}  // namespace chsh
