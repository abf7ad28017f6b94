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

// Mode-truncated prequantum classical field model. A classical random field
// is a random vector phi in C^d; its covariance operator B, normalized by its
// trace, plays the role of a density operator, and quantum averages Tr(rho A)
// appear as averages of quadratic forms <phi|A|phi> up to the field energy
// Tr B = E ||phi||^2.
#pragma once

#include <cstdint>
#include <vector>

#include "chsh/operator.hpp"
#include "chsh/serialize.hpp"

namespace chsh {

// Positive semidefinite Hermitian operator (min eigenvalue >= -1e-10). Zero
// trace is allowed here (a field that is identically zero);
// density_from_covariance rejects it.
class CovarianceOperator {
 public:
  explicit CovarianceOperator(HermitianOperator b);

  const HermitianOperator& op() const { return b_; }
  const Matrix& matrix() const { return b_.matrix(); }
  std::size_t size() const { return b_.size(); }
  double trace() const { return b_.trace(); }

 private:
  HermitianOperator b_;
};

// rho = B / Tr B.
DensityOperator density_from_covariance(const CovarianceOperator& b);

struct FieldEnsemble {
  CovarianceOperator model;
  std::uint64_t seed = 0;
  std::vector<Vector> samples;

  std::size_t size() const { return samples.size(); }
  // (1/n) sum phi phi^dagger.
  Matrix empirical_covariance() const;
  // Per-sample ||phi||^2.
  std::vector<double> energies() const;
};

// n circularly-symmetric complex Gaussian fields with E[phi phi^dagger] = B,
// phi_k = U Lambda^{1/2} xi with B = U Lambda U^dagger. Draw k depends only
// on (seed, k).
FieldEnsemble sample_field(const CovarianceOperator& b, std::uint64_t seed, std::size_t n,
                           unsigned workers = 1);

struct QuadraticFormAverage {
  double empirical = 0.0;    // mean of <phi|A|phi>
  double theoretical = 0.0;  // Tr(B A)
  double stderr_ = 0.0;
  double z = 0.0;            // 0 when stderr vanishes
};
QuadraticFormAverage quadratic_form_average(const FieldEnsemble& e, const HermitianOperator& a);

// Mean of ||phi||^2 against Tr B.
QuadraticFormAverage energy_average(const FieldEnsemble& e);

inline constexpr std::size_t kUnderSampled = 1000;

struct EquivalenceCheck {
  bool passed = false;
  bool under_sampled = false;  // n < kUnderSampled
  double empirical = 0.0;
  double predicted = 0.0;      // Tr B * Tr(rho A)
  double z = 0.0;
};
// Empirical quadratic-form average against the quantum average rescaled by
// the field energy, within 5 standard errors.
EquivalenceCheck average_equivalence_check(const CovarianceOperator& b, const HermitianOperator& a,
                                           const FieldEnsemble& e);

// Summary for reports; raw samples are not included.
Json ensemble_summary(const FieldEnsemble& e);
// One row per sample: index, then re/im of each mode.
std::string samples_csv(const FieldEnsemble& e);

}  // namespace chsh
