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

// Projective measurements of commuting observables: spectral projector
// families, joint distributions Tr[rho E1(x1) ... Em(xm)], the pairwise to
// multiple compatibility check, and general Bell-type functionals.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chsh/operator.hpp"
#include "chsh/serialize.hpp"

namespace chsh {

inline constexpr double kDefaultValueTol = 1e-8;

struct Outcome {
  double value;
  HermitianOperator projector;
};

// Spectral resolution of an observable: mutually orthogonal projectors
// summing to I, one per distinct eigenvalue, in ascending value order.
class ProjectorFamily {
 public:
  // sum of value * E must reproduce the observable within
  // reconstruction_tol * (1 + ||X||).
  ProjectorFamily(HermitianOperator observable, std::vector<Outcome> outcomes,
                  double reconstruction_tol = 1e-9);

  const HermitianOperator& observable() const { return observable_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }
  std::size_t dim() const { return observable_.size(); }
  // Index of the outcome whose value is within `tol` of `value`, if any.
  std::optional<std::size_t> find(double value, double tol = 1e-6) const;

 private:
  HermitianOperator observable_;
  std::vector<Outcome> outcomes_;
};

// Eigenvalues closer than `value_tolerance` share a projector; gaps above
// 2*value_tolerance separate outcomes; anything in between is ambiguous and
// raises PreconditionError.
ProjectorFamily projectors(const HermitianOperator& x, double value_tolerance = kDefaultValueTol);

// Largest ||[X_i, X_j]|| over all pairs.
double max_pairwise_commutator(const std::vector<ProjectorFamily>& families);

class JointDistribution {
 public:
  JointDistribution(std::vector<ProjectorFamily> families, std::vector<double> table,
                    double min_raw);

  const std::vector<ProjectorFamily>& families() const { return families_; }
  // Mixed-radix layout, first family most significant.
  const std::vector<double>& table() const { return table_; }
  std::size_t size() const { return table_.size(); }
  std::size_t flat_index(const std::vector<std::size_t>& outcome_indices) const;
  std::vector<std::size_t> outcome_indices(std::size_t flat) const;
  std::vector<double> outcome_values(std::size_t flat) const;
  double probability(const std::vector<std::size_t>& outcome_indices) const;
  // Smallest entry before negative rounding residue was clamped to zero.
  double min_raw() const { return min_raw_; }
  // Marginal over families (i, j), indexed [outcome_i * size_j + outcome_j].
  std::vector<double> marginal(std::size_t i, std::size_t j) const;
  std::vector<double> marginal(std::size_t i) const;

  Json to_json() const;

 private:
  std::vector<ProjectorFamily> families_;
  std::vector<double> table_;
  std::vector<std::size_t> radices_;
  double min_raw_;
};

// Raw trace table Tr[rho E_{order[0]} ... E_{order[m-1]}] rearranged into the
// canonical layout of `families`. No commutativity check, no clamping; used
// to test that the product order does not matter.
std::vector<double> ordered_trace_table(const std::vector<ProjectorFamily>& families,
                                        const std::vector<std::size_t>& order,
                                        const DensityOperator& rho);

// PreconditionError if any pair fails to commute within 1e-9: the joint
// distribution of incompatible observables is undefined.
JointDistribution joint_distribution(std::vector<ProjectorFamily> families,
                                     const DensityOperator& rho);

struct MultipleCompatibility {
  bool ok = true;
  double max_permutation_deviation = 0.0;
  double max_marginal_deviation = 0.0;
  double min_entry = 0.0;
  std::string diagnostic;  // empty when ok
};
// Checks that the m-fold table is invariant under every reordering of the
// projector product (m <= 8), nonnegative, and that bivariate marginals
// agree with the pairwise formula.
MultipleCompatibility pairwise_implies_multiple_check(const std::vector<ProjectorFamily>& families,
                                                      const DensityOperator& rho);

// sum over terms of coefficient * <prod of one observable from each listed
// group>. Terms may skip groups (lower-order correlations) or be constant.
struct FunctionalTerm {
  double coefficient = 0.0;
  // choice[k] = index of the observable taken from group k, or nullopt.
  std::vector<std::optional<std::size_t>> choice;
};

struct BellFunctional {
  std::vector<std::size_t> group_sizes;
  std::vector<FunctionalTerm> terms;

  void validate() const;
  Json to_json() const;
  static BellFunctional from_json(const Json& j);

  // 1/2 [<A1B1> + <A1B2> + <A2B1> - <A2B2>] over groups {A1, A2}, {B1, B2}.
  static BellFunctional chsh();
  // <XXX> - <XYY> - <YXY> - <YYX> over three groups {X, Y}.
  static BellFunctional mermin3();
};

inline constexpr std::size_t kMaxAssignments = std::size_t{1} << 20;

// max of the functional over deterministic assignments of eigenvalues to
// observables; PreconditionError above kMaxAssignments assignments.
double classical_bound(const BellFunctional& f,
                       const std::vector<std::vector<ProjectorFamily>>& groups);

struct FunctionalValue {
  double value = 0.0;
  double classical_bound = 0.0;
  bool violated = false;
};
FunctionalValue evaluate_bell_functional(const BellFunctional& f,
                                         const std::vector<std::vector<ProjectorFamily>>& groups,
                                         const DensityOperator& rho);

}  // namespace chsh
