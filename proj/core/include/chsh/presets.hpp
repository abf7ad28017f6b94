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

// Named scenarios, states and field models shipped with the library.
#pragma once

#include <string>
#include <vector>

#include "chsh/measurement.hpp"
#include "chsh/operator.hpp"
#include "chsh/pcsft.hpp"
#include "chsh/scenario.hpp"

namespace chsh {

namespace pauli {
HermitianOperator i2();
HermitianOperator x();
HermitianOperator y();
HermitianOperator z();
}  // namespace pauli

// "optimal-qubit": a = (Z, X), b = ((Z + X)/sqrt2, (Z - X)/sqrt2).
// "commuting-A":   a = (Z, Z), b as optimal-qubit.
// "commuting-B":   a as optimal-qubit, b = (Z, Z).
// "zero-product-MAB": general structure on C^2 (+) C^2 with M_A, M_B both
//   nonzero but supported on different blocks, so M_A M_B = 0.
BellScenario scenario_preset(const std::string& name);
std::vector<std::string> scenario_preset_names();

// "singlet", "phi-plus", "product-00", "ghz-3".
PureState state_preset(const std::string& name);

// Three-party Mermin setting: groups {X_k, Y_k} on qubit k, evaluated on the
// GHZ state. Observables within a group do not commute.
struct FunctionalPreset {
  BellFunctional functional;
  std::vector<std::vector<ProjectorFamily>> groups;
  PureState state;
};
FunctionalPreset functional_preset(const std::string& name);

// Field models for the average-equivalence check, each with its observables.
struct FieldPreset {
  CovarianceOperator covariance;
  std::vector<std::string> observable_names;
  std::vector<HermitianOperator> observables;
};
// "identity-2", "thermal-qubit", "random-psd-4", "singlet-field".
FieldPreset field_preset(const std::string& name);
std::vector<std::string> field_preset_names();

}  // namespace chsh
