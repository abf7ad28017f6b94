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

// Monte Carlo Bell tests: Born-rule sampling of joint distributions and the
// standard four-setting CHSH experiment with independent ensembles per
// setting. Draw k of stream s is a pure function of (seed, s, k), so results
// do not depend on how rounds are split across workers.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chsh/measurement.hpp"
#include "chsh/operator.hpp"
#include "chsh/scenario.hpp"
#include "chsh/serialize.hpp"

namespace chsh {

struct Tally {
  std::vector<std::uint64_t> counts;  // indexed like JointDistribution::table()
  std::uint64_t total() const;
};

// n draws by inverse CDF over the table in its canonical order.
Tally sample_joint(const JointDistribution& jd, std::uint64_t seed, std::uint64_t n,
                   std::uint64_t stream = 0, unsigned workers = 1);

struct ExperimentConfig {
  std::uint64_t rounds_per_setting = 0;
  std::uint64_t seed = 0;
  double violation_z_threshold = 5.0;
  unsigned workers = 1;
};

struct SettingResult {
  std::size_t a_index = 0;  // 0-based: A1 -> 0
  std::size_t b_index = 0;
  std::uint64_t rounds = 0;
  // Outcome counts (+,+), (+,-), (-,+), (-,-).
  std::array<std::uint64_t, 4> counts{};
  double correlation = 0.0;
  double stderr_ = 0.0;
  double quantum_correlation = 0.0;
};

struct ExperimentRun {
  std::uint64_t seed = 0;
  std::uint64_t rounds_per_setting = 0;
  double violation_z_threshold = 5.0;
  Json scenario;  // echo
  Json state;     // echo: {"pure": {...}} or {"density": {...}}
  std::vector<SettingResult> settings;
  double chsh_estimate = 0.0;
  double chsh_stderr = 0.0;
  // (|estimate| - 1) / stderr; empty when the stderr is zero.
  std::optional<double> violation_z;
  double quantum_value = 0.0;     // <psi|B|psi>
  double consistency_z = 0.0;     // (estimate - quantum_value) / stderr, 0 if stderr is 0
  bool consistent = true;         // |consistency_z| <= 5
  bool violation_observed = false;

  Json to_json() const;
  // Header plus one row per setting.
  std::string to_csv() const;
};

ExperimentRun run_chsh_experiment(const BellScenario& s, const PureState& psi,
                                  const ExperimentConfig& config);
ExperimentRun run_chsh_experiment(const BellScenario& s, const DensityOperator& rho,
                                  const ExperimentConfig& config);

}  // namespace chsh
