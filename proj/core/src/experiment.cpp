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

#include "chsh/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>
#include <utility>

#include "chsh/engine.hpp"
#include "chsh/error.hpp"
#include "chsh/rng.hpp"

namespace chsh {
namespace {

void sample_range(const std::vector<double>& cdf, const CounterRng& rng, std::uint64_t begin,
                  std::uint64_t end, std::vector<std::uint64_t>& counts) {
  // The last entry with positive mass absorbs u >= total rounding.
  std::size_t last = 0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    if (cdf[k] > (k ? cdf[k - 1] : 0.0)) last = k;
  }
  for (std::uint64_t r = begin; r < end; ++r) {
    const double u = rng.uniform_at(r) * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t k = it == cdf.end() ? last : static_cast<std::size_t>(it - cdf.begin());
    ++counts[k];
  }
}

ExperimentRun run_impl(const BellScenario& s, const DensityOperator& rho,
                       const ExperimentConfig& config, Json state_echo, double quantum_value) {
  if (config.rounds_per_setting == 0) {
    throw PreconditionError("run_chsh_experiment: rounds_per_setting must be positive");
  }
  if (rho.size() != s.dim()) throw DimensionError("run_chsh_experiment: dimension mismatch");
  ExperimentRun run;
  run.seed = config.seed;
  run.rounds_per_setting = config.rounds_per_setting;
  run.violation_z_threshold = config.violation_z_threshold;
  run.scenario = s.to_json();
  run.state = std::move(state_echo);
  run.quantum_value = quantum_value;

  std::array<ProjectorFamily, 2> fa{projectors(s.a(0).op()), projectors(s.a(1).op())};
  std::array<ProjectorFamily, 2> fb{projectors(s.b(0).op()), projectors(s.b(1).op())};

  const double n = static_cast<double>(config.rounds_per_setting);
  double var_sum = 0.0;
  std::array<double, 4> c{};
  for (std::size_t setting = 0; setting < 4; ++setting) {
    const std::size_t i = setting / 2;
    const std::size_t j = setting % 2;
    const JointDistribution jd = joint_distribution({fa[i], fb[j]}, rho);
    const Tally t = sample_joint(jd, config.seed, config.rounds_per_setting, setting, config.workers);

    SettingResult r;
    r.a_index = i;
    r.b_index = j;
    r.rounds = config.rounds_per_setting;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t flat = 0; flat < jd.size(); ++flat) {
      const auto v = jd.outcome_values(flat);
      const double prod = v[0] * v[1];
      const auto cnt = static_cast<double>(t.counts[flat]);
      sum += cnt * prod;
      sum_sq += cnt * prod * prod;
      const std::size_t slot = (v[0] > 0.0 ? 0 : 2) + (v[1] > 0.0 ? 0 : 1);
      r.counts[slot] += t.counts[flat];
    }
    r.correlation = sum / n;
    double var = std::max(0.0, sum_sq / n - r.correlation * r.correlation);
    if (config.rounds_per_setting > 1) var *= n / (n - 1.0);
    r.stderr_ = std::sqrt(var / n);
    r.quantum_correlation =
        (rho.matrix() * s.a(i).matrix() * s.b(j).matrix()).trace().real();
    c[setting] = r.correlation;
    var_sum += r.stderr_ * r.stderr_;
    run.settings.push_back(r);
  }
  run.chsh_estimate = 0.5 * (c[0] + c[1] + c[2] - c[3]);
  run.chsh_stderr = 0.5 * std::sqrt(var_sum);
  if (run.chsh_stderr > 0.0) {
    run.violation_z = (std::abs(run.chsh_estimate) - 1.0) / run.chsh_stderr;
    run.consistency_z = (run.chsh_estimate - run.quantum_value) / run.chsh_stderr;
    run.consistent = std::abs(run.consistency_z) <= 5.0;
  } else {
    run.consistent = std::abs(run.chsh_estimate - run.quantum_value) <= 1e-9;
  }
  run.violation_observed = run.violation_z && *run.violation_z >= config.violation_z_threshold;
  return run;
}

}  // namespace

std::uint64_t Tally::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

Tally sample_joint(const JointDistribution& jd, std::uint64_t seed, std::uint64_t n,
                   std::uint64_t stream, unsigned workers) {
  std::vector<double> cdf(jd.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < jd.size(); ++k) {
    acc += jd.table()[k];
    cdf[k] = acc;
  }
  const CounterRng rng(seed, stream);
  Tally out{std::vector<std::uint64_t>(jd.size(), 0)};
  workers = std::max(1u, workers);
  if (workers == 1 || n < 4096) {
    sample_range(cdf, rng, 0, n, out.counts);
    return out;
  }
  std::vector<std::vector<std::uint64_t>> partial(workers,
                                                  std::vector<std::uint64_t>(jd.size(), 0));
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(n, w * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(n, begin + chunk);
    pool.emplace_back([&, begin, end, w] { sample_range(cdf, rng, begin, end, partial[w]); });
  }
  for (auto& t : pool) t.join();
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < p.size(); ++k) out.counts[k] += p[k];
  }
  return out;
}

ExperimentRun run_chsh_experiment(const BellScenario& s, const PureState& psi,
                                  const ExperimentConfig& config) {
  return run_impl(s, DensityOperator::pure(psi), config, Json{{"pure", to_json(psi)}},
                  chsh_correlation(s, psi));
}

ExperimentRun run_chsh_experiment(const BellScenario& s, const DensityOperator& rho,
                                  const ExperimentConfig& config) {
  return run_impl(s, rho, config, Json{{"density", to_json(rho.op())}},
                  chsh_correlation(s, rho));
}

Json ExperimentRun::to_json() const {
  Json settings_json = Json::array();
  for (const auto& r : settings) {
    settings_json.push_back(Json{{"a", r.a_index + 1},
                                 {"b", r.b_index + 1},
                                 {"rounds", r.rounds},
                                 {"counts", {{"++", r.counts[0]},
                                             {"+-", r.counts[1]},
                                             {"-+", r.counts[2]},
                                             {"--", r.counts[3]}}},
                                 {"correlation", r.correlation},
                                 {"stderr", r.stderr_},
                                 {"quantum_correlation", r.quantum_correlation}});
  }
  return Json{{"config", {{"seed", seed},
                          {"rounds_per_setting", rounds_per_setting},
                          {"violation_z_threshold", violation_z_threshold},
                          {"scenario", scenario},
                          {"state", state}}},
              {"settings", std::move(settings_json)},
              {"chsh_estimate", chsh_estimate},
              {"chsh_stderr", chsh_stderr},
              {"S_estimate", 2.0 * chsh_estimate},
              {"violation_z", violation_z ? Json(*violation_z) : Json(nullptr)},
              {"violation_observed", violation_observed},
              {"quantum_value", quantum_value},
              {"consistency_z", consistency_z},
              {"consistent", consistent}};
}

std::string ExperimentRun::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "a,b,rounds,n_pp,n_pm,n_mp,n_mm,correlation,stderr,quantum_correlation\n";
  for (const auto& r : settings) {
    os << r.a_index + 1 << ',' << r.b_index + 1 << ',' << r.rounds << ',' << r.counts[0] << ','
       << r.counts[1] << ',' << r.counts[2] << ',' << r.counts[3] << ',' << r.correlation << ','
       << r.stderr_ << ',' << r.quantum_correlation << '\n';
  }
  return os.str();
}

}  // namespace chsh
