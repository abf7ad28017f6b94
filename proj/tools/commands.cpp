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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include "chsh/engine.hpp"
#include "chsh/error.hpp"
#include "chsh/experiment.hpp"
#include "chsh/measurement.hpp"
#include "chsh/pcsft.hpp"
#include "chsh/presets.hpp"
#include "chsh/random_ops.hpp"
#include "chsh/spectral.hpp"
#include "config.hpp"

#ifndef CHSHLAB_VERSION
#define CHSHLAB_VERSION "0.0.0"
#endif

namespace chsh::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::size_t kMaxTotalDim = kMaxDim;

// Stream identifiers keep the random inputs of different scans apart.
constexpr std::uint64_t kScenarioStream = 0x5ce7;
constexpr std::uint64_t kFamilyStream = 0xfa31;
constexpr std::uint64_t kCommutingStream = 0x7e02;
constexpr std::uint64_t kOperatorStream = 0x09e7;

using State = std::variant<PureState, DensityOperator>;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string short_fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
// handled independently, so results do not depend on the schedule.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += w) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int count_sources(const ConfigReader& c, std::initializer_list<const char*> keys) {
  int n = 0;
  for (const char* k : keys) n += c.has(k) ? 1 : 0;
  return n;
}

// Scenario from "preset", inline "scenario", or "scenario_file".
BellScenario load_scenario(ConfigReader& c, const std::string& fallback) {
  if (count_sources(c, {"preset", "scenario", "scenario_file"}) > 1) {
    throw ParseError("give at most one of preset, scenario, scenario_file");
  }
  if (auto j = c.raw("scenario")) return BellScenario::from_json(*j);
  if (auto path = c.optional_string("scenario_file")) {
    return BellScenario::from_json(read_json_file(*path));
  }
  return scenario_preset(c.string("preset", fallback));
}

State state_from_value(const Json& j) {
  if (j.is_string()) return state_preset(j.get<std::string>());
  if (j.is_object() && j.contains("density")) {
    if (j.size() != 1) throw ParseError("density state: unexpected keys");
    return DensityOperator(operator_from_json(j["density"]));
  }
  if (j.is_object() && j.contains("pure")) {
    if (j.size() != 1) throw ParseError("pure state: unexpected keys");
    return state_from_json(j["pure"]);
  }
  return state_from_json(j);
}

std::optional<State> load_state(ConfigReader& c) {
  if (count_sources(c, {"state", "state_file"}) > 1) {
    throw ParseError("give at most one of state, state_file");
  }
  if (auto j = c.raw("state")) return state_from_value(*j);
  if (auto path = c.optional_string("state_file")) return state_from_value(read_json_file(*path));
  return std::nullopt;
}

std::size_t state_dim(const State& s) {
  return std::visit([](const auto& v) { return v.size(); }, s);
}

Json state_echo(const State& s) {
  if (const auto* p = std::get_if<PureState>(&s)) return Json{{"pure", to_json(*p)}};
  return Json{{"density", to_json(std::get<DensityOperator>(s).op())}};
}

DensityOperator as_density(const State& s) {
  if (const auto* p = std::get_if<PureState>(&s)) return DensityOperator::pure(*p);
  return std::get<DensityOperator>(s);
}

Json complex_list(const std::vector<Complex>& v) {
  Json re = Json::array();
  Json im = Json::array();
  for (const auto& z : v) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return Json{{"re", re}, {"im", im}};
}

// ---------------------------------------------------------------------------

CommandResult landau_check(ConfigReader& c, unsigned /*workers*/) {
  const BellScenario s = load_scenario(c, "optimal-qubit");
  const double tol = c.real("tolerance", 1e-9, 1e-16, 1e-3);
  c.u64("seed", kDefaultSeed, 0, UINT64_MAX);  // accepted for uniformity; unused

  const HermitianOperator b = bell_operator(s);
  const double bnorm = spectral_norm(b);
  const double scale = 1.0 + bnorm * bnorm;
  const double residual = landau_residual(s);
  const auto n = static_cast<Eigen::Index>(s.dim());
  const double identity_gap = spectral_norm(Matrix(b.matrix() * b.matrix() - Matrix::Identity(n, n)));

  CommandResult r;
  r.passed = residual <= tol * scale;
  r.report = Json{{"scenario", s.to_json()},
                  {"residual", residual},
                  {"scale", scale},
                  {"tolerance", tol},
                  {"bell_norm", bnorm},
                  {"b_squared_minus_identity", identity_gap},
                  {"incompatibility", incompatibility_report(s).to_json()},
                  {"passed", r.passed}};
  r.csv = "residual,scale,tolerance,bell_norm,b_squared_minus_identity,passed\n" + fmt(residual) +
          "," + fmt(scale) + "," + fmt(tol) + "," + fmt(bnorm) + "," + fmt(identity_gap) + "," +
          (r.passed ? "true" : "false") + "\n";
  r.summary.push_back("landau identity residual " + short_fmt(residual) + " (limit " +
                      short_fmt(tol * scale) + "): " + (r.passed ? "PASS" : "FAIL"));
  r.summary.push_back("||B|| = " + short_fmt(bnorm) + ", ||B^2 - I|| = " + short_fmt(identity_gap));
  return r;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> dim_choices(const Json& j) {
  std::vector<std::size_t> out;
  auto add = [&out](const Json& v) {
    if (!v.is_number_integer()) throw ParseError("dims entries must be integers");
    const auto d = v.get<std::int64_t>();
    if (d < 2 || d > static_cast<std::int64_t>(kMaxTotalDim)) throw ParseError("local dimension must lie in [2, 64]");
    out.push_back(static_cast<std::size_t>(d));
  };
  if (j.is_array()) {
    if (j.empty()) throw ParseError("dims choice list is empty");
    for (const auto& v : j) add(v);
  } else {
    add(j);
  }
  return out;
}

struct ScanRow {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  Theorem1Result t;
  double formula = 0.0;
};

CommandResult theorem1_scan(ConfigReader& c, unsigned workers) {
  const std::uint64_t n = c.u64("n_scenarios", 500, 0, 1'000'000);
  const std::uint64_t seed = c.u64("seed", kDefaultSeed, 0, UINT64_MAX);
  const double tol = c.real("bound_tolerance", 1e-9, 1e-16, 1e-3);
  if (!c.has("dims")) c.set("dims", Json::array({2, 2}));
  const Json dims = *c.raw("dims");
  if (!dims.is_array() || dims.size() != 2) throw ParseError("dims must be [d_A, d_B]");
  const auto da = dim_choices(dims[0]);
  const auto db = dim_choices(dims[1]);
  const std::size_t worst = *std::max_element(da.begin(), da.end()) *
                            *std::max_element(db.begin(), db.end());
  if (worst > kMaxTotalDim) {
    throw DimensionError("dims product " + std::to_string(worst) + " exceeds the cap of 64");
  }

  const CounterRng root(seed, kScenarioStream);
  std::vector<ScanRow> rows(n);
  parallel_for(n, workers, [&](std::size_t i) {
    CounterRng rng = root.split(i);
    ScanRow& row = rows[i];
    row.dim_a = da[uniform_index(da.size(), rng)];
    row.dim_b = db[uniform_index(db.size(), rng)];
    const BellScenario s = random_tensor_scenario(row.dim_a, row.dim_b, rng);
    row.t = theorem1_check(s);
    row.formula = std::sqrt(1.0 + 0.25 * row.t.norm_ma * row.t.norm_mb);
  });

  std::uint64_t agree = 0;
  std::uint64_t violating = 0;
  double max_residual = 0.0;
  double max_qubit_norm = 0.0;
  Json disagreements = Json::array();
  Json results = Json::array();
  std::ostringstream csv;
  csv << "index,dim_a,dim_b,locally_incompatible,violation_exists,agree,norm_ma,norm_mb,bell_norm,"
         "formula,ordering\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const auto& t = row.t;
    agree += t.agree ? 1 : 0;
    violating += t.violation_exists ? 1 : 0;
    if (!t.agree) disagreements.push_back(i);
    max_residual = std::max(max_residual, std::abs(t.bell_norm - row.formula));
    if (row.dim_a == 2 && row.dim_b == 2) max_qubit_norm = std::max(max_qubit_norm, t.bell_norm);
    results.push_back(Json{{"index", i},
                           {"dims", {row.dim_a, row.dim_b}},
                           {"locally_incompatible", t.locally_incompatible},
                           {"violation_exists", t.violation_exists},
                           {"agree", t.agree},
                           {"norm_ma", t.norm_ma},
                           {"norm_mb", t.norm_mb},
                           {"bell_norm", t.bell_norm},
                           {"formula", row.formula},
                           {"ordering", to_string(t.ordering)}});
    csv << i << ',' << row.dim_a << ',' << row.dim_b << ',' << t.locally_incompatible << ','
        << t.violation_exists << ',' << t.agree << ',' << fmt(t.norm_ma) << ',' << fmt(t.norm_mb)
        << ',' << fmt(t.bell_norm) << ',' << fmt(row.formula) << ',' << to_string(t.ordering)
        << '\n';
  }
  const bool tsirelson_ok = max_qubit_norm <= std::sqrt(2.0) + tol;

  CommandResult r;
  r.passed = agree == n && max_residual <= tol && tsirelson_ok;
  r.report = Json{{"n_scenarios", n},
                  {"agree", agree},
                  {"violating", violating},
                  {"disagreements", disagreements},
                  {"max_bound_residual", max_residual},
                  {"bound_tolerance", tol},
                  {"max_qubit_bell_norm", max_qubit_norm},
                  {"tsirelson_respected", tsirelson_ok},
                  {"results", results},
                  {"passed", r.passed}};
  r.csv = csv.str();
  r.summary.push_back("incompatibility vs violation: " + std::to_string(agree) + "/" + std::to_string(n) +
                      " scenarios agree (" + std::to_string(violating) + " violating)");
  r.summary.push_back("bound formula max residual " + short_fmt(max_residual) + " (limit " +
                      short_fmt(tol) + ")");
  r.summary.push_back(std::string("result: ") + (r.passed ? "PASS" : "FAIL"));
  return r;
}

// ---------------------------------------------------------------------------

CommandResult chsh_run(ConfigReader& c, unsigned workers) {
  BellScenario s = load_scenario(c, "optimal-qubit");
  const std::string ordering = c.string("b_ordering", "original");
  if (ordering == "swapped") {
    s = s.swapped_b();
  } else if (ordering != "original") {
    throw ParseError("b_ordering must be \"original\" or \"swapped\"");
  }
  std::optional<State> state = load_state(c);
  if (!state) {
    c.set("state", "singlet");
    state = load_state(c);
  }
  if (state_dim(*state) != s.dim()) throw DimensionError("state and scenario dimensions differ");
  ExperimentConfig cfg;
  cfg.rounds_per_setting = c.u64("rounds", 1'000'000, 1, 1'000'000'000);
  cfg.seed = c.u64("seed", kDefaultSeed, 0, UINT64_MAX);
  cfg.violation_z_threshold = c.real("z_threshold", 5.0, 0.0, 1e6);
  cfg.workers = workers;

  const ExperimentRun run = std::visit(
      [&](const auto& st) { return run_chsh_experiment(s, st, cfg); }, *state);

  CommandResult r;
  r.report = run.to_json();
  r.report.erase("config");
  r.report["scenario"] = run.scenario;
  r.report["state"] = run.state;
  if (cfg.rounds_per_setting < 1000) {
    r.warnings.push_back("under-sampled: " + std::to_string(cfg.rounds_per_setting) +
                         " rounds per setting gives wide standard errors");
  }
  r.report["under_sampled"] = cfg.rounds_per_setting < 1000;

  const double b_obs = std::abs(run.chsh_estimate);
  Json extraction = nullptr;
  if (s.is_tensor()) {
    const auto& l = s.local();
    const double norm_mb = spectral_norm(commutator_observable(l.b1.op(), l.b2.op()));
    const double norm_ma = spectral_norm(commutator_observable(l.a1.op(), l.a2.op()));
    if (norm_mb > kIncompatibilityTol) {
      const auto ex = extract_incompatibility(b_obs, norm_mb);
      // d/db [4 (b^2 - 1) / ||M_B||] = 8 b / ||M_B||.
      const double se = ex.clamped ? 0.0 : 8.0 * b_obs * run.chsh_stderr / norm_mb;
      extraction = Json{{"auxiliary_norm_mb", norm_mb},
                        {"b_observed", b_obs},
                        {"extracted_norm_ma", ex.value},
                        {"extracted_stderr", se},
                        {"clamped", ex.clamped},
                        {"true_norm_ma", norm_ma},
                        {"deviation", ex.value - norm_ma}};
      r.summary.push_back("extracted ||[A1,A2]|| = " + short_fmt(ex.value) + " +- " +
                          short_fmt(se) + " (true " + short_fmt(norm_ma) + ")" +
                          (ex.clamped ? " [clamped]" : ""));
    } else {
      r.warnings.push_back("auxiliary B-pair is compatible; no incompatibility extraction");
    }
  }
  r.report["extraction"] = extraction;
  r.report["verdict"] = run.violation_observed ? "violation" : "no-violation";
  r.passed = run.consistent;
  r.csv = run.to_csv();

  r.summary.insert(
      r.summary.begin(),
      {"<B>_exp = " + short_fmt(run.chsh_estimate) + " +- " + short_fmt(run.chsh_stderr) +
           " (QM " + short_fmt(run.quantum_value) + ", S = " + short_fmt(2.0 * run.chsh_estimate) +
           ")",
       "violation z = " +
           (run.violation_z ? short_fmt(*run.violation_z) : std::string("undefined")) +
           ", verdict: " + (run.violation_observed ? "violation" : "no-violation"),
       "agreement with QM: z = " + short_fmt(run.consistency_z) + " -> " +
           (run.consistent ? "PASS" : "FAIL")});
  return r;
}

// ---------------------------------------------------------------------------

CommandResult pcsft_check(ConfigReader& c, unsigned workers) {
  if (count_sources(c, {"preset", "covariance", "covariance_file"}) > 1) {
    throw ParseError("give at most one of preset, covariance, covariance_file");
  }
  std::optional<FieldPreset> preset;
  std::optional<CovarianceOperator> cov;
  if (auto j = c.raw("covariance")) {
    cov.emplace(operator_from_json(*j));
  } else if (auto path = c.optional_string("covariance_file")) {
    cov.emplace(operator_from_json(read_json_file(*path)));
  } else {
    preset = field_preset(c.string("preset", "identity-2"));
    cov = preset->covariance;
  }
  std::vector<std::string> names;
  std::vector<HermitianOperator> observables;
  if (auto j = c.raw("observables")) {
    if (!j->is_array()) throw ParseError("observables must be an array");
    for (const auto& item : *j) {
      if (!item.is_object() || !item.contains("name") || !item.contains("operator") ||
          item.size() != 2 || !item["name"].is_string()) {
        throw ParseError("each observable needs exactly {\"name\", \"operator\"}");
      }
      names.push_back(item["name"].get<std::string>());
      observables.push_back(operator_from_json(item["operator"]));
    }
  } else if (preset) {
    names = preset->observable_names;
    observables = preset->observables;
  } else {
    names = {"identity"};
    observables = {HermitianOperator::identity(cov->size())};
  }
  for (const auto& a : observables) {
    if (a.size() != cov->size()) throw DimensionError("observable and covariance dimensions differ");
  }
  const std::uint64_t n = c.u64("n", 100000, 1, 10'000'000);
  const std::uint64_t seed = c.u64("seed", kDefaultSeed, 0, UINT64_MAX);
  const auto raw_csv = c.optional_string("raw_samples_csv");

  const FieldEnsemble e = sample_field(*cov, seed, n, workers);
  const DensityOperator rho = density_from_covariance(*cov);

  CommandResult r;
  Json table = Json::array();
  std::ostringstream csv;
  csv << "observable,empirical,predicted,trace_ba,identity_residual,stderr,z,passed\n";
  double max_abs_z = 0.0;
  for (std::size_t k = 0; k < observables.size(); ++k) {
    const auto check = average_equivalence_check(*cov, observables[k], e);
    const auto q = quadratic_form_average(e, observables[k]);
    const double identity_residual =
        std::abs(q.theoretical - cov->trace() * expectation(observables[k], rho));
    r.passed = r.passed && check.passed && identity_residual <= 1e-10 * (1.0 + std::abs(q.theoretical));
    max_abs_z = std::max(max_abs_z, std::abs(check.z));
    table.push_back(Json{{"name", names[k]},
                         {"empirical", check.empirical},
                         {"predicted", check.predicted},
                         {"trace_ba", q.theoretical},
                         {"identity_residual", identity_residual},
                         {"stderr", q.stderr_},
                         {"z", check.z},
                         {"passed", check.passed}});
    csv << names[k] << ',' << fmt(check.empirical) << ',' << fmt(check.predicted) << ','
        << fmt(q.theoretical) << ',' << fmt(identity_residual) << ',' << fmt(q.stderr_) << ','
        << fmt(check.z) << ',' << (check.passed ? "true" : "false") << '\n';
  }
  const auto energy = energy_average(e);
  const bool energy_ok = energy.stderr_ > 0.0
                             ? std::abs(energy.z) <= 5.0
                             : std::abs(energy.empirical - energy.theoretical) <= 1e-12;
  r.passed = r.passed && energy_ok;
  csv << "energy," << fmt(energy.empirical) << ',' << fmt(energy.theoretical) << ','
      << fmt(energy.theoretical) << ",0," << fmt(energy.stderr_) << ',' << fmt(energy.z) << ','
      << (energy_ok ? "true" : "false") << '\n';

  if (n < kUnderSampled) {
    r.warnings.push_back("under-sampled: n = " + std::to_string(n) + " field draws");
  }
  if (raw_csv) {
    std::ofstream f(*raw_csv);
    if (!f) throw ParseError("cannot write " + *raw_csv);
    f << samples_csv(e);
  }
  r.report = Json{{"ensemble", ensemble_summary(e)},
                  {"density", to_json(rho.op())},
                  {"observables", table},
                  {"energy", {{"empirical", energy.empirical},
                              {"theoretical", energy.theoretical},
                              {"stderr", energy.stderr_},
                              {"z", energy.z},
                              {"passed", energy_ok}}},
                  {"z_threshold", 5.0},
                  {"under_sampled", n < kUnderSampled},
                  {"passed", r.passed}};
  r.csv = csv.str();
  r.summary.push_back("average equivalence over " + std::to_string(observables.size()) +
                      " observables, n = " + std::to_string(n) + ": max |z| " +
                      short_fmt(max_abs_z));
  r.summary.push_back("energy E||phi||^2 = " + short_fmt(energy.empirical) + " vs Tr B = " +
                      short_fmt(energy.theoretical) + " (z = " + short_fmt(energy.z) + ")");
  r.summary.push_back(std::string("result: ") + (r.passed ? "PASS" : "FAIL"));
  return r;
}

// ---------------------------------------------------------------------------

Json check_json(const MultipleCompatibility& m) {
  return Json{{"ok", m.ok},
              {"max_permutation_deviation", m.max_permutation_deviation},
              {"max_marginal_deviation", m.max_marginal_deviation},
              {"min_entry", m.min_entry},
              {"diagnostic", m.diagnostic}};
}

CommandResult jpd_check(ConfigReader& c, unsigned workers) {
  const std::uint64_t seed = c.u64("seed", kDefaultSeed, 0, UINT64_MAX);
  CommandResult r;
  std::ostringstream csv;
  csv << "index,dim,m,ok,max_permutation_deviation,max_marginal_deviation,min_entry\n";

  if (c.has("observables")) {
    const Json obs = *c.raw("observables");
    if (!obs.is_array() || obs.empty() || obs.size() > 8) {
      throw ParseError("observables must be a list of 1 to 8 operators");
    }
    std::vector<ProjectorFamily> fam;
    for (const auto& j : obs) fam.push_back(projectors(operator_from_json(j)));
    auto state = load_state(c);
    if (!state) throw ParseError("explicit observables need a state or state_file");
    const DensityOperator rho = as_density(*state);
    const JointDistribution jd = joint_distribution(fam, rho);
    const auto m = pairwise_implies_multiple_check(fam, rho);
    r.passed = m.ok;
    r.report["explicit"] = Json{{"distribution", jd.to_json()}, {"check", check_json(m)},
                                {"state", state_echo(*state)}};
    csv << "explicit," << rho.size() << ',' << fam.size() << ',' << m.ok << ','
        << fmt(m.max_permutation_deviation) << ',' << fmt(m.max_marginal_deviation) << ','
        << fmt(m.min_entry) << '\n';
    r.summary.push_back("explicit family of " + std::to_string(fam.size()) + ": " +
                        (m.ok ? "PASS" : "FAIL " + m.diagnostic));
  }

  const std::uint64_t families = c.u64("families", c.has("observables") ? 0 : 200, 0, 100000);
  const std::uint64_t max_m = c.u64("max_m", 4, 2, 8);
  const std::uint64_t max_dim = c.u64("max_dim", 8, 2, kMaxTotalDim);
  const std::uint64_t t2 = c.u64("commuting_scenarios", c.has("observables") ? 0 : 200, 0, 100000);

  struct FamilyRow {
    std::size_t dim = 0;
    std::size_t m = 0;
    MultipleCompatibility check;
  };
  std::vector<FamilyRow> rows(families);
  const CounterRng fam_root(seed, kFamilyStream);
  parallel_for(families, workers, [&](std::size_t i) {
    CounterRng rng = fam_root.split(i);
    FamilyRow& row = rows[i];
    row.dim = 2 + uniform_index(max_dim - 1, rng);
    row.m = 2 + uniform_index(max_m - 1, rng);
    const std::vector<double> spectrum =
        i % 2 == 0 ? std::vector<double>{-1.0, 1.0} : std::vector<double>{-1.0, 0.0, 1.0};
    std::vector<ProjectorFamily> fam;
    for (const auto& x : random_commuting_family(row.dim, row.m, spectrum, rng)) {
      fam.push_back(projectors(x));
    }
    row.check = pairwise_implies_multiple_check(fam, random_density(row.dim, rng));
  });
  std::uint64_t ok = 0;
  double max_perm = 0.0;
  double max_marg = 0.0;
  double min_entry = 0.0;
  Json failures = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    ok += row.check.ok ? 1 : 0;
    if (!row.check.ok) failures.push_back(Json{{"index", i}, {"diagnostic", row.check.diagnostic}});
    max_perm = std::max(max_perm, row.check.max_permutation_deviation);
    max_marg = std::max(max_marg, row.check.max_marginal_deviation);
    min_entry = std::min(min_entry, row.check.min_entry);
    csv << i << ',' << row.dim << ',' << row.m << ',' << row.check.ok << ','
        << fmt(row.check.max_permutation_deviation) << ','
        << fmt(row.check.max_marginal_deviation) << ',' << fmt(row.check.min_entry) << '\n';
  }
  r.passed = r.passed && ok == families;
  r.report["families"] = Json{{"n", families},
                              {"passed", ok},
                              {"max_permutation_deviation", max_perm},
                              {"max_marginal_deviation", max_marg},
                              {"min_entry", min_entry},
                              {"failures", failures}};
  if (families > 0) {
    r.summary.push_back("multiple compatibility: " + std::to_string(ok) + "/" +
                        std::to_string(families) + " random families (max permutation deviation " +
                        short_fmt(max_perm) + ")");
  }

  std::vector<FunctionalValue> values(t2);
  const CounterRng t2_root(seed, kCommutingStream);
  parallel_for(t2, workers, [&](std::size_t i) {
    CounterRng rng = t2_root.split(i);
    const std::size_t d = 2 + uniform_index(max_dim - 1, rng);
    const auto ops = random_commuting_family(d, 4, {-1.0, 1.0}, rng);
    const std::vector<std::vector<ProjectorFamily>> groups{
        {projectors(ops[0]), projectors(ops[1])}, {projectors(ops[2]), projectors(ops[3])}};
    values[i] = evaluate_bell_functional(BellFunctional::chsh(), groups, random_density(d, rng));
  });
  std::uint64_t violations = 0;
  double max_gap = t2 > 0 ? -1e300 : 0.0;
  for (const auto& v : values) {
    violations += v.violated ? 1 : 0;
    max_gap = std::max(max_gap, v.value - v.classical_bound);
  }
  r.passed = r.passed && violations == 0;
  r.report["commuting_functionals"] = Json{{"n", t2}, {"violations", violations}, {"max_excess", max_gap}};
  if (t2 > 0) {
    r.summary.push_back("all-commuting CHSH functionals: " + std::to_string(violations) +
                        " violations in " + std::to_string(t2) + " (max excess " +
                        short_fmt(max_gap) + ")");
  }

  if (auto name = c.optional_string("preset")) {
    const FunctionalPreset p = functional_preset(*name);
    const auto v = evaluate_bell_functional(p.functional, p.groups, DensityOperator::pure(p.state));
    r.report["functional"] = Json{{"name", *name},
                                  {"functional", p.functional.to_json()},
                                  {"value", v.value},
                                  {"classical_bound", v.classical_bound},
                                  {"violated", v.violated}};
    r.summary.push_back(*name + ": value " + short_fmt(v.value) + " vs classical bound " +
                        short_fmt(v.classical_bound) + (v.violated ? " (violated)" : ""));
  }
  r.report["passed"] = r.passed;
  r.csv = csv.str();
  r.summary.push_back(std::string("result: ") + (r.passed ? "PASS" : "FAIL"));
  return r;
}

// ---------------------------------------------------------------------------

CommandResult spectral_max(ConfigReader& c, unsigned workers) {
  const std::uint64_t seed = c.u64("seed", kDefaultSeed, 0, UINT64_MAX);
  const std::uint64_t n_random = c.u64("random", 500, 0, 100000);
  const std::uint64_t max_dim = c.u64("max_dim", 8, 2, kMaxTotalDim);
  const double tol = 1e-9;

  CommandResult r;
  std::optional<HermitianOperator> op;
  std::optional<BellScenario> scenario;
  const int op_sources = count_sources(c, {"operator", "operator_file"});
  if (op_sources > 1 || (op_sources == 1 && count_sources(c, {"preset", "scenario", "scenario_file"}) > 0)) {
    throw ParseError("give either an operator or a scenario source, not both");
  }
  if (auto j = c.raw("operator")) {
    op = operator_from_json(*j);
  } else if (auto path = c.optional_string("operator_file")) {
    op = operator_from_json(read_json_file(*path));
  } else {
    scenario = load_scenario(c, "optimal-qubit");
  }

  std::optional<SeparableWitness> witness;
  if (scenario) {
    BOrdering ordering = BOrdering::kOriginal;
    if (scenario->is_tensor()) {
      const auto t = theorem1_check(*scenario);
      ordering = t.ordering;
      if (t.violation_exists) witness = separable_square_witness(*scenario);
    }
    op = bell_operator(scenario->ordered(ordering));
    r.report["scenario"] = scenario->to_json();
    r.report["ordering"] = to_string(ordering);
  }
  r.report["operator"] = to_json(*op);

  const MaxState m = max_state_from_square(*op);
  const double norm = spectral_norm(*op);
  const double dev = std::abs(m.value - norm);
  r.passed = dev <= tol * (1.0 + norm);
  r.report["max_state"] = Json{{"phi", to_json(m.phi)},
                               {"value", m.value},
                               {"expectation", m.expectation},
                               {"sign", m.sign},
                               {"spectral_norm", norm},
                               {"deviation", dev}};
  const SquareVsLinear svl = square_vs_linear_max_states(*op);
  r.report["square_vs_linear"] = Json{{"psi_sq", to_json(svl.psi_sq)},
                                      {"phi_lin", to_json(svl.phi_lin)},
                                      {"same", svl.same},
                                      {"top_multiplicity", svl.top_multiplicity},
                                      {"decomposition", complex_list(svl.decomposition)}};
  r.summary.push_back("max-state from the square: value " + short_fmt(m.value) +
                      ", spectral norm " + short_fmt(norm) + (m.sign < 0 ? " (fallback sign)" : ""));
  r.summary.push_back(std::string("square and linear max-states ") +
                      (svl.same ? "coincide" : "differ") + " (top multiplicity " +
                      std::to_string(svl.top_multiplicity) + ")");

  if (witness) {
    const double bound = quantum_bound(*scenario);
    Json sep{{"psi_sep", to_json(witness->psi_sep)},
             {"mu_a", witness->mu_a},
             {"mu_b", witness->mu_b},
             {"b_squared", witness->value},
             {"predicted_b_squared", 1.0 + 0.25 * witness->mu_a * witness->mu_b},
             {"quantum_bound", bound}};
    bool ok = std::abs(witness->value - (1.0 + 0.25 * witness->mu_a * witness->mu_b)) <= tol;
    try {
      const CEntanglePair p = c_entangle(*op, witness->psi_sep);
      const double bell_value = expectation(*op, p.psi_plus);
      sep["c_entangled"] = Json{{"psi_plus", to_json(p.psi_plus)}, {"bell_value", bell_value}};
      ok = ok && std::abs(bell_value - bound) <= tol;
      r.summary.push_back("separable B^2 eigenstate: <B^2> = " + short_fmt(witness->value) +
                          "; C-entangled state: <B> = " + short_fmt(bell_value) +
                          " (bound " + short_fmt(bound) + ")");
    } catch (const PreconditionError& e) {
      sep["c_entangled"] = nullptr;
      sep["c_entangle_reason"] = e.what();
      r.summary.push_back("separable B^2 eigenstate: <B^2> = " + short_fmt(witness->value) +
                          " (already a B eigenvector)");
    }
    sep["passed"] = ok;
    r.passed = r.passed && ok;
    r.report["separable"] = sep;
  }

  struct Row {
    std::size_t dim = 0;
    double value = 0.0;
    double norm = 0.0;
  };
  std::vector<Row> rows(n_random);
  const CounterRng root(seed, kOperatorStream);
  parallel_for(n_random, workers, [&](std::size_t i) {
    CounterRng rng = root.split(i);
    Row& row = rows[i];
    row.dim = 2 + uniform_index(max_dim - 1, rng);
    const HermitianOperator x = random_hermitian(row.dim, rng);
    row.value = max_state_from_square(x).value;
    row.norm = spectral_norm(x);
  });
  std::ostringstream csv;
  csv << "index,dim,value,spectral_norm,deviation\n";
  double max_dev = 0.0;
  std::uint64_t failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double d = std::abs(rows[i].value - rows[i].norm);
    max_dev = std::max(max_dev, d);
    failures += d > tol * (1.0 + rows[i].norm) ? 1 : 0;
    csv << i << ',' << rows[i].dim << ',' << fmt(rows[i].value) << ',' << fmt(rows[i].norm) << ','
        << fmt(d) << '\n';
  }
  r.passed = r.passed && failures == 0;
  r.report["scan"] = Json{{"n", n_random}, {"max_deviation", max_dev}, {"failures", failures}};
  if (n_random > 0) {
    r.summary.push_back("random scan: " + std::to_string(n_random - failures) + "/" +
                        std::to_string(n_random) + " within tolerance (max deviation " +
                        short_fmt(max_dev) + ")");
  }
  r.report["passed"] = r.passed;
  r.csv = csv.str();
  r.summary.push_back(std::string("result: ") + (r.passed ? "PASS" : "FAIL"));
  return r;
}

// ---------------------------------------------------------------------------

struct CommandSpec {
  const char* name;
  std::set<std::string> keys;
  CommandResult (*fn)(ConfigReader&, unsigned);
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> k{
      {"landau-check", {"preset", "scenario", "scenario_file", "tolerance", "seed"}, landau_check},
      {"theorem1-scan", {"n_scenarios", "dims", "seed", "bound_tolerance"}, theorem1_scan},
      {"chsh-run",
       {"preset", "scenario", "scenario_file", "state", "state_file", "rounds", "seed",
        "z_threshold", "b_ordering"},
       chsh_run},
      {"pcsft-check",
       {"preset", "covariance", "covariance_file", "observables", "n", "seed", "raw_samples_csv"},
       pcsft_check},
      {"jpd-check",
       {"observables", "state", "state_file", "families", "max_m", "max_dim",
        "commuting_scenarios", "preset", "seed"},
       jpd_check},
      {"spectral-max",
       {"preset", "scenario", "scenario_file", "operator", "operator_file", "random", "max_dim",
        "seed"},
       spectral_max},
  };
  return k;
}

void write_report(const Options& o, const std::string& body, std::ostream& out) {
  if (o.out.empty()) return;
  if (o.out == "-") {
    out << body;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ParseError("cannot write report to " + o.out);
  f << body;
  if (!f) throw ParseError("failed writing report to " + o.out);
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& c : commands()) out.emplace_back(c.name);
  return out;
}

unsigned default_workers() {
  const char* env = std::getenv("CHSHLAB_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 256) return 1;
  return static_cast<unsigned>(v);
}

int run(const Options& o, std::ostream& out, std::ostream& err) {
  const auto& all = commands();
  const auto it = std::find_if(all.begin(), all.end(),
                               [&](const CommandSpec& c) { return o.command == c.name; });
  if (it == all.end()) {
    err << "error: unknown command " << o.command << '\n';
    return kExitUsage;
  }
  // The summary moves to stderr when stdout carries the report.
  std::ostream& human = o.out == "-" ? err : out;
  try {
    ConfigReader cfg(load_config(o.config_path), it->keys);
    if (o.seed) cfg.set("seed", *o.seed);
    if (o.preset) {
      if (!it->keys.count("preset")) throw ParseError(o.command + " does not take a preset");
      cfg.set("preset", *o.preset);
    }
    CommandResult r = it->fn(cfg, o.workers);

    Json report{{"command", o.command}, {"version", CHSHLAB_VERSION}, {"config", cfg.echo()}};
    for (auto f = r.report.begin(); f != r.report.end(); ++f) report[f.key()] = f.value();
    report["warnings"] = r.warnings;
    report["passed"] = r.passed;

    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    for (const auto& line : r.summary) human << line << '\n';
    write_report(o, o.format == Format::kCsv ? r.csv : report.dump(2) + "\n", out);
    return r.passed ? kExitPass : kExitCheckFailed;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const Json::exception& e) {
    err << "error: invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace chsh::cli
