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

// Acceptance gate: one PASS/FAIL line per criterion. Exit status 0 only when
// every criterion passes. argv[1] is the chshlab executable.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "chsh/engine.hpp"
#include "chsh/measurement.hpp"
#include "chsh/pcsft.hpp"
#include "chsh/presets.hpp"
#include "chsh/random_ops.hpp"
#include "chsh/rng.hpp"
#include "chsh/spectral.hpp"
#include "oracles.hpp"

namespace {

using namespace chsh;
using chsh::testing::bell_oracle;
using chsh::testing::hermitian_norm_generic;

// Pinned tolerances and limits.
constexpr std::uint64_t kSeed = 20260101;
constexpr double kLandauTol = 1e-9;
constexpr double kLandauSeconds = 30.0;
constexpr double kCommutingTol = 1e-9;
constexpr double kCommutingSeconds = 10.0;
constexpr double kConjunctionSeconds = 30.0;
constexpr double kNonzeroTol = 1e-9;
constexpr double kBoundTol = 1e-9;
constexpr double kTsirelsonTol = 1e-12;
constexpr double kExtractionTol = 0.05;
constexpr double kViolationZ = 5.0;
constexpr double kJpdTol = 1e-9;
constexpr double kFunctionalTol = 1e-9;
constexpr double kSpectralTol = 1e-9;
constexpr double kIdentityTol = 1e-10;
constexpr double kMonteCarloZ = 5.0;
constexpr std::size_t kFieldDraws = 100000;

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

Matrix m_of(const BellScenario& s, bool a, std::size_t i) {
  return a ? s.a(i).op().matrix() : s.b(i).op().matrix();
}

Matrix oracle_bell(const BellScenario& s) {
  return bell_oracle(m_of(s, true, 0), m_of(s, true, 1), m_of(s, false, 0), m_of(s, false, 1));
}

Matrix comm(const Matrix& x, const Matrix& y) { return x * y - y * x; }

double comm_norm(const Matrix& x, const Matrix& y) {
  return hermitian_norm_generic(Complex(0.0, 1.0) * comm(x, y));
}

double max_swap_norm(const BellScenario& s) {
  return std::max(hermitian_norm_generic(oracle_bell(s)),
                  hermitian_norm_generic(oracle_bell(s.swapped_b())));
}

// ---------------------------------------------------------------------------

Verdict landau_identity() {
  const auto t0 = Clock::now();
  const CounterRng root(kSeed, 1);
  double worst = 0.0;
  double worst_library = 0.0;
  std::size_t general = 0;
  std::size_t max_dim = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    CounterRng rng = root.split(i);
    BellScenario s = [&] {
      if (i % 2 == 0) return random_general_scenario(16, rng);
      static const std::size_t dims[][2] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}, {4, 4}, {4, 2}};
      const auto& d = dims[uniform_index(7, rng)];
      return random_tensor_scenario(d[0], d[1], rng);
    }();
    general += s.is_tensor() ? 0 : 1;
    max_dim = std::max(max_dim, s.dim());
    const Matrix b = oracle_bell(s);
    const auto n = static_cast<Eigen::Index>(s.dim());
    const Matrix r = b * b - Matrix::Identity(n, n) +
                     0.25 * comm(m_of(s, true, 0), m_of(s, true, 1)) *
                         comm(m_of(s, false, 0), m_of(s, false, 1));
    const double bn = hermitian_norm_generic(b);
    const double scale = 1.0 + bn * bn;
    worst = std::max(worst, chsh::testing::norm_by_power_iteration(r, 400) / scale);
    worst_library = std::max(worst_library, landau_residual(s) / scale);
  }
  const double t = seconds_since(t0);
  return {worst <= kLandauTol && worst_library <= kLandauTol && max_dim <= 16 && general > 0 &&
              t < kLandauSeconds,
          "1000 scenarios (" + std::to_string(general) + " general, max dim " +
              std::to_string(max_dim) + "), max scaled residual " + num(worst) + " / library " +
              num(worst_library) + " <= " + num(kLandauTol) + ", " + num(t) + " s < " +
              num(kLandauSeconds) + " s"};
}

Verdict quantum_chsh_inequality() {
  const auto t0 = Clock::now();
  const CounterRng root(kSeed, 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < 500; ++i) {
    CounterRng rng = root.split(i);
    const BellScenario s = random_commuting_pair_scenario(i % 2 == 0, i % 4 < 2, rng);
    worst = std::max({worst, max_swap_norm(s), spectral_norm(bell_operator(s))});
  }
  const double t = seconds_since(t0);
  return {worst <= 1.0 + kCommutingTol && t < kCommutingSeconds,
          "500 scenarios with a commuting pair, max ||B|| - 1 = " + num(worst - 1.0) + " <= " +
              num(kCommutingTol) + ", " + num(t) + " s < " + num(kCommutingSeconds) + " s"};
}

struct TensorCase {
  BellScenario s;
  Theorem1Result r;
};

std::vector<TensorCase> tensor_cases() {
  const CounterRng root(kSeed, 3);
  std::vector<TensorCase> out;
  for (std::size_t i = 0; i < 500; ++i) {
    CounterRng rng = root.split(i);
    const std::size_t da = 2 + uniform_index(2, rng);
    const std::size_t db = 2 + uniform_index(2, rng);
    BellScenario s = random_tensor_scenario(da, db, rng);
    Theorem1Result r = theorem1_check(s);
    out.push_back({std::move(s), std::move(r)});
  }
  return out;
}

Verdict theorem1(const std::vector<TensorCase>& cases, double build_seconds) {
  const auto t0 = Clock::now();
  std::size_t agree = 0;
  std::size_t violating = 0;
  std::size_t compatible = 0;
  for (const auto& c : cases) {
    const auto& l = c.s.local();
    const bool incompatible = comm_norm(l.a1.op().matrix(), l.a2.op().matrix()) > kNonzeroTol &&
                              comm_norm(l.b1.op().matrix(), l.b2.op().matrix()) > kNonzeroTol;
    const bool violation = max_swap_norm(c.s) > 1.0 + kNonzeroTol;
    const bool ok = incompatible == violation && c.r.agree &&
                    c.r.locally_incompatible == incompatible && c.r.violation_exists == violation;
    agree += ok ? 1 : 0;
    violating += violation ? 1 : 0;
    compatible += incompatible ? 0 : 1;
  }
  const double t = build_seconds + seconds_since(t0);
  return {agree == cases.size() && t < kConjunctionSeconds,
          std::to_string(agree) + "/" + std::to_string(cases.size()) + " agree (" +
              std::to_string(violating) + " violating, " + std::to_string(compatible) +
              " locally compatible), " + num(t) + " s < " + num(kConjunctionSeconds) + " s"};
}

Verdict bound_formula(const std::vector<TensorCase>& cases) {
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto& l = c.s.local();
    const double ma = comm_norm(l.a1.op().matrix(), l.a2.op().matrix());
    const double mb = comm_norm(l.b1.op().matrix(), l.b2.op().matrix());
    const double formula = std::sqrt(1.0 + 0.25 * ma * mb);
    worst = std::max({worst, std::abs(max_swap_norm(c.s) - formula),
                      std::abs(quantum_bound(c.s) - formula)});
  }
  const BellScenario opt = scenario_preset("optimal-qubit");
  const double qubit = std::max(std::abs(quantum_bound(opt) - std::sqrt(2.0)),
                                std::abs(max_swap_norm(opt) - std::sqrt(2.0)));
  return {worst <= kBoundTol && qubit <= kTsirelsonTol,
          "max |max-swap ||B|| - formula| " + num(worst) + " <= " + num(kBoundTol) +
              ", optimal qubit |bound - sqrt 2| " + num(qubit) + " <= " + num(kTsirelsonTol)};
}

// ---------------------------------------------------------------------------

std::string temp_dir() {
  const auto d = std::filesystem::temp_directory_path() /
                 ("chshlab_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d.string();
}

int run_cli(const std::string& exe, const std::string& args) {
  const std::string cmd = "\"" + exe + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Verdict incompatibility_meter(const std::string& exe, const std::string& dir) {
  const std::string out = dir + "/chsh_run.json";
  const int code = run_cli(exe, "chsh-run --preset optimal-qubit --seed " + std::to_string(kSeed) +
                                    " --out " + out);
  if (code != 0) return {false, "chsh-run exited with " + std::to_string(code)};
  const Json j = Json::parse(slurp(out));
  if (j["config"]["rounds"] != 1000000 || j["config"]["state"] != "singlet" ||
      j["extraction"].is_null() || j["violation_z"].is_null()) {
    return {false, "unexpected report layout"};
  }
  const double extracted = j["extraction"]["extracted_norm_ma"].get<double>();
  const double truth = comm_norm(scenario_preset("optimal-qubit").local().a1.op().matrix(),
                                 scenario_preset("optimal-qubit").local().a2.op().matrix());
  const double z = j["violation_z"].get<double>();
  return {std::abs(extracted - 2.0) <= kExtractionTol && std::abs(truth - 2.0) <= 1e-12 &&
              z >= kViolationZ,
          "extracted ||[A1,A2]|| " + num(extracted) + " (|dev| " + num(std::abs(extracted - 2.0)) +
              " <= " + num(kExtractionTol) + "), violation z " + num(z) + " >= " +
              num(kViolationZ)};
}

// ---------------------------------------------------------------------------

// Projector onto eigenvalue v by Lagrange interpolation over the spectrum.
Matrix lagrange_projector(const Matrix& x, const std::vector<double>& values, double v) {
  const auto n = x.rows();
  Matrix p = Matrix::Identity(n, n);
  for (double w : values) {
    if (w == v) continue;
    p = p * (x - w * Matrix::Identity(n, n)) / (v - w);
  }
  return p;
}

double oracle_expectation(const Matrix& rho, const Matrix& product) {
  return (rho * product).trace().real();
}

Verdict joint_distributions() {
  const CounterRng root(kSeed, 6);
  double worst_perm = 0.0;
  double worst_oracle = 0.0;
  double min_entry = 0.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    CounterRng rng = root.split(i);
    const std::size_t d = 2 + uniform_index(7, rng);
    const std::size_t m = 2 + uniform_index(3, rng);
    const std::vector<double> spectrum =
        i % 2 == 0 ? std::vector<double>{-1.0, 1.0} : std::vector<double>{-1.0, 0.0, 1.0};
    const auto ops = random_commuting_family(d, m, spectrum, rng);
    const DensityOperator rho = random_density(d, rng);
    std::vector<ProjectorFamily> fam;
    for (const auto& x : ops) fam.push_back(projectors(x));
    const auto check = pairwise_implies_multiple_check(fam, rho);
    const JointDistribution jd = joint_distribution(fam, rho);
    std::vector<std::vector<double>> values(m);
    for (std::size_t k = 0; k < m; ++k) {
      for (const auto& o : fam[k].outcomes()) values[k].push_back(o.value);
    }
    double dev = 0.0;
    double perm = 0.0;
    for (std::size_t f = 0; f < jd.size(); ++f) {
      const auto vals = jd.outcome_values(f);
      std::vector<Matrix> ps;
      for (std::size_t k = 0; k < m; ++k) {
        ps.push_back(lagrange_projector(ops[k].matrix(), values[k], vals[k]));
      }
      std::vector<std::size_t> order(m);
      std::iota(order.begin(), order.end(), 0);
      double first = 0.0;
      bool have_first = false;
      do {
        Matrix prod = ps[order[0]];
        for (std::size_t k = 1; k < m; ++k) prod = prod * ps[order[k]];
        const double p = oracle_expectation(rho.matrix(), prod);
        if (!have_first) {
          first = p;
          have_first = true;
        }
        perm = std::max(perm, std::abs(p - first));
        min_entry = std::min(min_entry, p);
      } while (std::next_permutation(order.begin(), order.end()));
      dev = std::max(dev, std::abs(first - jd.table()[f]));
    }
    const double total = std::accumulate(jd.table().begin(), jd.table().end(), 0.0);
    const bool good = check.ok && check.max_permutation_deviation <= kJpdTol &&
                      check.min_entry >= -kJpdTol && perm <= kJpdTol && dev <= kJpdTol &&
                      std::abs(total - 1.0) <= kJpdTol;
    ok += good ? 1 : 0;
    worst_perm = std::max({worst_perm, perm, check.max_permutation_deviation});
    worst_oracle = std::max(worst_oracle, dev);
  }

  // All-commuting scenarios: CHSH plus a random functional per scenario.
  const CounterRng t2(kSeed, 7);
  std::size_t violations = 0;
  double max_excess = -1e300;
  for (std::size_t i = 0; i < 200; ++i) {
    CounterRng rng = t2.split(i);
    const std::size_t d = 2 + uniform_index(7, rng);
    const auto ops = random_commuting_family(d, 4, {-1.0, 1.0}, rng);
    const DensityOperator rho = random_density(d, rng);
    const std::vector<std::vector<ProjectorFamily>> groups{
        {projectors(ops[0]), projectors(ops[1])}, {projectors(ops[2]), projectors(ops[3])}};

    BellFunctional random_f;
    random_f.group_sizes = {2, 2};
    const std::vector<std::optional<std::size_t>> picks{std::nullopt, 0, 1};
    for (const auto& ca : picks) {
      for (const auto& cb : picks) {
        random_f.terms.push_back({2.0 * rng.uniform() - 1.0, {ca, cb}});
      }
    }
    for (const BellFunctional& f : {BellFunctional::chsh(), random_f}) {
      const FunctionalValue v = evaluate_bell_functional(f, groups, rho);
      // Oracle value and classical bound, with every assignment of +-1.
      double value = 0.0;
      for (const auto& t : f.terms) {
        const auto n = static_cast<Eigen::Index>(d);
        Matrix prod = Matrix::Identity(n, n);
        if (t.choice[0]) prod = prod * ops[*t.choice[0]].matrix();
        if (t.choice[1]) prod = prod * ops[2 + *t.choice[1]].matrix();
        value += t.coefficient * oracle_expectation(rho.matrix(), prod);
      }
      double bound = -1e300;
      for (int mask = 0; mask < 16; ++mask) {
        const double s[4] = {mask & 1 ? -1.0 : 1.0, mask & 2 ? -1.0 : 1.0, mask & 4 ? -1.0 : 1.0,
                             mask & 8 ? -1.0 : 1.0};
        double acc = 0.0;
        for (const auto& t : f.terms) {
          double term = t.coefficient;
          if (t.choice[0]) term *= s[*t.choice[0]];
          if (t.choice[1]) term *= s[2 + *t.choice[1]];
          acc += term;
        }
        bound = std::max(bound, acc);
      }
      const bool bad = v.violated || value > bound + kFunctionalTol ||
                       std::abs(v.value - value) > kFunctionalTol ||
                       v.classical_bound > bound + kFunctionalTol;
      violations += bad ? 1 : 0;
      max_excess = std::max(max_excess, value - bound);
    }
  }
  return {ok == 200 && violations == 0,
          std::to_string(ok) + "/200 families pass (max permutation deviation " +
              num(worst_perm) + ", max oracle deviation " + num(worst_oracle) +
              ", min entry " + num(min_entry) + ", tol " + num(kJpdTol) + "); " +
              std::to_string(violations) + " violations in 400 functionals on 200 commuting "
              "scenarios (max excess " + num(max_excess) + ")"};
}

// ---------------------------------------------------------------------------

double schmidt_gap(const PureState& psi, std::size_t da, std::size_t db) {
  Matrix m(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < db; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          psi.amplitudes()(static_cast<Eigen::Index>(i * db + j));
    }
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
}

Verdict spectral_construction() {
  const CounterRng root(kSeed, 8);
  double worst = 0.0;
  for (std::size_t i = 0; i < 500; ++i) {
    CounterRng rng = root.split(i);
    const HermitianOperator c = random_hermitian(2 + uniform_index(7, rng), rng);
    const MaxState m = max_state_from_square(c);
    const Vector& phi = m.phi.amplitudes();
    const double attained = std::abs((phi.adjoint() * c.matrix() * phi)(0).real());
    const double norm = hermitian_norm_generic(c.matrix());
    worst = std::max({worst, std::abs(m.value - norm), std::abs(attained - norm)});
  }

  const BellScenario opt = scenario_preset("optimal-qubit");
  const SeparableWitness w = separable_square_witness(opt);
  const Matrix b = oracle_bell(opt.ordered(w.ordering));
  const Vector& u = w.psi_sep.amplitudes();
  const double sq = (u.adjoint() * b * b * u)(0).real();
  const double gap = schmidt_gap(w.psi_sep, 2, 2);
  const CEntanglePair p = c_entangle(bell_operator(opt.ordered(w.ordering)), w.psi_sep);
  const Vector& phi = p.psi_plus.amplitudes();
  const double lin = (phi.adjoint() * b * phi)(0).real();
  const bool ok = worst <= kSpectralTol && std::abs(sq - 2.0) <= kSpectralTol &&
                  gap <= kSpectralTol && std::abs(lin - std::sqrt(2.0)) <= kSpectralTol;
  return {ok, "500 random operators, max |value - ||C||| " + num(worst) + " <= " +
                  num(kSpectralTol) + "; separable <B^2> = " + num(sq) + " (Schmidt gap " +
                  num(gap) + "), constructed <B> - sqrt 2 = " + num(lin - std::sqrt(2.0)) + ", tol " +
                  num(kSpectralTol)};
}

// ---------------------------------------------------------------------------

Verdict field_averages() {
  const CounterRng root(kSeed, 9);
  double worst_identity = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    CounterRng rng = root.split(i);
    const std::size_t d = 2 + uniform_index(7, rng);
    const HermitianOperator b = random_psd(d, rng);
    const HermitianOperator a = random_hermitian(d, rng);
    // Tr(BA) by explicit index sum.
    Complex tr_ba(0.0, 0.0);
    for (Eigen::Index r = 0; r < b.matrix().rows(); ++r) {
      for (Eigen::Index c = 0; c < b.matrix().cols(); ++c) {
        tr_ba += b.matrix()(r, c) * a.matrix()(c, r);
      }
    }
    const CovarianceOperator cov(b);
    const DensityOperator rho = density_from_covariance(cov);
    const double rhs = cov.trace() * expectation(a, rho);
    worst_identity = std::max(worst_identity, std::abs(tr_ba.real() - rhs));
  }

  bool mc_ok = true;
  double worst_z = 0.0;
  double worst_energy_z = 0.0;
  std::size_t checks = 0;
  std::uint64_t stream = 0;
  for (const auto& name : field_preset_names()) {
    const FieldPreset p = field_preset(name);
    const FieldEnsemble e = sample_field(p.covariance, kSeed + stream++, kFieldDraws, 1);
    for (const auto& a : p.observables) {
      const EquivalenceCheck c = average_equivalence_check(p.covariance, a, e);
      mc_ok = mc_ok && c.passed && std::abs(c.z) <= kMonteCarloZ && !c.under_sampled;
      worst_z = std::max(worst_z, std::abs(c.z));
      ++checks;
    }
    const QuadraticFormAverage en = energy_average(e);
    const double z = en.stderr_ > 0.0 ? (en.empirical - p.covariance.trace()) / en.stderr_ : 0.0;
    mc_ok = mc_ok && std::abs(z) <= kMonteCarloZ;
    worst_energy_z = std::max(worst_energy_z, std::abs(z));
  }
  return {worst_identity <= kIdentityTol && mc_ok,
          "200 (B, A) pairs, max identity residual " + num(worst_identity) + " <= " +
              num(kIdentityTol) + "; " + std::to_string(checks) + " preset averages at n = " +
              std::to_string(kFieldDraws) + ", max |z| " + num(worst_z) + ", energy max |z| " +
              num(worst_energy_z) + " <= " + num(kMonteCarloZ)};
}

// ---------------------------------------------------------------------------

Verdict determinism(const std::string& exe, const std::string& dir) {
  const std::vector<std::string> commands{"landau-check", "theorem1-scan", "chsh-run",
                                          "pcsft-check",  "jpd-check",     "spectral-max"};
  std::size_t identical = 0;
  std::string failed;
  for (const auto& c : commands) {
    const std::string a = dir + "/" + c + "_a.json";
    const std::string b = dir + "/" + c + "_b.json";
    const std::string args = c + " --seed " + std::to_string(kSeed);
    const int ca = run_cli(exe, args + " --out " + a);
    const int cb = run_cli(exe, args + " --workers 2 --out " + b);
    const std::string ra = slurp(a);
    if (ca == cb && !ra.empty() && ra == slurp(b)) {
      ++identical;
    } else {
      failed += " " + c;
    }
  }
  return {identical == commands.size(),
          std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands reproduce byte-identical JSON" +
              (failed.empty() ? std::string() : " (differ:" + failed + ")")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance_test <path to chshlab>\n";
    return 2;
  }
  const std::string exe = argv[1];
  const std::string dir = temp_dir();

  const auto t3 = Clock::now();
  const std::vector<TensorCase> cases = tensor_cases();
  const double build_seconds = seconds_since(t3);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"Landau identity", landau_identity},
      {"quantum CHSH inequality for a commuting pair", quantum_chsh_inequality},
      {"local incompatibility iff violation", [&] { return theorem1(cases, build_seconds); }},
      {"maximal CHSH value formula", [&] { return bound_formula(cases); }},
      {"incompatibility meter end to end", [&] { return incompatibility_meter(exe, dir); }},
      {"joint distributions of commuting families", joint_distributions},
      {"maximizing states from the square", spectral_construction},
      {"classical-field averages", field_averages},
      {"CLI determinism", [&] { return determinism(exe, dir); }},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Verdict o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "CRITERION " << (i + 1) << ' ' << (o.pass ? "PASS" : "FAIL") << " ["
              << criteria[i].first << "] " << o.detail << " (" << num(seconds_since(t0))
              << " s)" << std::endl;
  }
  std::filesystem::remove_all(dir);
  std::cout << (all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << std::endl;
  return all ? 0 : 1;
}
