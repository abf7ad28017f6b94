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

#include "chsh/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "chsh/error.hpp"

namespace chsh {
namespace {

constexpr double kProjectorTol = 1e-9;
constexpr double kCommuteTol = 1e-9;

double commutator_norm(const HermitianOperator& x, const HermitianOperator& y) {
  return spectral_norm(commutator(x.matrix(), y.matrix()));
}

double commute_scale(const HermitianOperator& x, const HermitianOperator& y) {
  return std::max(1.0, spectral_norm(x) * spectral_norm(y));
}

void require_pairwise_commuting(const std::vector<ProjectorFamily>& families) {
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (std::size_t j = i + 1; j < families.size(); ++j) {
      const auto& x = families[i].observable();
      const auto& y = families[j].observable();
      const double c = commutator_norm(x, y);
      if (c > kCommuteTol * commute_scale(x, y)) {
        std::ostringstream os;
        os << "observables " << i << " and " << j << " do not commute (||[X, Y]|| = " << c
           << "); their joint distribution is undefined";
        throw PreconditionError(os.str());
      }
    }
  }
}

std::vector<std::size_t> radices_of(const std::vector<ProjectorFamily>& families) {
  std::vector<std::size_t> r;
  r.reserve(families.size());
  for (const auto& f : families) r.push_back(f.size());
  return r;
}

std::size_t table_size(const std::vector<std::size_t>& radices) {
  std::size_t n = 1;
  for (std::size_t r : radices) n *= r;
  return n;
}

// Decodes a mixed-radix index, first digit most significant.
std::vector<std::size_t> decode(std::size_t flat, const std::vector<std::size_t>& radices) {
  std::vector<std::size_t> idx(radices.size());
  for (std::size_t k = radices.size(); k-- > 0;) {
    idx[k] = flat % radices[k];
    flat /= radices[k];
  }
  return idx;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProjectorFamily

ProjectorFamily::ProjectorFamily(HermitianOperator observable, std::vector<Outcome> outcomes,
                                 double reconstruction_tol)
    : observable_(std::move(observable)), outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw InvariantError("projector family is empty");
  const auto n = static_cast<Eigen::Index>(observable_.size());
  Matrix sum = Matrix::Zero(n, n);
  Matrix recon = Matrix::Zero(n, n);
  for (std::size_t a = 0; a < outcomes_.size(); ++a) {
    const Matrix& e = outcomes_[a].projector.matrix();
    if (e.rows() != n) throw DimensionError("projector dimension differs from observable");
    if (spectral_norm(Matrix(e * e - e)) > kProjectorTol) {
      throw InvariantError("projector is not idempotent");
    }
    for (std::size_t b = a + 1; b < outcomes_.size(); ++b) {
      if (spectral_norm(Matrix(e * outcomes_[b].projector.matrix())) > kProjectorTol) {
        throw InvariantError("projectors are not mutually orthogonal");
      }
    }
    sum += e;
    recon += outcomes_[a].value * e;
  }
  if (spectral_norm(Matrix(sum - Matrix::Identity(n, n))) > kProjectorTol) {
    throw InvariantError("projectors do not resolve the identity");
  }
  if (spectral_norm(Matrix(recon - observable_.matrix())) >
      reconstruction_tol * (1.0 + spectral_norm(observable_))) {
    throw InvariantError("projector family does not reconstruct its observable");
  }
}

std::optional<std::size_t> ProjectorFamily::find(double value, double tol) const {
  for (std::size_t k = 0; k < outcomes_.size(); ++k) {
    if (std::abs(outcomes_[k].value - value) <= tol) return k;
  }
  return std::nullopt;
}

ProjectorFamily projectors(const HermitianOperator& x, double value_tolerance) {
  if (!(value_tolerance > 0.0)) throw PreconditionError("value_tolerance must be positive");
  const SpectralDecomposition e = eig(x);
  const std::size_t d = e.size();
  std::vector<Outcome> outcomes;
  for (std::size_t start = 0; start < d;) {
    std::size_t stop = start + 1;
    while (stop < d) {
      const double gap = e.eigenvalues[stop] - e.eigenvalues[stop - 1];
      if (gap <= value_tolerance) {
        ++stop;
      } else if (gap <= 2.0 * value_tolerance) {
        std::ostringstream os;
        os << "eigenvalues " << e.eigenvalues[stop - 1] << " and " << e.eigenvalues[stop]
           << " are too close to separate into outcomes";
        throw PreconditionError(os.str());
      } else {
        break;
      }
    }
    if (e.eigenvalues[stop - 1] - e.eigenvalues[start] > 2.0 * value_tolerance) {
      throw PreconditionError("eigenvalue cluster wider than twice the value tolerance");
    }
    const auto n = static_cast<Eigen::Index>(x.size());
    Matrix p = Matrix::Zero(n, n);
    double mean = 0.0;
    for (std::size_t k = start; k < stop; ++k) {
      const Vector& v = e.eigenvectors[k].amplitudes();
      p += v * v.adjoint();
      mean += e.eigenvalues[k];
    }
    mean /= static_cast<double>(stop - start);
    // Snap values that are integers up to rounding, so +-1 reads as +-1.
    const double rounded = std::round(mean);
    if (std::abs(mean - rounded) <= 1e-12 * (1.0 + std::abs(mean))) mean = rounded;
    outcomes.push_back(Outcome{mean, hermitian_part(p, x.dim())});
    start = stop;
  }
  return ProjectorFamily(x, std::move(outcomes), std::max(kProjectorTol, 2.0 * value_tolerance));
}

double max_pairwise_commutator(const std::vector<ProjectorFamily>& families) {
  double worst = 0.0;
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (std::size_t j = i + 1; j < families.size(); ++j) {
      worst = std::max(worst, commutator_norm(families[i].observable(), families[j].observable()));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// JointDistribution

JointDistribution::JointDistribution(std::vector<ProjectorFamily> families,
                                     std::vector<double> table, double min_raw)
    : families_(std::move(families)),
      table_(std::move(table)),
      radices_(radices_of(families_)),
      min_raw_(min_raw) {
  if (table_.size() != table_size(radices_)) {
    throw InvariantError("joint table size does not match the outcome space");
  }
  double total = 0.0;
  for (double p : table_) {
    if (!(p >= 0.0) || p > 1.0 + 1e-10) throw InvariantError("joint probability outside [0, 1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvariantError("joint table does not sum to 1");
}

std::size_t JointDistribution::flat_index(const std::vector<std::size_t>& outcome_indices) const {
  if (outcome_indices.size() != radices_.size()) {
    throw DimensionError("outcome tuple length differs from number of observables");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < radices_.size(); ++k) {
    if (outcome_indices[k] >= radices_[k]) throw DimensionError("outcome index out of range");
    flat = flat * radices_[k] + outcome_indices[k];
  }
  return flat;
}

std::vector<std::size_t> JointDistribution::outcome_indices(std::size_t flat) const {
  return decode(flat, radices_);
}

std::vector<double> JointDistribution::outcome_values(std::size_t flat) const {
  const auto idx = decode(flat, radices_);
  std::vector<double> v(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) v[k] = families_[k].outcomes()[idx[k]].value;
  return v;
}

double JointDistribution::probability(const std::vector<std::size_t>& outcome_indices) const {
  return table_[flat_index(outcome_indices)];
}

std::vector<double> JointDistribution::marginal(std::size_t i, std::size_t j) const {
  if (i >= radices_.size() || j >= radices_.size() || i == j) {
    throw DimensionError("marginal: bad family indices");
  }
  std::vector<double> out(radices_[i] * radices_[j], 0.0);
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    const auto idx = decode(flat, radices_);
    out[idx[i] * radices_[j] + idx[j]] += table_[flat];
  }
  return out;
}

std::vector<double> JointDistribution::marginal(std::size_t i) const {
  if (i >= radices_.size()) throw DimensionError("marginal: bad family index");
  std::vector<double> out(radices_[i], 0.0);
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    out[decode(flat, radices_)[i]] += table_[flat];
  }
  return out;
}

Json JointDistribution::to_json() const {
  Json values = Json::array();
  for (const auto& f : families_) {
    Json v = Json::array();
    for (const auto& o : f.outcomes()) v.push_back(o.value);
    values.push_back(std::move(v));
  }
  return Json{{"outcome_values", std::move(values)}, {"table", table_}, {"min_raw", min_raw_}};
}

std::vector<double> ordered_trace_table(const std::vector<ProjectorFamily>& families,
                                        const std::vector<std::size_t>& order,
                                        const DensityOperator& rho) {
  if (order.size() != families.size()) throw DimensionError("order length mismatch");
  for (const auto& f : families) {
    if (f.dim() != rho.size()) throw DimensionError("family dimension differs from state");
  }
  const auto radices = radices_of(families);
  const std::size_t n = table_size(radices);
  std::vector<double> out(n);
  for (std::size_t flat = 0; flat < n; ++flat) {
    const auto idx = decode(flat, radices);
    Matrix p = rho.matrix();
    for (std::size_t k : order) p = p * families[k].outcomes()[idx[k]].projector.matrix();
    const Complex t = p.trace();
    if (std::abs(t.imag()) > 1e-10) {
      throw NumericalError("joint probability has a non-negligible imaginary part");
    }
    out[flat] = t.real();
  }
  return out;
}

JointDistribution joint_distribution(std::vector<ProjectorFamily> families,
                                     const DensityOperator& rho) {
  if (families.empty()) throw PreconditionError("joint_distribution: no observables");
  require_pairwise_commuting(families);
  std::vector<std::size_t> order(families.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> table = ordered_trace_table(families, order, rho);
  double min_raw = table.empty() ? 0.0 : *std::min_element(table.begin(), table.end());
  for (double& p : table) {
    if (p < -1e-12) throw NumericalError("joint probability is negative beyond rounding");
    if (p < 0.0) p = 0.0;
  }
  return JointDistribution(std::move(families), std::move(table), min_raw);
}

MultipleCompatibility pairwise_implies_multiple_check(const std::vector<ProjectorFamily>& families,
                                                      const DensityOperator& rho) {
  if (families.size() > 8) throw PreconditionError("pairwise_implies_multiple_check: m > 8");
  require_pairwise_commuting(families);
  MultipleCompatibility out;
  const std::size_t m = families.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::vector<double> base = ordered_trace_table(families, order, rho);
  out.min_entry = *std::min_element(base.begin(), base.end());

  std::ostringstream diag;
  while (std::next_permutation(order.begin(), order.end())) {
    const std::vector<double> t = ordered_trace_table(families, order, rho);
    double dev = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) dev = std::max(dev, std::abs(t[k] - base[k]));
    if (dev > out.max_permutation_deviation) {
      out.max_permutation_deviation = dev;
      if (dev > 1e-9 && out.ok) {
        out.ok = false;
        diag << "product order (";
        for (std::size_t k = 0; k < m; ++k) diag << (k ? "," : "") << order[k];
        diag << ") deviates by " << dev << "; ";
      }
    }
  }
  if (out.min_entry < -1e-12) {
    out.ok = false;
    diag << "negative entry " << out.min_entry << "; ";
  }

  // Bivariate marginals against the pairwise formula.
  const auto radices = radices_of(families);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const std::vector<double> pair = ordered_trace_table({families[i], families[j]}, {0, 1}, rho);
      std::vector<double> marg(radices[i] * radices[j], 0.0);
      for (std::size_t flat = 0; flat < base.size(); ++flat) {
        const auto idx = decode(flat, radices);
        marg[idx[i] * radices[j] + idx[j]] += base[flat];
      }
      for (std::size_t k = 0; k < marg.size(); ++k) {
        const double dev = std::abs(marg[k] - pair[k]);
        out.max_marginal_deviation = std::max(out.max_marginal_deviation, dev);
        if (dev > 1e-10 && out.ok) {
          out.ok = false;
          diag << "marginal (" << i << "," << j << ") deviates by " << dev << "; ";
        }
      }
    }
  }
  out.diagnostic = diag.str();
  return out;
}

// ---------------------------------------------------------------------------
// BellFunctional

void BellFunctional::validate() const {
  for (const auto& t : terms) {
    if (!std::isfinite(t.coefficient)) throw InvariantError("functional coefficient not finite");
    if (t.choice.size() != group_sizes.size()) {
      throw InvariantError("functional term does not address every group");
    }
    for (std::size_t k = 0; k < t.choice.size(); ++k) {
      if (t.choice[k] && *t.choice[k] >= group_sizes[k]) {
        throw InvariantError("functional term selects a missing observable");
      }
    }
  }
}

Json BellFunctional::to_json() const {
  Json ts = Json::array();
  for (const auto& t : terms) {
    Json c = Json::array();
    for (const auto& x : t.choice) c.push_back(x ? Json(*x) : Json(nullptr));
    ts.push_back(Json{{"coefficient", t.coefficient}, {"choice", std::move(c)}});
  }
  return Json{{"group_sizes", group_sizes}, {"terms", std::move(ts)}};
}

BellFunctional BellFunctional::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("group_sizes") || !j.contains("terms")) {
    throw ParseError("functional needs group_sizes and terms");
  }
  BellFunctional f;
  try {
    f.group_sizes = j.at("group_sizes").get<std::vector<std::size_t>>();
    for (const auto& t : j.at("terms")) {
      FunctionalTerm term;
      term.coefficient = t.at("coefficient").get<double>();
      for (const auto& c : t.at("choice")) {
        term.choice.push_back(c.is_null() ? std::nullopt
                                          : std::optional<std::size_t>(c.get<std::size_t>()));
      }
      f.terms.push_back(std::move(term));
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("functional: ") + e.what());
  }
  f.validate();
  return f;
}

BellFunctional BellFunctional::chsh() {
  BellFunctional f{{2, 2}, {}};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      f.terms.push_back({(i == 1 && j == 1) ? -0.5 : 0.5, {i, j}});
    }
  }
  return f;
}

BellFunctional BellFunctional::mermin3() {
  constexpr std::size_t X = 0;
  constexpr std::size_t Y = 1;
  return BellFunctional{{2, 2, 2},
                        {{1.0, {X, X, X}}, {-1.0, {X, Y, Y}}, {-1.0, {Y, X, Y}}, {-1.0, {Y, Y, X}}}};
}

namespace {

void check_groups(const BellFunctional& f, const std::vector<std::vector<ProjectorFamily>>& groups) {
  f.validate();
  if (groups.size() != f.group_sizes.size()) throw DimensionError("wrong number of groups");
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (groups[k].size() != f.group_sizes[k]) throw DimensionError("group size mismatch");
  }
}

}  // namespace

double classical_bound(const BellFunctional& f,
                       const std::vector<std::vector<ProjectorFamily>>& groups) {
  check_groups(f, groups);
  // Flatten observables; offsets[k] is the first flat index of group k.
  std::vector<std::size_t> offsets;
  std::vector<std::vector<double>> spectra;
  std::size_t count = 1;
  for (const auto& g : groups) {
    offsets.push_back(spectra.size());
    for (const auto& fam : g) {
      std::vector<double> s;
      for (const auto& o : fam.outcomes()) s.push_back(o.value);
      if (count > kMaxAssignments / s.size()) {
        throw PreconditionError("classical bound: too many deterministic assignments");
      }
      count *= s.size();
      spectra.push_back(std::move(s));
    }
  }
  std::vector<double> values(spectra.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < count; ++a) {
    std::size_t rest = a;
    for (std::size_t k = spectra.size(); k-- > 0;) {
      values[k] = spectra[k][rest % spectra[k].size()];
      rest /= spectra[k].size();
    }
    double v = 0.0;
    for (const auto& t : f.terms) {
      double prod = t.coefficient;
      for (std::size_t k = 0; k < t.choice.size(); ++k) {
        if (t.choice[k]) prod *= values[offsets[k] + *t.choice[k]];
      }
      v += prod;
    }
    best = std::max(best, v);
  }
  return best;
}

FunctionalValue evaluate_bell_functional(const BellFunctional& f,
                                         const std::vector<std::vector<ProjectorFamily>>& groups,
                                         const DensityOperator& rho) {
  check_groups(f, groups);
  for (std::size_t n = 0; n < groups.size(); ++n) {
    for (std::size_t m = n + 1; m < groups.size(); ++m) {
      for (const auto& x : groups[n]) {
        for (const auto& y : groups[m]) {
          const double c = commutator_norm(x.observable(), y.observable());
          if (c > kCommuteTol * commute_scale(x.observable(), y.observable())) {
            std::ostringstream os;
            os << "observables of groups " << n << " and " << m << " do not commute";
            throw PreconditionError(os.str());
          }
        }
      }
    }
  }
  FunctionalValue out;
  const auto d = static_cast<Eigen::Index>(rho.size());
  for (const auto& t : f.terms) {
    Matrix p = Matrix::Identity(d, d);
    for (std::size_t k = 0; k < t.choice.size(); ++k) {
      if (t.choice[k]) p = p * groups[k][*t.choice[k]].observable().matrix();
    }
    out.value += t.coefficient * (rho.matrix() * p).trace().real();
  }
  out.classical_bound = classical_bound(f, groups);
  out.violated = out.value > out.classical_bound + 1e-9;
  return out;
}

}  // namespace chsh
