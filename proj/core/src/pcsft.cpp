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

#include "chsh/pcsft.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>
#include <utility>

#include <Eigen/Eigenvalues>

#include "chsh/error.hpp"
#include "chsh/rng.hpp"

namespace chsh {
namespace {

QuadraticFormAverage summarize(const std::vector<double>& values, double theoretical) {
  if (values.empty()) throw PreconditionError("empty field ensemble");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
  QuadraticFormAverage out;
  out.empirical = mean;
  out.theoretical = theoretical;
  out.stderr_ = std::sqrt(var / n);
  out.z = out.stderr_ > 0.0 ? (mean - theoretical) / out.stderr_ : 0.0;
  return out;
}

}  // namespace

CovarianceOperator::CovarianceOperator(HermitianOperator b) : b_(std::move(b)) {
  const auto ev = eigenvalues(b_);
  if (ev.front() < -1e-10) {
    std::ostringstream os;
    os << "covariance operator is not positive semidefinite (min eigenvalue " << ev.front()
       << ")";
    throw InvariantError(os.str());
  }
}

DensityOperator density_from_covariance(const CovarianceOperator& b) {
  const double tr = b.trace();
  if (!(tr > 1e-12)) throw PreconditionError("covariance operator has zero trace");
  return DensityOperator(hermitian_part(b.matrix() / tr, b.op().dim()));
}

Matrix FieldEnsemble::empirical_covariance() const {
  const auto d = static_cast<Eigen::Index>(model.size());
  Matrix acc = Matrix::Zero(d, d);
  for (const auto& phi : samples) acc += phi * phi.adjoint();
  if (!samples.empty()) acc /= static_cast<double>(samples.size());
  return acc;
}

std::vector<double> FieldEnsemble::energies() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& phi : samples) out.push_back(phi.squaredNorm());
  return out;
}

FieldEnsemble sample_field(const CovarianceOperator& b, std::uint64_t seed, std::size_t n,
                           unsigned workers) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(b.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("covariance eigen-solve failed");
  const Eigen::VectorXd lam = solver.eigenvalues().cwiseMax(0.0);
  const Matrix factor = solver.eigenvectors() * lam.cwiseSqrt().cast<Complex>().asDiagonal();
  const auto d = static_cast<Eigen::Index>(b.size());

  FieldEnsemble out{b, seed, std::vector<Vector>(n)};
  const CounterRng root(seed);
  auto draw = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      CounterRng rng = root.split(k);
      Vector xi(d);
      for (Eigen::Index i = 0; i < d; ++i) xi(i) = rng.complex_normal();
      out.samples[k] = factor * xi;
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1 || n < 1024) {
    draw(0, n);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back(draw, begin, end);
  }
  for (auto& t : pool) t.join();
  return out;
}

QuadraticFormAverage quadratic_form_average(const FieldEnsemble& e, const HermitianOperator& a) {
  if (a.size() != e.model.size()) throw DimensionError("quadratic form: dimension mismatch");
  const double theoretical = (e.model.matrix() * a.matrix()).trace().real();
  std::vector<double> values;
  values.reserve(e.size());
  for (const auto& phi : e.samples) values.push_back(phi.dot(a.matrix() * phi).real());
  return summarize(values, theoretical);
}

QuadraticFormAverage energy_average(const FieldEnsemble& e) {
  return summarize(e.energies(), e.model.trace());
}

EquivalenceCheck average_equivalence_check(const CovarianceOperator& b, const HermitianOperator& a,
                                           const FieldEnsemble& e) {
  if (a.size() != b.size() || e.model.size() != b.size()) {
    throw DimensionError("average_equivalence_check: dimension mismatch");
  }
  const DensityOperator rho = density_from_covariance(b);
  const QuadraticFormAverage q = quadratic_form_average(e, a);
  EquivalenceCheck out;
  out.empirical = q.empirical;
  out.predicted = b.trace() * expectation(a, rho);
  out.under_sampled = e.size() < kUnderSampled;
  if (q.stderr_ > 0.0) {
    out.z = (q.empirical - out.predicted) / q.stderr_;
    out.passed = std::abs(out.z) <= 5.0;
  } else {
    out.passed = std::abs(q.empirical - out.predicted) <= 1e-12 * (1.0 + std::abs(out.predicted));
  }
  return out;
}

Json ensemble_summary(const FieldEnsemble& e) {
  const QuadraticFormAverage energy = energy_average(e);
  return Json{{"model", to_json(e.model.op())},
              {"seed", e.seed},
              {"n", e.size()},
              {"truncation", "mode-truncated"},
              {"empirical_covariance", matrix_to_json(e.empirical_covariance())},
              {"energy", {{"empirical", energy.empirical},
                          {"theoretical", energy.theoretical},
                          {"stderr", energy.stderr_},
                          {"z", energy.z}}}};
}

std::string samples_csv(const FieldEnsemble& e) {
  std::ostringstream os;
  os << std::setprecision(17) << "index";
  for (std::size_t i = 0; i < e.model.size(); ++i) os << ",re" << i << ",im" << i;
  os << '\n';
  for (std::size_t k = 0; k < e.samples.size(); ++k) {
    os << k;
    for (Eigen::Index i = 0; i < e.samples[k].size(); ++i) {
      os << ',' << e.samples[k](i).real() << ',' << e.samples[k](i).imag();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace chsh
