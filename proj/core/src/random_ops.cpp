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

#include "chsh/random_ops.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "chsh/error.hpp"

namespace chsh {

std::size_t uniform_index(std::size_t n, CounterRng& rng) {
  if (n == 0) throw PreconditionError("uniform_index: empty range");
  const auto k = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
  return std::min(k, n - 1);
}

Matrix haar_unitary(std::size_t d, CounterRng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

HermitianOperator dichotomic_from_signs(const Matrix& u, std::size_t with_negative) {
  const Eigen::Index n = u.rows();
  Eigen::VectorXd signs = Eigen::VectorXd::Ones(n);
  for (std::size_t k = 0; k < with_negative && static_cast<Eigen::Index>(k) < n; ++k) {
    signs(n - 1 - static_cast<Eigen::Index>(k)) = -1.0;
  }
  const Matrix m = u * signs.cast<Complex>().asDiagonal() * u.adjoint();
  return HermitianOperator::symmetrized(m);
}

HermitianOperator random_dichotomic(std::size_t d, CounterRng& rng, double scalar_probability) {
  if (d == 1 || rng.uniform() < scalar_probability) {
    const double s = rng.uniform() < 0.5 ? 1.0 : -1.0;
    return s * HermitianOperator::identity(d);
  }
  const std::size_t negatives = 1 + uniform_index(d - 1, rng);
  return dichotomic_from_signs(haar_unitary(d, rng), negatives);
}

HermitianOperator random_hermitian(std::size_t d, CounterRng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  }
  return HermitianOperator::symmetrized(g);
}

HermitianOperator random_psd(std::size_t d, CounterRng& rng, std::size_t rank) {
  if (rank == 0) rank = d;
  const auto n = static_cast<Eigen::Index>(d);
  const auto r = static_cast<Eigen::Index>(rank);
  Matrix g(n, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  }
  return HermitianOperator::symmetrized(g * g.adjoint() / static_cast<double>(d));
}

PureState random_state(std::size_t d, CounterRng& rng) {
  Vector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return PureState::normalized(v);
}

DensityOperator random_density(std::size_t d, CounterRng& rng) {
  const HermitianOperator b = random_psd(d, rng);
  return DensityOperator(HermitianOperator::symmetrized(b.matrix() / b.trace()));
}

std::vector<HermitianOperator> random_commuting_family(std::size_t d, std::size_t count,
                                                       const std::vector<double>& spectrum,
                                                       CounterRng& rng) {
  if (spectrum.empty()) throw PreconditionError("random_commuting_family: empty spectrum");
  const Matrix u = haar_unitary(d, rng);
  std::vector<HermitianOperator> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    Eigen::VectorXd diag(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < diag.size(); ++i) diag(i) = spectrum[uniform_index(spectrum.size(), rng)];
    out.push_back(HermitianOperator::symmetrized(u * diag.cast<Complex>().asDiagonal() * u.adjoint()));
  }
  return out;
}

}  // namespace chsh
