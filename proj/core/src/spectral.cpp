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

#include "chsh/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>

#include "chsh/error.hpp"

namespace chsh {
namespace {

constexpr double kLambdaTol = 1e-10;
constexpr double kNotEigenTol = 1e-8;
constexpr double kDegenerateNorm = 1e-8;

HermitianOperator square(const HermitianOperator& c) {
  return hermitian_part(c.matrix() * c.matrix(), c.dim());
}

Vector top_eigenvector(const Matrix& m) {
  return eig(HermitianOperator::symmetrized(m)).eigenvectors.back().amplitudes();
}

// Product vector a (x) b inside the range of the projector `p`, found by
// alternating maximization of <a b|P|a b> from a fixed generic start.
std::optional<Vector> product_in_range(const Matrix& p, std::size_t da, std::size_t db) {
  const auto na = static_cast<Eigen::Index>(da);
  const auto nb = static_cast<Eigen::Index>(db);
  Vector a(na);
  for (Eigen::Index k = 0; k < na; ++k) {
    a(k) = std::polar(1.0 / static_cast<double>(k + 1), 2.0 * std::numbers::pi * 0.6180339887498949 * k);
  }
  a.normalize();
  Vector b(nb);
  double overlap = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    Matrix mb = Matrix::Zero(nb, nb);
    for (Eigen::Index i = 0; i < na; ++i) {
      for (Eigen::Index k = 0; k < na; ++k) {
        mb += std::conj(a(i)) * a(k) * p.block(i * nb, k * nb, nb, nb);
      }
    }
    b = top_eigenvector(mb);
    Matrix ma = Matrix::Zero(na, na);
    for (Eigen::Index i = 0; i < na; ++i) {
      for (Eigen::Index k = 0; k < na; ++k) {
        ma(i, k) = b.dot(p.block(i * nb, k * nb, nb, nb) * b);
      }
    }
    a = top_eigenvector(ma);
    const double next = a.dot(ma * a).real();
    const bool settled = std::abs(next - overlap) <= 1e-15;
    overlap = next;
    if (settled) break;
  }
  if (overlap < 1.0 - 1e-12) return std::nullopt;
  Vector ab(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) ab.segment(i * nb, nb) = a(i) * b;
  return ab;
}

}  // namespace

CEntanglePair c_entangle(const HermitianOperator& c, const PureState& u) {
  if (c.size() != u.size()) throw DimensionError("c_entangle: dimension mismatch");
  const Vector& uv = u.amplitudes();
  const Vector cu = c.matrix() * uv;
  const Vector c2u = c.matrix() * cu;
  const double lambda = uv.dot(c2u).real();
  const double scale = 1.0 + spectral_norm(c) * spectral_norm(c);
  if ((c2u - lambda * uv).norm() > 1e-9 * scale) {
    throw PreconditionError("c_entangle: u is not an eigenvector of C^2");
  }
  if (!(lambda > kLambdaTol)) {
    throw PreconditionError("c_entangle: C^2 eigenvalue of u is not positive");
  }
  const Complex mean = uv.dot(cu);
  if ((cu - mean * uv).norm() <= kNotEigenTol) {
    throw PreconditionError("c_entangle: u is already an eigenvector of C");
  }
  const double root = std::sqrt(lambda);
  Vector v = cu / root;
  PureState vs = PureState::normalized(v, u.dim());
  PureState plus = PureState::normalized(uv + v, u.dim()).phase_fixed();
  PureState minus = PureState::normalized(uv - v, u.dim()).phase_fixed();
  return CEntanglePair{u, std::move(vs), lambda, std::move(plus), std::move(minus)};
}

MaxState max_state_from_square(const HermitianOperator& c, const PureState& u) {
  if (c.size() != u.size()) throw DimensionError("max_state_from_square: dimension mismatch");
  const Vector& uv = u.amplitudes();
  const Vector cu = c.matrix() * uv;
  const double lambda = cu.squaredNorm();  // <u|C^2|u>
  if (!(lambda > kLambdaTol)) throw PreconditionError("max_state_from_square: C = 0 on u");
  const double scale = 1.0 + spectral_norm(c) * spectral_norm(c);
  if ((c.matrix() * cu - lambda * uv).norm() > 1e-9 * scale) {
    throw PreconditionError("max_state_from_square: u is not an eigenvector of C^2");
  }
  const Vector w = cu / std::sqrt(lambda);
  MaxState out{u};
  Vector plus = uv + w;
  if (plus.norm() >= kDegenerateNorm) {
    out.phi = PureState::normalized(plus, u.dim()).phase_fixed();
    out.sign = +1;
  } else {
    out.phi = PureState::normalized(Vector(uv - w), u.dim()).phase_fixed();
    out.sign = -1;
  }
  out.expectation = expectation(c, out.phi);
  out.value = out.sign * out.expectation;
  return out;
}

MaxState max_state_from_square(const HermitianOperator& c) {
  const SpectralDecomposition e = eig(square(c));
  if (!(e.eigenvalues.back() > kLambdaTol)) {
    throw PreconditionError("max_state_from_square: C = 0");
  }
  return max_state_from_square(c, e.eigenvectors.back());
}

SquareVsLinear square_vs_linear_max_states(const HermitianOperator& c) {
  const SpectralDecomposition sq = eig(square(c));
  const double top = sq.eigenvalues.back();
  if (!(top > kLambdaTol)) throw PreconditionError("square_vs_linear_max_states: C = 0");
  const double tol = 1e-9 * (1.0 + top);

  // Top eigenspace of C^2, listed starting from the first member so that
  // psi_sq is the first basis vector.
  std::size_t first = sq.size() - 1;
  while (first > 0 && top - sq.eigenvalues[first - 1] <= tol) --first;
  std::vector<PureState> top_space(sq.eigenvectors.begin() + static_cast<long>(first),
                                   sq.eigenvectors.end());

  // On a bipartite space a degenerate top eigenspace may contain product
  // vectors; one of them leads the basis when found.
  const auto& factors = c.dim().factor_dims();
  if (top_space.size() > 1 && factors && factors->size() == 2) {
    const auto n = static_cast<Eigen::Index>(c.size());
    Matrix p = Matrix::Zero(n, n);
    for (const auto& w : top_space) p += w.amplitudes() * w.amplitudes().adjoint();
    if (auto ab = product_in_range(p, (*factors)[0], (*factors)[1])) {
      std::vector<PureState> basis{PureState::normalized(*ab, c.dim()).phase_fixed()};
      for (const auto& w : top_space) {
        if (basis.size() == top_space.size()) break;
        Vector r = w.amplitudes();
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& e : basis) r -= e.amplitudes().dot(r) * e.amplitudes();
        }
        if (r.norm() > 1e-6) basis.push_back(PureState::normalized(r, c.dim()).phase_fixed());
      }
      top_space = std::move(basis);
    }
  }

  const SpectralDecomposition lin = eig(c);
  const std::size_t k =
      std::abs(lin.eigenvalues.back()) + 1e-12 >= std::abs(lin.eigenvalues.front())
          ? lin.size() - 1
          : 0;
  SquareVsLinear out{top_space.front(), lin.eigenvectors[k], false, {}, 0};
  out.same = std::abs(inner(out.psi_sq, out.phi_lin)) > 1.0 - 1e-9;
  out.top_multiplicity = top_space.size();
  for (const auto& w : top_space) out.decomposition.push_back(inner(w, out.phi_lin));
  return out;
}

}  // namespace chsh
