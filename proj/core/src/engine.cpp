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

#include "chsh/engine.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "chsh/error.hpp"

namespace chsh {
namespace {

constexpr double kGoldenGamma = 0.6180339887498948482;
constexpr double kCommonBasisTol = 1e-8;


Complex correlation(const Matrix& a, const Matrix& b, const Vector& psi) {
  return psi.dot(a * (b * psi));
}

// Index of the eigenvalue with the largest magnitude; the positive one wins
// a tie so that, e.g., 2 sigma_y reports +2.
std::size_t top_magnitude(const std::vector<double>& ev) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < ev.size(); ++k) {
    const double a = std::abs(ev[k]);
    const double b = std::abs(ev[best]);
    if (a > b + 1e-12 * (1.0 + b) || (std::abs(a - b) <= 1e-12 * (1.0 + b) && ev[k] > ev[best])) {
      best = k;
    }
  }
  return best;
}

double max_offdiag(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

bool diagonalizes(const Matrix& v, const HermitianOperator& x, const HermitianOperator& y,
                  std::vector<double>& xv, std::vector<double>& yv) {
  const Matrix dx = v.adjoint() * x.matrix() * v;
  const Matrix dy = v.adjoint() * y.matrix() * v;
  const double tol_x = kCommonBasisTol * (1.0 + x.matrix().norm());
  const double tol_y = kCommonBasisTol * (1.0 + y.matrix().norm());
  if (max_offdiag(dx) > tol_x || max_offdiag(dy) > tol_y) return false;
  xv.resize(static_cast<std::size_t>(v.cols()));
  yv.resize(static_cast<std::size_t>(v.cols()));
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    xv[static_cast<std::size_t>(k)] = dx(k, k).real();
    yv[static_cast<std::size_t>(k)] = dy(k, k).real();
  }
  return true;
}

struct LocalCommutators {
  HermitianOperator m_a;
  HermitianOperator m_b;
};

LocalCommutators local_commutators(const BellScenario& s) {
  const LocalObservables& l = s.local();
  return {commutator_observable(l.a1.op(), l.a2.op()),
          commutator_observable(l.b1.op(), l.b2.op())};
}

}  // namespace

HermitianOperator bell_operator(const BellScenario& s) {
  const Matrix& a1 = s.a(0).matrix();
  const Matrix& a2 = s.a(1).matrix();
  const Matrix& b1 = s.b(0).matrix();
  const Matrix& b2 = s.b(1).matrix();
  const Matrix m = 0.5 * (a1 * (b1 + b2) + a2 * (b1 - b2));
  return hermitian_part(m, s.a(0).op().dim());
}

double chsh_correlation(const BellScenario& s, const PureState& psi) {
  if (psi.size() != s.dim()) throw DimensionError("chsh_correlation: dimension mismatch");
  const Vector& v = psi.amplitudes();
  const Complex c11 = correlation(s.a(0).matrix(), s.b(0).matrix(), v);
  const Complex c12 = correlation(s.a(0).matrix(), s.b(1).matrix(), v);
  const Complex c21 = correlation(s.a(1).matrix(), s.b(0).matrix(), v);
  const Complex c22 = correlation(s.a(1).matrix(), s.b(1).matrix(), v);
  return 0.5 * (c11 + c12 + c21 - c22).real();
}

double chsh_correlation(const BellScenario& s, const DensityOperator& rho) {
  if (rho.size() != s.dim()) throw DimensionError("chsh_correlation: dimension mismatch");
  auto c = [&](const Matrix& a, const Matrix& b) {
    return (rho.matrix() * a * b).trace().real();
  };
  return 0.5 * (c(s.a(0).matrix(), s.b(0).matrix()) + c(s.a(0).matrix(), s.b(1).matrix()) +
                c(s.a(1).matrix(), s.b(0).matrix()) - c(s.a(1).matrix(), s.b(1).matrix()));
}

HermitianOperator landau_square(const BellScenario& s) {
  const Matrix ca = commutator(s.a(0).matrix(), s.a(1).matrix());
  const Matrix cb = commutator(s.b(0).matrix(), s.b(1).matrix());
  const auto n = static_cast<Eigen::Index>(s.dim());
  return hermitian_part(Matrix::Identity(n, n) - 0.25 * ca * cb, s.a(0).op().dim());
}

double landau_residual(const BellScenario& s) {
  const Matrix b = bell_operator(s).matrix();
  return spectral_norm(Matrix(b * b - landau_square(s).matrix()));
}

CommonEigenbasis common_eigenbasis(const HermitianOperator& x, const HermitianOperator& y) {
  if (x.size() != y.size()) throw DimensionError("common_eigenbasis: dimension mismatch");
  CommonEigenbasis out;
  out.basis = eig(x + kGoldenGamma * y).basis();
  if (diagonalizes(out.basis, x, y, out.x_values, out.y_values)) return out;

  // Fallback: eigenspaces of X, then Y restricted to each.
  out.used_fallback = true;
  const SpectralDecomposition ex = eig(x);
  Matrix v = ex.basis();
  const double tol = kCommonBasisTol * (1.0 + spectral_norm(x));
  const auto d = static_cast<Eigen::Index>(ex.size());
  for (Eigen::Index start = 0; start < d;) {
    Eigen::Index stop = start + 1;
    while (stop < d && ex.eigenvalues[static_cast<std::size_t>(stop)] -
                               ex.eigenvalues[static_cast<std::size_t>(stop - 1)] <=
                           tol) {
      ++stop;
    }
    if (stop - start > 1) {
      const Matrix block = v.middleCols(start, stop - start);
      const Matrix restricted = block.adjoint() * y.matrix() * block;
      const SpectralDecomposition ey = eig(HermitianOperator::symmetrized(restricted));
      v.middleCols(start, stop - start) = block * ey.basis();
    }
    start = stop;
  }
  out.basis = v;
  if (!diagonalizes(out.basis, x, y, out.x_values, out.y_values)) {
    throw NumericalError("operators could not be simultaneously diagonalized");
  }
  return out;
}

BellNorm max_bell_norm(const BellScenario& s) {
  const double original = spectral_norm(bell_operator(s));
  const double swapped = spectral_norm(bell_operator(s.swapped_b()));
  if (swapped > original) return {swapped, BOrdering::kSwapped};
  return {original, BOrdering::kOriginal};
}

IncompatibilityReport incompatibility_report(const BellScenario& s) {
  HermitianOperator m_a = commutator_observable(s.a(0).op(), s.a(1).op());
  HermitianOperator m_b = commutator_observable(s.b(0).op(), s.b(1).op());
  HermitianOperator m_ab = hermitian_part(m_a.matrix() * m_b.matrix(), m_a.dim());
  IncompatibilityReport r{std::move(m_a), std::move(m_b), std::move(m_ab)};
  r.norm_ma = spectral_norm(r.m_a);
  r.norm_mb = spectral_norm(r.m_b);
  r.commutator_residual = spectral_norm(commutator(r.m_a.matrix(), r.m_b.matrix()));

  double mu_a = 0.0;
  double mu_b = 0.0;
  if (s.is_tensor()) {
    const LocalCommutators lc = local_commutators(s);
    const auto ea = eigenvalues(lc.m_a);
    const auto eb = eigenvalues(lc.m_b);
    mu_a = ea[top_magnitude(ea)];
    mu_b = eb[top_magnitude(eb)];
  } else {
    const CommonEigenbasis cb = common_eigenbasis(r.m_a, r.m_b);
    std::size_t best = 0;
    for (std::size_t k = 1; k < cb.x_values.size(); ++k) {
      if (std::abs(cb.x_values[k] * cb.y_values[k]) >
          std::abs(cb.x_values[best] * cb.y_values[best])) {
        best = k;
      }
    }
    mu_a = cb.x_values[best];
    mu_b = cb.y_values[best];
  }
  if (mu_a * mu_b < 0.0) {
    r.ordering = BOrdering::kSwapped;
    mu_b = -mu_b;
  }
  r.mu_a = mu_a;
  r.mu_b = mu_b;
  r.mu = std::max(0.0, mu_a * mu_b);
  r.b_predicted = std::sqrt(1.0 + 0.25 * r.mu);
  r.b_norm_product = std::sqrt(1.0 + 0.25 * r.norm_ma * r.norm_mb);
  r.b_eigen = max_bell_norm(s).value;
  r.m_ab_zero = r.norm_ma > kIncompatibilityTol && r.norm_mb > kIncompatibilityTol &&
                spectral_norm(r.m_ab) <= kIncompatibilityTol;
  r.violation_possible = r.mu > kIncompatibilityTol;
  return r;
}

Json IncompatibilityReport::to_json() const {
  return Json{{"M_A", chsh::to_json(m_a)},
              {"M_B", chsh::to_json(m_b)},
              {"M_AB", chsh::to_json(m_ab)},
              {"norm_MA", norm_ma},
              {"norm_MB", norm_mb},
              {"commutator_residual", commutator_residual},
              {"mu_A", mu_a},
              {"mu_B", mu_b},
              {"mu", mu},
              {"b_ordering", chsh::to_string(ordering)},
              {"b_predicted", b_predicted},
              {"b_norm_product", b_norm_product},
              {"b_eigen", b_eigen},
              {"S", chsh_s()},
              {"M_AB_zero", m_ab_zero},
              {"violation_possible", violation_possible}};
}

double quantum_bound(const BellScenario& s) {
  if (!s.is_tensor()) {
    throw PreconditionError("quantum_bound: the norm-product bound needs tensor structure");
  }
  const LocalCommutators lc = local_commutators(s);
  return std::sqrt(1.0 + 0.25 * spectral_norm(lc.m_a) * spectral_norm(lc.m_b));
}

ExtractedIncompatibility extract_incompatibility(double b_observed, double norm_mb) {
  if (!(norm_mb > kIncompatibilityTol)) {
    throw PreconditionError("extract_incompatibility: auxiliary B pair must be incompatible");
  }
  ExtractedIncompatibility out;
  if (b_observed < 1.0) {
    out.clamped = true;
    b_observed = 1.0;
  }
  out.value = 4.0 * (b_observed * b_observed - 1.0) / norm_mb;
  return out;
}

Theorem1Result theorem1_check(const BellScenario& s) {
  if (!s.is_tensor()) throw PreconditionError("theorem1_check: needs tensor structure");
  const LocalCommutators lc = local_commutators(s);
  Theorem1Result r;
  r.norm_ma = spectral_norm(lc.m_a);
  r.norm_mb = spectral_norm(lc.m_b);
  r.locally_incompatible = r.norm_ma > kIncompatibilityTol && r.norm_mb > kIncompatibilityTol;
  const BellNorm bn = max_bell_norm(s);
  r.bell_norm = bn.value;
  r.ordering = bn.ordering;
  r.violation_exists = bn.value > 1.0 + kIncompatibilityTol;
  r.agree = r.locally_incompatible == r.violation_exists;
  if (r.violation_exists) {
    const BellScenario chosen = s.ordered(bn.ordering);
    const SpectralDecomposition e = eig(bell_operator(chosen));
    const std::size_t k = top_magnitude(e.eigenvalues);
    r.witness = e.eigenvectors[k];
    r.witness_value = chsh_correlation(chosen, *r.witness);
  }
  return r;
}

SeparableWitness separable_square_witness(const BellScenario& s) {
  if (!s.is_tensor()) throw PreconditionError("separable_square_witness: needs tensor structure");
  const LocalCommutators lc = local_commutators(s);
  const SpectralDecomposition ea = eig(lc.m_a);
  const SpectralDecomposition eb = eig(lc.m_b);
  const std::size_t ia = top_magnitude(ea.eigenvalues);
  const std::size_t ib = top_magnitude(eb.eigenvalues);
  const double mu_a = ea.eigenvalues[ia];
  double mu_b = eb.eigenvalues[ib];
  if (std::abs(mu_a) <= kIncompatibilityTol || std::abs(mu_b) <= kIncompatibilityTol) {
    throw PreconditionError(
        "separable_square_witness: a local commutator vanishes, no positive product exists");
  }
  BOrdering ordering = BOrdering::kOriginal;
  if (mu_a * mu_b < 0.0) {
    ordering = BOrdering::kSwapped;
    mu_b = -mu_b;
  }
  PureState psi_sep = tensor_product(ea.eigenvectors[ia], eb.eigenvectors[ib]);
  const Matrix b = bell_operator(s.ordered(ordering)).matrix();
  const double value = expectation(hermitian_part(b * b, psi_sep.dim()), psi_sep);
  return SeparableWitness{std::move(psi_sep), ea.eigenvectors[ia], eb.eigenvectors[ib], mu_a,
                          mu_b, ordering, value};
}

}  // namespace chsh
