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

#include "chsh/operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "chsh/error.hpp"

namespace chsh {
namespace {

void check_dim(std::size_t d) {
  if (d < 1 || d > kMaxDim) {
    std::ostringstream os;
    os << "dimension " << d << " outside [1, " << kMaxDim << "]";
    throw DimensionError(os.str());
  }
}

void check_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        throw InvariantError("matrix has non-finite entries");
      }
    }
  }
}

double max_asymmetry(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

Matrix exact_hermitian_part(const Matrix& m) {
  Matrix h = m;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const Complex v = (m(i, j) + std::conj(m(j, i))) * 0.5;
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
    h(j, j) = Complex(m(j, j).real(), 0.0);
  }
  return h;
}

double norm_of_exact_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue solver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

int largest_amplitude_index(const Vector& v) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v(i)));
  const double cut = best * (1.0 - 1e-12);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= cut) return static_cast<int>(i);
  }
  return 0;
}

Vector phase_fix(const Vector& v) {
  const int k = largest_amplitude_index(v);
  const double mag = std::abs(v(k));
  if (mag == 0.0) return v;
  const Complex phase = std::conj(v(k)) / mag;
  Vector out = v * phase;
  out(k) = Complex(out(k).real(), 0.0);
  return out;
}

// Replaces the columns of `block` (orthonormal basis of one eigenspace) by a
// basis that depends only on the spanned subspace: repeatedly take the
// standard basis vector with the largest residual after projecting onto the
// subspace and out of the vectors already chosen.
Matrix canonical_subspace_basis(const Matrix& block) {
  const Eigen::Index d = block.rows();
  const Eigen::Index k = block.cols();
  const Matrix proj = block * block.adjoint();
  Matrix chosen(d, k);
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  for (Eigen::Index t = 0; t < k; ++t) {
    Eigen::Index best_j = -1;
    double best_norm = -1.0;
    Vector best_r;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      Vector r = proj.col(j);
      for (Eigen::Index c = 0; c < t; ++c) {
        r -= chosen.col(c) * chosen.col(c).dot(r);
      }
      const double n = r.norm();
      if (n > best_norm) {
        best_norm = n;
        best_j = j;
        best_r = std::move(r);
      }
    }
    used[static_cast<std::size_t>(best_j)] = true;
    Vector r = best_r / best_norm;
    // Second Gram-Schmidt pass.
    for (Eigen::Index c = 0; c < t; ++c) r -= chosen.col(c) * chosen.col(c).dot(r);
    r /= r.norm();
    chosen.col(t) = r;
  }
  return chosen;
}

}  // namespace

// ---------------------------------------------------------------------------
// HilbertDim

HilbertDim::HilbertDim(std::size_t d) : d_(d) { check_dim(d); }

HilbertDim::HilbertDim(std::size_t d, std::vector<std::size_t> factor_dims)
    : d_(d), factors_(std::move(factor_dims)) {
  check_dim(d);
  if (factors_->empty()) throw InvariantError("factor_dims must be nonempty");
  std::size_t product = 1;
  for (std::size_t f : *factors_) {
    if (f < 1) throw InvariantError("factor dimension must be positive");
    product *= f;
  }
  if (product != d) {
    throw InvariantError("product of factor_dims does not equal dimension");
  }
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(Matrix m)
    : HermitianOperator(m, HilbertDim(static_cast<std::size_t>(m.rows()))) {}

HermitianOperator::HermitianOperator(Matrix m, HilbertDim dim)
    : m_(std::move(m)), dim_(std::move(dim)) {
  if (m_.rows() != m_.cols()) throw DimensionError("operator matrix is not square");
  if (static_cast<std::size_t>(m_.rows()) != dim_.size()) {
    throw DimensionError("operator matrix size does not match its dimension");
  }
  check_finite(m_);
  const double asym = max_asymmetry(m_);
  if (asym > 0.0) {
    const double scale = norm_of_exact_hermitian(exact_hermitian_part(m_));
    if (asym > kHermitianTol * scale) {
      std::ostringstream os;
      os << "matrix is not Hermitian: asymmetry " << asym << " vs norm " << scale;
      throw InvariantError(os.str());
    }
  }
}

HermitianOperator::HermitianOperator(Matrix m, HilbertDim dim, Trusted)
    : m_(std::move(m)), dim_(std::move(dim)) {}

HermitianOperator hermitian_part(const Matrix& m, HilbertDim dim) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != dim.size()) {
    throw DimensionError("operator matrix size does not match its dimension");
  }
  check_finite(m);
  return HermitianOperator(exact_hermitian_part(m), std::move(dim),
                           HermitianOperator::Trusted{});
}

HermitianOperator HermitianOperator::symmetrized(const Matrix& m) {
  return symmetrized(m, HilbertDim(static_cast<std::size_t>(m.rows())));
}

HermitianOperator HermitianOperator::symmetrized(const Matrix& m, HilbertDim dim) {
  return hermitian_part(m, std::move(dim));
}

HermitianOperator HermitianOperator::identity(std::size_t d) {
  check_dim(d);
  const auto n = static_cast<Eigen::Index>(d);
  return HermitianOperator(Matrix::Identity(n, n), HilbertDim(d), Trusted{});
}

HermitianOperator HermitianOperator::zero(std::size_t d) {
  check_dim(d);
  const auto n = static_cast<Eigen::Index>(d);
  return HermitianOperator(Matrix::Zero(n, n), HilbertDim(d), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& entries) {
  check_dim(entries.size());
  const auto n = static_cast<Eigen::Index>(entries.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  check_finite(m);
  return HermitianOperator(std::move(m), HilbertDim(entries.size()), Trusted{});
}

HermitianOperator HermitianOperator::with_dim(HilbertDim dim) const {
  if (dim.size() != size()) throw DimensionError("dimension retag changes size");
  return HermitianOperator(m_, std::move(dim), Trusted{});
}

double HermitianOperator::trace() const { return m_.trace().real(); }

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.size() != b.size()) throw DimensionError("operator sum: dimension mismatch");
  return HermitianOperator(a.m_ + b.m_, a.dim_, HermitianOperator::Trusted{});
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.size() != b.size()) throw DimensionError("operator difference: dimension mismatch");
  return HermitianOperator(a.m_ - b.m_, a.dim_, HermitianOperator::Trusted{});
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(a.m_ * s, a.dim_, HermitianOperator::Trusted{});
}

HermitianOperator HermitianOperator::operator-() const {
  return HermitianOperator(-m_, dim_, Trusted{});
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(Vector amplitudes)
    : PureState(amplitudes, HilbertDim(static_cast<std::size_t>(amplitudes.size()))) {}

PureState::PureState(Vector amplitudes, HilbertDim dim)
    : psi_(std::move(amplitudes)), dim_(std::move(dim)) {
  if (static_cast<std::size_t>(psi_.size()) != dim_.size()) {
    throw DimensionError("state length does not match its dimension");
  }
  for (Eigen::Index i = 0; i < psi_.size(); ++i) {
    if (!std::isfinite(psi_(i).real()) || !std::isfinite(psi_(i).imag())) {
      throw InvariantError("state has non-finite amplitudes");
    }
  }
  if (std::abs(psi_.norm() - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "state is not normalized (norm " << psi_.norm() << ")";
    throw InvariantError(os.str());
  }
}

PureState PureState::normalized(const Vector& v) {
  return normalized(v, HilbertDim(static_cast<std::size_t>(v.size())));
}

PureState PureState::normalized(const Vector& v, HilbertDim dim) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvariantError("cannot normalize a zero vector");
  return PureState(v / n, std::move(dim));
}

PureState PureState::basis(std::size_t d, std::size_t k) {
  check_dim(d);
  if (k >= d) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::phase_fixed() const { return PureState(phase_fix(psi_), dim_); }

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(HermitianOperator rho) : rho_(std::move(rho)) {
  if (std::abs(rho_.trace() - 1.0) > 1e-10) {
    throw InvariantError("density operator trace differs from 1");
  }
  const auto ev = eigenvalues(rho_);
  if (ev.front() < -1e-10) {
    throw InvariantError("density operator is not positive semidefinite");
  }
}

DensityOperator DensityOperator::pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityOperator(hermitian_part(v * v.adjoint(), psi.dim()));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t d) {
  return DensityOperator((1.0 / static_cast<double>(d)) * HermitianOperator::identity(d));
}

// ---------------------------------------------------------------------------
// SpectralDecomposition

Matrix SpectralDecomposition::basis() const {
  const auto d = static_cast<Eigen::Index>(eigenvectors.front().size());
  Matrix b(d, static_cast<Eigen::Index>(eigenvectors.size()));
  for (std::size_t k = 0; k < eigenvectors.size(); ++k) {
    b.col(static_cast<Eigen::Index>(k)) = eigenvectors[k].amplitudes();
  }
  return b;
}

Matrix SpectralDecomposition::reconstruct() const {
  const Matrix b = basis();
  Eigen::VectorXd lam(static_cast<Eigen::Index>(eigenvalues.size()));
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    lam(static_cast<Eigen::Index>(k)) = eigenvalues[k];
  }
  return b * lam.cast<Complex>().asDiagonal() * b.adjoint();
}

// ---------------------------------------------------------------------------
// Operations

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

HermitianOperator tensor_product(const HermitianOperator& x, const HermitianOperator& y) {
  const std::size_t d = x.size() * y.size();
  check_dim(d);
  return hermitian_part(kron(x.matrix(), y.matrix()), HilbertDim(d, {x.size(), y.size()}));
}

PureState tensor_product(const PureState& u, const PureState& w) {
  const std::size_t d = u.size() * w.size();
  check_dim(d);
  const Vector& a = u.amplitudes();
  const Vector& b = w.amplitudes();
  Vector out(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return PureState::normalized(out, HilbertDim(d, {u.size(), w.size()}));
}

Matrix commutator(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionError("commutator: dimension mismatch");
  }
  return x * y - y * x;
}

HermitianOperator commutator_observable(const HermitianOperator& x,
                                        const HermitianOperator& y) {
  if (x.size() != y.size()) throw DimensionError("commutator: dimension mismatch");
  return hermitian_part(Complex(0.0, 1.0) * commutator(x.matrix(), y.matrix()), x.dim());
}

std::vector<double> eigenvalues(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue solver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double spectral_norm(const HermitianOperator& x) {
  const auto ev = eigenvalues(x);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

SpectralDecomposition eig(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigen-decomposition did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  Matrix vecs = solver.eigenvectors();
  const Eigen::Index d = ev.size();
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(d - 1)));
  const double cluster_tol = kHermitianTol * (1.0 + scale);

  for (Eigen::Index start = 0; start < d;) {
    Eigen::Index stop = start + 1;
    while (stop < d && ev(stop) - ev(stop - 1) <= cluster_tol) ++stop;
    if (stop - start > 1) {
      vecs.middleCols(start, stop - start) =
          canonical_subspace_basis(vecs.middleCols(start, stop - start));
    }
    start = stop;
  }

  SpectralDecomposition out;
  out.eigenvalues.assign(ev.data(), ev.data() + d);
  out.eigenvectors.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    Vector v = phase_fix(vecs.col(k));
    v /= v.norm();
    out.eigenvectors.emplace_back(std::move(v), x.dim());
  }
  return out;
}

double expectation(const HermitianOperator& x, const PureState& psi) {
  if (x.size() != psi.size()) throw DimensionError("expectation: dimension mismatch");
  const Vector& v = psi.amplitudes();
  const Complex value = v.dot(x.matrix() * v);
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, x.matrix().norm())) {
    throw NumericalError("expectation has a non-negligible imaginary part");
  }
  return value.real();
}

double expectation(const HermitianOperator& x, const DensityOperator& rho) {
  if (x.size() != rho.size()) throw DimensionError("expectation: dimension mismatch");
  const Complex value = (rho.matrix() * x.matrix()).trace();
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, x.matrix().norm())) {
    throw NumericalError("expectation has a non-negligible imaginary part");
  }
  return value.real();
}

Complex inner(const PureState& a, const PureState& b) {
  if (a.size() != b.size()) throw DimensionError("inner product: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace chsh
