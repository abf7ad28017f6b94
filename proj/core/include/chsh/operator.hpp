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

// Finite-dimensional complex Hilbert-space linear algebra: Hermitian
// operators, pure and mixed states, tensor products, commutators and
// spectral decompositions. Everything else in chshlab is built on these.
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace chsh {

using Complex = std::complex<double>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

// Hard cap on the dimension of any Hilbert space handled by the library.
inline constexpr std::size_t kMaxDim = 64;

// Relative tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-10;
// Absolute tolerance on a state's Euclidean norm.
inline constexpr double kNormTol = 1e-12;

// Dimension of a Hilbert space, optionally with a tensor-factor structure.
class HilbertDim {
 public:
  explicit HilbertDim(std::size_t d);
  HilbertDim(std::size_t d, std::vector<std::size_t> factor_dims);

  std::size_t size() const { return d_; }
  const std::optional<std::vector<std::size_t>>& factor_dims() const {
    return factors_;
  }
  bool has_factors() const { return factors_.has_value(); }

  friend bool operator==(const HilbertDim&, const HilbertDim&) = default;

 private:
  std::size_t d_;
  std::optional<std::vector<std::size_t>> factors_;
};

// Dense self-adjoint operator. The stored matrix is Hermitian to within
// kHermitianTol relative to its spectral norm; matrices are never
// symmetrized unless symmetrized() is called.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);
  HermitianOperator(Matrix m, HilbertDim dim);

  // Takes (m + m^dagger)/2. The caller asserts that m is Hermitian up to
  // rounding; no tolerance check is applied to the discarded part.
  static HermitianOperator symmetrized(const Matrix& m);
  static HermitianOperator symmetrized(const Matrix& m, HilbertDim dim);

  static HermitianOperator identity(std::size_t d);
  static HermitianOperator zero(std::size_t d);
  static HermitianOperator diagonal(const std::vector<double>& entries);

  const Matrix& matrix() const { return m_; }
  const HilbertDim& dim() const { return dim_; }
  std::size_t size() const { return dim_.size(); }

  // Same operator with a different (compatible) dimension tag.
  HermitianOperator with_dim(HilbertDim dim) const;

  double trace() const;

  friend HermitianOperator operator+(const HermitianOperator& a,
                                     const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a,
                                     const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);
  HermitianOperator operator-() const;

 private:
  struct Trusted {};
  HermitianOperator(Matrix m, HilbertDim dim, Trusted);

  friend HermitianOperator hermitian_part(const Matrix& m, HilbertDim dim);

  Matrix m_;
  HilbertDim dim_;
};

// Wraps an analytically Hermitian product (commutator, Kronecker product,
// sum of outer products...) and removes the rounding-level anti-Hermitian
// residue so the result is exactly self-adjoint.
HermitianOperator hermitian_part(const Matrix& m, HilbertDim dim);

// Unit vector in C^d.
class PureState {
 public:
  explicit PureState(Vector amplitudes);
  PureState(Vector amplitudes, HilbertDim dim);

  // Rescales a nonzero vector to unit norm.
  static PureState normalized(const Vector& v);
  static PureState normalized(const Vector& v, HilbertDim dim);
  static PureState basis(std::size_t d, std::size_t k);

  const Vector& amplitudes() const { return psi_; }
  const HilbertDim& dim() const { return dim_; }
  std::size_t size() const { return dim_.size(); }

  // Multiplies by a global phase so the largest-magnitude amplitude is real
  // and positive (first index wins among ties).
  PureState phase_fixed() const;

 private:
  Vector psi_;
  HilbertDim dim_;
};

// Positive semidefinite, unit-trace operator.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator rho);

  static DensityOperator pure(const PureState& psi);
  static DensityOperator maximally_mixed(std::size_t d);

  const HermitianOperator& op() const { return rho_; }
  const Matrix& matrix() const { return rho_.matrix(); }
  std::size_t size() const { return rho_.size(); }

 private:
  HermitianOperator rho_;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;     // ascending
  std::vector<PureState> eigenvectors; // index-aligned

  std::size_t size() const { return eigenvalues.size(); }
  // Columns are the eigenvectors.
  Matrix basis() const;
  Matrix reconstruct() const;
};

HermitianOperator tensor_product(const HermitianOperator& x,
                                 const HermitianOperator& y);
PureState tensor_product(const PureState& u, const PureState& w);
Matrix kron(const Matrix& x, const Matrix& y);

// M = i[X, Y].
HermitianOperator commutator_observable(const HermitianOperator& x,
                                        const HermitianOperator& y);
// Plain [X, Y] for arbitrary square matrices.
Matrix commutator(const Matrix& x, const Matrix& y);

// max |eigenvalue|.
double spectral_norm(const HermitianOperator& x);
// Largest singular value of an arbitrary matrix.
double spectral_norm(const Matrix& m);

std::vector<double> eigenvalues(const HermitianOperator& x);

// Ascending eigenvalues with orthonormal eigenvectors. Degenerate
// eigenspaces get a canonical basis (greedy projection of the standard basis
// vectors), and every vector is phase-fixed, so identical input bits give
// identical output bits.
SpectralDecomposition eig(const HermitianOperator& x);

// <psi|X|psi>. Throws NumericalError when the imaginary residue exceeds
// 1e-10 relative to the operator scale.
double expectation(const HermitianOperator& x, const PureState& psi);
// Tr(rho X).
double expectation(const HermitianOperator& x, const DensityOperator& rho);

Complex inner(const PureState& a, const PureState& b);

}  // namespace chsh
