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

#include <gtest/gtest.h>

#include "chsh/engine.hpp"
#include "chsh/error.hpp"
#include "chsh/presets.hpp"
#include "chsh/random_ops.hpp"
#include "oracles.hpp"

namespace chsh {
namespace {

const double kSqrt2 = std::sqrt(2.0);

double residual(const HermitianOperator& c, const PureState& psi, double eigenvalue) {
  return (c.matrix() * psi.amplitudes() - eigenvalue * psi.amplitudes()).norm();
}

// C = U diag(s, -s, rest) U^dagger; C^2 has the doubly degenerate
// eigenvalue s^2, so a generic vector in that eigenspace is not a C
// eigenvector.
struct PairedSpectrum {
  HermitianOperator c;
  PureState u;
  double lambda;
};

PairedSpectrum paired_spectrum(std::size_t d, CounterRng& rng) {
  const Matrix w = haar_unitary(d, rng);
  const double s = 0.5 + rng.uniform();
  std::vector<double> diag{s, -s};
  for (std::size_t k = 2; k < d; ++k) diag.push_back(3.0 + rng.uniform());  // away from s^2
  const Matrix c = w * HermitianOperator::diagonal(diag).matrix() * w.adjoint();
  const Complex alpha = rng.complex_normal();
  const Complex beta = rng.complex_normal();
  const Vector u = alpha * w.col(0) + beta * w.col(1);
  return {HermitianOperator::symmetrized(c), PureState::normalized(u), s * s};
}

TEST(CEntangle, Examples) {
  const auto p = c_entangle(pauli::x(), PureState::basis(2, 0));
  EXPECT_NEAR(p.lambda, 1.0, 1e-15);
  EXPECT_LE((p.v.amplitudes() - PureState::basis(2, 1).amplitudes()).norm(), 1e-15);
  Vector plus(2), minus(2);
  plus << 1.0 / kSqrt2, 1.0 / kSqrt2;
  minus << 1.0 / kSqrt2, -1.0 / kSqrt2;
  EXPECT_LE((p.psi_plus.amplitudes() - plus).norm(), 1e-15);
  EXPECT_LE((p.psi_minus.amplitudes() - minus).norm(), 1e-15);
  EXPECT_LE(residual(pauli::x(), p.psi_plus, 1.0), 1e-15);
  EXPECT_LE(residual(pauli::x(), p.psi_minus, -1.0), 1e-15);

  EXPECT_THROW(c_entangle(pauli::z(), PureState::basis(2, 0)), PreconditionError);
  EXPECT_THROW(c_entangle(HermitianOperator::zero(2), PureState::basis(2, 0)), PreconditionError);
}

TEST(CEntangle, BellOperatorFromSeparableSquareEigenstate) {
  const BellScenario s = scenario_preset("optimal-qubit");
  const auto w = separable_square_witness(s);
  const HermitianOperator b = bell_operator(s.ordered(w.ordering));
  const auto p = c_entangle(b, w.psi_sep);
  EXPECT_NEAR(p.lambda, 2.0, 1e-12);
  EXPECT_NEAR(expectation(b, p.psi_plus), kSqrt2, 1e-12);
  EXPECT_NEAR(expectation(b, p.psi_minus), -kSqrt2, 1e-12);
  EXPECT_NEAR(chsh_correlation(s.ordered(w.ordering), p.psi_plus), kSqrt2, 1e-12);
}

TEST(CEntangle, PairIsOrthogonalAndSatisfiesEigenRelations) {
  CounterRng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ps = paired_spectrum(2 + uniform_index(7, rng), rng);
    const auto p = c_entangle(ps.c, ps.u);
    const double r = std::sqrt(p.lambda);
    EXPECT_NEAR(p.lambda, ps.lambda, 1e-9);
    EXPECT_LE(std::abs(inner(p.psi_plus, p.psi_minus)), 1e-9);
    // u and v need not be orthogonal: <u|v> = <u|C|u> / sqrt(lambda).
    EXPECT_NEAR(std::abs(inner(p.u, p.v) - expectation(ps.c, p.u) / r), 0.0, 1e-9);
    EXPECT_LE(residual(ps.c, p.psi_plus, r), 1e-9);
    EXPECT_LE(residual(ps.c, p.psi_minus, -r), 1e-9);
    EXPECT_LE((ps.c.matrix() * p.u.amplitudes() - r * p.v.amplitudes()).norm(), 1e-9);
    EXPECT_LE((ps.c.matrix() * p.v.amplitudes() - r * p.u.amplitudes()).norm(), 1e-9);
  }
}

TEST(MaxStateFromSquare, Examples) {
  const auto mx = max_state_from_square(pauli::x());
  EXPECT_NEAR(mx.value, 1.0, 1e-15);
  EXPECT_NEAR(std::abs(inner(mx.phi, PureState::normalized(Vector::Ones(2)))), 1.0, 1e-15);

  const BellScenario s = scenario_preset("optimal-qubit");
  EXPECT_NEAR(max_state_from_square(bell_operator(s)).value, quantum_bound(s), 1e-12);

  const HermitianOperator minus_z = -pauli::z();
  const auto deg = max_state_from_square(minus_z, PureState::basis(2, 0));
  EXPECT_EQ(deg.sign, -1);
  EXPECT_NEAR(deg.expectation, -1.0, 1e-15);
  EXPECT_NEAR(deg.sign * deg.expectation, 1.0, 1e-15);
  EXPECT_NEAR(deg.value, 1.0, 1e-15);
  EXPECT_THROW(max_state_from_square(HermitianOperator::zero(3)), PreconditionError);
}

TEST(MaxStateFromSquare, ValueIsTheSpectralNorm) {
  CounterRng rng(72);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 2 + uniform_index(7, rng);
    const auto c = random_hermitian(d, rng);
    const auto m = max_state_from_square(c);
    const double norm = testing::hermitian_norm_generic(c.matrix());
    EXPECT_NEAR(m.value, norm, 1e-9 * (1.0 + norm));
    EXPECT_NEAR(std::abs(expectation(c, m.phi)), norm, 1e-9 * (1.0 + norm));
    EXPECT_NEAR(m.phi.amplitudes().norm(), 1.0, 1e-12);
  }
}

TEST(MaxStateFromSquare, MatchesQuantumBoundOnViolatingScenarios) {
  CounterRng rng(73);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const BellScenario s =
        random_tensor_scenario(2 + uniform_index(2, rng), 2 + uniform_index(2, rng), rng);
    const auto t = theorem1_check(s);
    if (!t.violation_exists) continue;
    ++checked;
    const double bound = quantum_bound(s);
    EXPECT_NEAR(max_state_from_square(bell_operator(s.ordered(t.ordering))).value, bound, 1e-9);
  }
  EXPECT_GT(checked, 50);
}

TEST(SquareVsLinear, Examples) {
  const auto z = square_vs_linear_max_states(pauli::z());
  EXPECT_TRUE(z.same);

  const BellScenario s = scenario_preset("optimal-qubit");
  const auto b = square_vs_linear_max_states(bell_operator(s));
  EXPECT_FALSE(b.same);
  EXPECT_EQ(b.top_multiplicity, 2u);
  ASSERT_EQ(b.decomposition.size(), 2u);
  EXPECT_GT(std::abs(b.decomposition[0]), 1e-6);
  EXPECT_GT(std::abs(b.decomposition[1]), 1e-6);
  // Two-qubit concurrence-like test: det of the amplitude matrix.
  auto det = [](const PureState& psi) {
    const Vector& v = psi.amplitudes();
    return std::abs(v(0) * v(3) - v(1) * v(2));
  };
  EXPECT_LE(det(b.psi_sq), 1e-9);
  EXPECT_NEAR(det(b.phi_lin), 0.5, 1e-9);
  // phi_lin lies entirely in the top eigenspace of B^2.
  EXPECT_NEAR(std::norm(b.decomposition[0]) + std::norm(b.decomposition[1]), 1.0, 1e-12);
}

TEST(SquareVsLinear, NondegenerateSquareSharesTheMaxState) {
  CounterRng rng(74);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + uniform_index(7, rng);
    const auto c = random_hermitian(d, rng);
    const auto ev = eigenvalues(HermitianOperator::symmetrized(c.matrix() * c.matrix()));
    if (ev[d - 1] - ev[d - 2] < 1e-3) continue;
    const auto r = square_vs_linear_max_states(c);
    EXPECT_EQ(r.top_multiplicity, 1u);
    EXPECT_TRUE(r.same);
  }
}

}  // namespace
}  // namespace chsh
