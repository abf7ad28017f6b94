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

#include <gtest/gtest.h>

#include "chsh/error.hpp"
#include "chsh/presets.hpp"
#include "chsh/random_ops.hpp"
#include "oracles.hpp"

namespace chsh {
namespace {

using testing::max_abs;

CovarianceOperator Cov(const HermitianOperator& b) { return CovarianceOperator(b); }

TEST(CovarianceOperator, RequiresPositiveSemidefinite) {
  EXPECT_THROW(Cov(HermitianOperator::diagonal({1.0, -0.1})), InvariantError);
  EXPECT_NO_THROW(Cov(HermitianOperator::zero(2)));
}

TEST(DensityFromCovariance, Examples) {
  EXPECT_LE(max_abs(density_from_covariance(Cov(HermitianOperator::identity(3))).matrix() -
                    Matrix::Identity(3, 3) / 3.0),
            1e-15);
  EXPECT_LE(max_abs(density_from_covariance(Cov(HermitianOperator::diagonal({2, 0}))).matrix() -
                    HermitianOperator::diagonal({1, 0}).matrix()),
            1e-15);
  EXPECT_THROW(density_from_covariance(Cov(HermitianOperator::zero(2))), PreconditionError);

  CounterRng rng(81);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + uniform_index(5, rng);
    const auto b = random_psd(d, rng);
    const auto vb = eigenvalues(b);
    const auto vr = eigenvalues(density_from_covariance(Cov(b)).op());
    double sum = 0.0;
    for (double v : vb) sum += v;
    for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(vr[k], vb[k] / sum, 1e-12);
  }
}

// Tr(BA) = Tr B * Tr(rho A), no sampling involved.
TEST(AverageIdentity, HoldsExactly) {
  CounterRng rng(82);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + uniform_index(8, rng);
    const auto b = random_psd(d, rng, 1 + uniform_index(d, rng));
    const auto a = random_hermitian(d, rng);
    const Complex direct = (b.matrix() * a.matrix()).trace();
    const double via_rho = b.trace() * expectation(a, density_from_covariance(Cov(b)));
    EXPECT_NEAR(direct.real(), via_rho, 1e-10 * (1.0 + std::abs(direct)));
    EXPECT_LE(std::abs(direct.imag()), 1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST(SampleField, ZeroCovarianceGivesZeroFields) {
  const auto e = sample_field(Cov(HermitianOperator::zero(3)), 1, 100);
  ASSERT_EQ(e.size(), 100u);
  for (const auto& phi : e.samples) EXPECT_EQ(phi.norm(), 0.0);
}

TEST(SampleField, EnergyMatchesTrace) {
  const std::size_t n = 100000;
  const auto e = sample_field(Cov(HermitianOperator::identity(2)), 2, n);
  const auto en = energy_average(e);
  EXPECT_NEAR(en.empirical, 2.0, 3.0 * std::sqrt(2.0 / n) * std::sqrt(2.0));
  EXPECT_EQ(en.theoretical, 2.0);
  EXPECT_LE(std::abs(en.z), 5.0);
}

TEST(SampleField, IsReproducibleAndWorkerIndependent) {
  CounterRng rng(83);
  const auto b = Cov(random_psd(4, rng));
  const auto e1 = sample_field(b, 99, 5000);
  const auto e2 = sample_field(b, 99, 5000);
  const auto e3 = sample_field(b, 99, 5000, 3);
  for (std::size_t k = 0; k < e1.size(); ++k) {
    EXPECT_TRUE(e1.samples[k] == e2.samples[k]);
    EXPECT_TRUE(e1.samples[k] == e3.samples[k]);
  }
  EXPECT_EQ(ensemble_summary(e1).dump(), ensemble_summary(e3).dump());
  EXPECT_FALSE(sample_field(b, 100, 10).samples[0] == e1.samples[0]);
}

TEST(SampleField, EmpiricalCovarianceConverges) {
  CounterRng rng(84);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 2 + uniform_index(4, rng);
    const auto b = random_psd(d, rng);
    const std::size_t n = 20000;
    const auto e = sample_field(Cov(b), 200 + static_cast<std::uint64_t>(trial), n);
    const double err = spectral_norm(Matrix(e.empirical_covariance() - b.matrix()));
    const double bound = 5.0 * spectral_norm(b) * std::sqrt(static_cast<double>(d * d) / n);
    EXPECT_LE(err, bound);
  }
}

TEST(QuadraticFormAverage, Examples) {
  const auto e = sample_field(Cov(HermitianOperator::identity(2)), 3, 100000);
  const auto id = quadratic_form_average(e, HermitianOperator::identity(2));
  EXPECT_EQ(id.theoretical, 2.0);
  EXPECT_LE(std::abs(id.z), 5.0);
  const auto z = quadratic_form_average(e, pauli::z());
  EXPECT_EQ(z.theoretical, 0.0);
  EXPECT_LE(std::abs(z.z), 5.0);
  EXPECT_THROW(quadratic_form_average(e, HermitianOperator::identity(3)), DimensionError);
  FieldEnsemble empty{Cov(HermitianOperator::identity(2)), 0, {}};
  EXPECT_THROW(quadratic_form_average(empty, pauli::z()), PreconditionError);
}

TEST(QuadraticFormAverage, IsCalibrated) {
  CounterRng rng(85);
  int within = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t d = 2 + uniform_index(3, rng);
    const auto b = random_psd(d, rng);
    const auto a = random_hermitian(d, rng);
    const auto e = sample_field(Cov(b), 300 + static_cast<std::uint64_t>(trial), 100000);
    within += std::abs(quadratic_form_average(e, a).z) <= 5.0 ? 1 : 0;
  }
  EXPECT_GE(within, 99);
}

TEST(AverageEquivalence, Examples) {
  CounterRng rng(86);
  const auto b = Cov(random_psd(3, rng));
  const auto a = random_hermitian(3, rng);
  const auto e = sample_field(b, 17, 100000);
  const auto ok = average_equivalence_check(b, a, e);
  EXPECT_TRUE(ok.passed);
  EXPECT_FALSE(ok.under_sampled);
  EXPECT_NEAR(ok.predicted, (b.matrix() * a.matrix()).trace().real(), 1e-10);

  const auto zero = average_equivalence_check(b, HermitianOperator::zero(3), e);
  EXPECT_TRUE(zero.passed);
  EXPECT_EQ(zero.empirical, 0.0);

  const auto tiny = average_equivalence_check(b, a, sample_field(b, 17, 10));
  EXPECT_TRUE(tiny.under_sampled);
}

TEST(AverageEquivalence, ShippedPresetsPass) {
  for (const auto& name : field_preset_names()) {
    const FieldPreset p = field_preset(name);
    const auto e = sample_field(p.covariance, 20260101, 100000);
    for (std::size_t k = 0; k < p.observables.size(); ++k) {
      EXPECT_TRUE(average_equivalence_check(p.covariance, p.observables[k], e).passed)
          << name << " / " << p.observable_names[k];
    }
    EXPECT_LE(std::abs(energy_average(e).z), 5.0) << name;
  }
}

// Single draws of a quadratic form are not confined to the observable's
// spectrum; only averages agree.
TEST(RangeMismatch, QuadraticFormValuesLeaveTheSpectrum) {
  const auto e = sample_field(Cov(HermitianOperator::identity(2)), 4, 10000);
  const Matrix z = pauli::z().matrix();
  std::size_t outside = 0;
  for (const auto& phi : e.samples) {
    const double f = (phi.adjoint() * z * phi)(0, 0).real();
    if (std::abs(std::abs(f) - 1.0) > 1e-6) ++outside;
  }
  EXPECT_GT(outside, e.size() / 2);
}

TEST(EnsembleSummary, DeclaresTruncation) {
  const auto e = sample_field(Cov(HermitianOperator::identity(2)), 5, 20);
  const Json j = ensemble_summary(e);
  EXPECT_EQ(j.at("truncation"), "mode-truncated");
  EXPECT_EQ(j.at("n"), 20);
  EXPECT_EQ(j.at("seed"), 5);
  const std::string csv = samples_csv(e);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 21);
}

}  // namespace
}  // namespace chsh
