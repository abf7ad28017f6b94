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

#include "chsh/serialize.hpp"

#include <cstring>

#include <gtest/gtest.h>

#include "chsh/error.hpp"
#include "chsh/presets.hpp"
#include "chsh/random_ops.hpp"
#include "chsh/scenario.hpp"

namespace chsh {
namespace {

bool bit_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::memcmp(&a.data()[i], &b.data()[i], sizeof(Complex)) != 0) return false;
  }
  return true;
}

TEST(Serialize, OperatorRoundTripIsBitExact) {
  CounterRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t da = 1 + uniform_index(4, rng);
    const std::size_t db = 1 + uniform_index(4, rng);
    const auto x = tensor_product(random_hermitian(da, rng), random_hermitian(db, rng));
    const std::string text = to_json(x).dump();
    const auto back = operator_from_json(Json::parse(text));
    EXPECT_TRUE(bit_equal(x.matrix(), back.matrix()));
    ASSERT_TRUE(back.dim().has_factors());
    EXPECT_EQ(*back.dim().factor_dims(), (std::vector<std::size_t>{da, db}));
  }
}

TEST(Serialize, StateRoundTripIsBitExact) {
  CounterRng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = random_state(1 + uniform_index(16, rng), rng);
    const auto back = state_from_json(Json::parse(to_json(psi).dump()));
    EXPECT_TRUE(bit_equal(psi.amplitudes(), back.amplitudes()));
  }
}

TEST(Serialize, OperatorSchemaShape) {
  const Json j = to_json(HermitianOperator::diagonal({1.0, -2.0}));
  EXPECT_EQ(j.at("dim"), 2);
  EXPECT_FALSE(j.contains("factor_dims"));
  EXPECT_EQ(j.at("re")[1][1], -2.0);
  EXPECT_EQ(j.at("im")[0][1], 0.0);
}

TEST(Serialize, RejectsMalformedInput) {
  Json j = to_json(HermitianOperator::identity(2));
  Json extra = j;
  extra["colour"] = "red";
  EXPECT_THROW(operator_from_json(extra), ParseError);
  Json ragged = j;
  ragged["re"][0] = Json::array({1.0});
  EXPECT_THROW(operator_from_json(ragged), ParseError);
  Json wrong_dim = j;
  wrong_dim["dim"] = 3;
  EXPECT_THROW(operator_from_json(wrong_dim), ParseError);
  Json not_hermitian = j;
  not_hermitian["re"][0][1] = 0.5;
  EXPECT_THROW(operator_from_json(not_hermitian), Error);
  EXPECT_THROW(state_from_json(Json::parse(R"({"dim":2,"re":[1,1],"im":[0,0]})")), Error);
}

TEST(Serialize, ScenarioRoundTrip) {
  for (const auto& name : scenario_preset_names()) {
    const BellScenario s = scenario_preset(name);
    const BellScenario back = BellScenario::from_json(Json::parse(s.to_json().dump()));
    EXPECT_EQ(back.is_tensor(), s.is_tensor()) << name;
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_TRUE(bit_equal(back.a(i).matrix(), s.a(i).matrix())) << name;
      EXPECT_TRUE(bit_equal(back.b(i).matrix(), s.b(i).matrix())) << name;
    }
  }
}

TEST(Serialize, ScenarioRoundTripRandomTensor) {
  CounterRng rng(5);
  const BellScenario s = random_tensor_scenario(3, 2, rng);
  const Json j = s.to_json();
  EXPECT_EQ(j.at("structure").at("tensor"), Json::array({3, 2}));
  const BellScenario back = BellScenario::from_json(Json::parse(j.dump()));
  EXPECT_TRUE(bit_equal(back.local().a1.matrix(), s.local().a1.matrix()));
  EXPECT_TRUE(bit_equal(back.b(1).matrix(), s.b(1).matrix()));
}

}  // namespace
}  // namespace chsh
