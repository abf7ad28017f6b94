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

#include "chsh/presets.hpp"

#include <cmath>
#include <numbers>

#include "chsh/error.hpp"
#include "chsh/random_ops.hpp"
#include "chsh/rng.hpp"

namespace chsh {
namespace pauli {

HermitianOperator i2() { return HermitianOperator::identity(2); }

HermitianOperator x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return HermitianOperator(m);
}

HermitianOperator y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return HermitianOperator(m);
}

HermitianOperator z() { return HermitianOperator::diagonal({1.0, -1.0}); }

}  // namespace pauli

namespace {

DichotomicObservable dich(const HermitianOperator& x) { return DichotomicObservable(x); }

HermitianOperator diagonal_b(double sign) {
  return (1.0 / std::numbers::sqrt2) * (pauli::z() + sign * pauli::x());
}

HermitianOperator block(const HermitianOperator& top, const HermitianOperator& bottom) {
  Matrix m = Matrix::Zero(4, 4);
  m.topLeftCorner(2, 2) = top.matrix();
  m.bottomRightCorner(2, 2) = bottom.matrix();
  return HermitianOperator(m);
}

HermitianOperator kron3(const HermitianOperator& a, const HermitianOperator& b,
                        const HermitianOperator& c) {
  return tensor_product(tensor_product(a, b), c).with_dim(HilbertDim(8, {2, 2, 2}));
}

}  // namespace

BellScenario scenario_preset(const std::string& name) {
  using namespace pauli;
  if (name == "optimal-qubit") {
    return BellScenario::tensor(dich(z()), dich(x()), dich(diagonal_b(+1)), dich(diagonal_b(-1)));
  }
  if (name == "commuting-A") {
    return BellScenario::tensor(dich(z()), dich(z()), dich(diagonal_b(+1)), dich(diagonal_b(-1)));
  }
  if (name == "commuting-B") {
    return BellScenario::tensor(dich(z()), dich(x()), dich(z()), dich(z()));
  }
  if (name == "zero-product-MAB") {
    return BellScenario::general(dich(block(x(), i2())), dich(block(z(), i2())),
                                 dich(block(i2(), x())), dich(block(i2(), z())));
  }
  throw PreconditionError("unknown scenario preset \"" + name + "\"");
}

std::vector<std::string> scenario_preset_names() {
  return {"optimal-qubit", "commuting-A", "commuting-B", "zero-product-MAB"};
}

PureState state_preset(const std::string& name) {
  const double r = (1.0 / std::numbers::sqrt2);
  Vector v;
  if (name == "singlet") {
    v = Vector::Zero(4);
    v(1) = r;
    v(2) = -r;
    return PureState::normalized(v, HilbertDim(4, {2, 2}));
  }
  if (name == "phi-plus") {
    v = Vector::Zero(4);
    v(0) = r;
    v(3) = r;
    return PureState::normalized(v, HilbertDim(4, {2, 2}));
  }
  if (name == "product-00") {
    v = Vector::Zero(4);
    v(0) = 1.0;
    return PureState(v, HilbertDim(4, {2, 2}));
  }
  if (name == "ghz-3") {
    v = Vector::Zero(8);
    v(0) = r;
    v(7) = r;
    return PureState::normalized(v, HilbertDim(8, {2, 2, 2}));
  }
  throw PreconditionError("unknown state preset \"" + name + "\"");
}

FunctionalPreset functional_preset(const std::string& name) {
  if (name != "mermin-3") throw PreconditionError("unknown functional preset \"" + name + "\"");
  using namespace pauli;
  const HermitianOperator id = i2();
  std::vector<std::vector<ProjectorFamily>> groups(3);
  for (int k = 0; k < 3; ++k) {
    for (const HermitianOperator& local : {x(), y()}) {
      const HermitianOperator op = k == 0   ? kron3(local, id, id)
                                   : k == 1 ? kron3(id, local, id)
                                            : kron3(id, id, local);
      groups[static_cast<std::size_t>(k)].push_back(projectors(op));
    }
  }
  return FunctionalPreset{BellFunctional::mermin3(), std::move(groups), state_preset("ghz-3")};
}

FieldPreset field_preset(const std::string& name) {
  using namespace pauli;
  if (name == "identity-2") {
    return FieldPreset{CovarianceOperator(i2()), {"I", "X", "Y", "Z"}, {i2(), x(), y(), z()}};
  }
  if (name == "thermal-qubit") {
    return FieldPreset{CovarianceOperator(HermitianOperator::diagonal({0.7, 0.3})),
                       {"I", "X", "Y", "Z"},
                       {i2(), x(), y(), z()}};
  }
  if (name == "random-psd-4") {
    CounterRng rng(20260101, 4);
    CovarianceOperator b(random_psd(4, rng));
    std::vector<HermitianOperator> obs{HermitianOperator::identity(4), random_hermitian(4, rng),
                                       random_hermitian(4, rng)};
    return FieldPreset{std::move(b), {"I", "H1", "H2"}, std::move(obs)};
  }
  if (name == "singlet-field") {
    // Energy-2 field whose normalized covariance is the singlet projector.
    const PureState s = state_preset("singlet");
    const Vector& v = s.amplitudes();
    CovarianceOperator b(hermitian_part(2.0 * v * v.adjoint(), s.dim()));
    const BellScenario sc = scenario_preset("optimal-qubit");
    std::vector<std::string> names;
    std::vector<HermitianOperator> obs;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        names.push_back("A" + std::to_string(i + 1) + "B" + std::to_string(j + 1));
        obs.push_back(hermitian_part(sc.a(i).matrix() * sc.b(j).matrix(), s.dim()));
      }
    }
    return FieldPreset{std::move(b), std::move(names), std::move(obs)};
  }
  throw PreconditionError("unknown field preset \"" + name + "\"");
}

std::vector<std::string> field_preset_names() {
  return {"identity-2", "thermal-qubit", "random-psd-4", "singlet-field"};
}

}  // namespace chsh
