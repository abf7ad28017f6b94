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

#include "chsh/scenario.hpp"

#include <sstream>
#include <utility>
#include <vector>

#include "chsh/error.hpp"
#include "chsh/random_ops.hpp"

namespace chsh {
namespace {

HermitianOperator lift_a(const HermitianOperator& a, std::size_t dim_b) {
  return tensor_product(a, HermitianOperator::identity(dim_b));
}

HermitianOperator lift_b(const HermitianOperator& b, std::size_t dim_a) {
  return tensor_product(HermitianOperator::identity(dim_a), b);
}

HermitianOperator conjugate(const Matrix& w, const HermitianOperator& x) {
  return HermitianOperator::symmetrized(w * x.matrix() * w.adjoint());
}

HermitianOperator direct_sum(const HermitianOperator& x, const HermitianOperator& y) {
  const Eigen::Index n = x.matrix().rows();
  const Eigen::Index m = y.matrix().rows();
  Matrix out = Matrix::Zero(n + m, n + m);
  out.topLeftCorner(n, n) = x.matrix();
  out.bottomRightCorner(m, m) = y.matrix();
  return HermitianOperator(std::move(out));
}

HermitianOperator random_signs_in_basis(const Matrix& u, CounterRng& rng) {
  const std::size_t d = static_cast<std::size_t>(u.rows());
  return dichotomic_from_signs(u, uniform_index(d + 1, rng));
}

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("scenario: missing key \"") + key + "\"");
  return *it;
}

}  // namespace

std::string to_string(BOrdering o) {
  return o == BOrdering::kOriginal ? "original" : "swapped";
}

DichotomicObservable::DichotomicObservable(HermitianOperator op) : op_(std::move(op)) {
  const Matrix& m = op_.matrix();
  const Eigen::Index n = m.rows();
  const Matrix residual = m * m - Matrix::Identity(n, n);
  const double r = spectral_norm(HermitianOperator::symmetrized(residual));
  if (r > kDichotomicTol) {
    std::ostringstream os;
    os << "observable is not dichotomic: ||X^2 - I|| = " << r;
    throw InvariantError(os.str());
  }
}

BellScenario::BellScenario(std::array<DichotomicObservable, 2> a,
                           std::array<DichotomicObservable, 2> b,
                           std::optional<LocalObservables> local)
    : a_(std::move(a)), b_(std::move(b)), local_(std::move(local)) {
  const std::size_t d = a_[0].size();
  if (a_[1].size() != d || b_[0].size() != d || b_[1].size() != d) {
    throw DimensionError("scenario observables have different dimensions");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double c = spectral_norm(commutator(a_[i].matrix(), b_[j].matrix()));
      if (c > kCompatibilityTol) {
        std::ostringstream os;
        os << "scenario violates cross-commutativity: ||[A" << i + 1 << ", B" << j + 1
           << "]|| = " << c;
        throw PreconditionError(os.str());
      }
    }
  }
}

BellScenario BellScenario::general(DichotomicObservable a1, DichotomicObservable a2,
                                   DichotomicObservable b1, DichotomicObservable b2) {
  auto strip = [](const DichotomicObservable& x) {
    return DichotomicObservable(x.op().with_dim(HilbertDim(x.size())));
  };
  return BellScenario({strip(a1), strip(a2)}, {strip(b1), strip(b2)}, std::nullopt);
}

BellScenario BellScenario::tensor(DichotomicObservable a1, DichotomicObservable a2,
                                  DichotomicObservable b1, DichotomicObservable b2) {
  const std::size_t da = a1.size();
  const std::size_t db = b1.size();
  if (a2.size() != da || b2.size() != db) {
    throw DimensionError("local observables of one party differ in dimension");
  }
  std::array<DichotomicObservable, 2> a{DichotomicObservable(lift_a(a1.op(), db)),
                                        DichotomicObservable(lift_a(a2.op(), db))};
  std::array<DichotomicObservable, 2> b{DichotomicObservable(lift_b(b1.op(), da)),
                                        DichotomicObservable(lift_b(b2.op(), da))};
  return BellScenario(std::move(a), std::move(b),
                      LocalObservables{std::move(a1), std::move(a2), std::move(b1), std::move(b2)});
}

std::array<std::size_t, 2> BellScenario::local_dims() const {
  const LocalObservables& l = local();
  return {l.a1.size(), l.b1.size()};
}

const LocalObservables& BellScenario::local() const {
  if (!local_) throw PreconditionError("scenario has no tensor structure");
  return *local_;
}

BellScenario BellScenario::swapped_b() const {
  std::optional<LocalObservables> l;
  if (local_) l = LocalObservables{local_->a1, local_->a2, local_->b2, local_->b1};
  return BellScenario(a_, {b_[1], b_[0]}, std::move(l));
}

BellScenario BellScenario::swapped_a() const {
  std::optional<LocalObservables> l;
  if (local_) l = LocalObservables{local_->a2, local_->a1, local_->b1, local_->b2};
  return BellScenario({a_[1], a_[0]}, b_, std::move(l));
}

Json BellScenario::to_json() const {
  Json j;
  j["A1"] = chsh::to_json(a_[0].op());
  j["A2"] = chsh::to_json(a_[1].op());
  j["B1"] = chsh::to_json(b_[0].op());
  j["B2"] = chsh::to_json(b_[1].op());
  if (local_) {
    j["structure"] = Json{{"tensor", {local_->a1.size(), local_->b1.size()}}};
    j["local"] = Json{{"A1", chsh::to_json(local_->a1.op())},
                      {"A2", chsh::to_json(local_->a2.op())},
                      {"B1", chsh::to_json(local_->b1.op())},
                      {"B2", chsh::to_json(local_->b2.op())}};
  } else {
    j["structure"] = "general";
  }
  return j;
}

BellScenario BellScenario::from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "structure" && k != "local" && k != "A1" && k != "A2" && k != "B1" && k != "B2") {
      throw ParseError("scenario: unknown key \"" + k + "\"");
    }
  }
  auto obs = [](const Json& src, const char* key) {
    return DichotomicObservable(operator_from_json(require(src, key)));
  };
  const Json& st = require(j, "structure");
  if (st.is_string() && st.get<std::string>() == "general") {
    if (j.contains("local")) throw ParseError("scenario: \"local\" given for general structure");
    return general(obs(j, "A1"), obs(j, "A2"), obs(j, "B1"), obs(j, "B2"));
  }
  if (!st.is_object() || !st.contains("tensor") || st.size() != 1) {
    throw ParseError("scenario: structure must be \"general\" or {\"tensor\": [dA, dB]}");
  }
  const Json& dims = st["tensor"];
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() ||
      !dims[1].is_number_integer()) {
    throw ParseError("scenario: tensor structure needs [dA, dB]");
  }
  const Json& loc = require(j, "local");
  if (!loc.is_object()) throw ParseError("scenario: \"local\" must be an object");
  BellScenario s = tensor(obs(loc, "A1"), obs(loc, "A2"), obs(loc, "B1"), obs(loc, "B2"));
  const auto ld = s.local_dims();
  if (dims[0].get<long long>() != static_cast<long long>(ld[0]) ||
      dims[1].get<long long>() != static_cast<long long>(ld[1])) {
    throw ParseError("scenario: tensor dims disagree with local operators");
  }
  // Optional global operators must agree with the lifted locals.
  const char* names[] = {"A1", "A2", "B1", "B2"};
  for (int k = 0; k < 4; ++k) {
    if (!j.contains(names[k])) continue;
    const HermitianOperator g = operator_from_json(j[names[k]]);
    const Matrix& lifted = k < 2 ? s.a(static_cast<std::size_t>(k)).matrix()
                                 : s.b(static_cast<std::size_t>(k - 2)).matrix();
    if (g.size() != s.dim() || (g.matrix() - lifted).cwiseAbs().maxCoeff() > 1e-12) {
      throw ParseError(std::string("scenario: global ") + names[k] +
                       " disagrees with its lifted local operator");
    }
  }
  return s;
}

BellScenario random_tensor_scenario(std::size_t dim_a, std::size_t dim_b, CounterRng& rng) {
  DichotomicObservable a1(random_dichotomic(dim_a, rng));
  DichotomicObservable a2(random_dichotomic(dim_a, rng));
  DichotomicObservable b1(random_dichotomic(dim_b, rng));
  DichotomicObservable b2(random_dichotomic(dim_b, rng));
  return BellScenario::tensor(std::move(a1), std::move(a2), std::move(b1), std::move(b2));
}

BellScenario random_general_scenario(std::size_t max_dim, CounterRng& rng) {
  static const std::array<std::array<std::size_t, 2>, 4> kBlocks{
      {{2, 2}, {2, 3}, {3, 2}, {2, 4}}};
  std::vector<BellScenario> blocks;
  std::size_t total = 0;
  const std::size_t wanted = 1 + uniform_index(2, rng);
  for (std::size_t k = 0; k < wanted; ++k) {
    const auto& dims = kBlocks[uniform_index(kBlocks.size(), rng)];
    if (total + dims[0] * dims[1] > max_dim) break;
    blocks.push_back(random_tensor_scenario(dims[0], dims[1], rng));
    total += dims[0] * dims[1];
  }
  if (blocks.empty()) throw PreconditionError("random_general_scenario: max_dim too small");

  std::array<HermitianOperator, 4> ops{blocks[0].a(0).op(), blocks[0].a(1).op(),
                                       blocks[0].b(0).op(), blocks[0].b(1).op()};
  for (std::size_t k = 1; k < blocks.size(); ++k) {
    ops[0] = direct_sum(ops[0], blocks[k].a(0).op());
    ops[1] = direct_sum(ops[1], blocks[k].a(1).op());
    ops[2] = direct_sum(ops[2], blocks[k].b(0).op());
    ops[3] = direct_sum(ops[3], blocks[k].b(1).op());
  }
  const Matrix w = haar_unitary(total, rng);
  return BellScenario::general(
      DichotomicObservable(conjugate(w, ops[0])), DichotomicObservable(conjugate(w, ops[1])),
      DichotomicObservable(conjugate(w, ops[2])), DichotomicObservable(conjugate(w, ops[3])));
}

BellScenario random_commuting_pair_scenario(bool tensor, bool commuting_a, CounterRng& rng) {
  const std::size_t da = 2 + uniform_index(2, rng);
  const std::size_t db = 2 + uniform_index(2, rng);
  auto commuting_pair = [&rng](std::size_t d) {
    const Matrix u = haar_unitary(d, rng);
    return std::pair{DichotomicObservable(random_signs_in_basis(u, rng)),
                     DichotomicObservable(random_signs_in_basis(u, rng))};
  };
  std::optional<BellScenario> s;
  if (commuting_a) {
    auto [a1, a2] = commuting_pair(da);
    s = BellScenario::tensor(std::move(a1), std::move(a2),
                             DichotomicObservable(random_dichotomic(db, rng, 0.0)),
                             DichotomicObservable(random_dichotomic(db, rng, 0.0)));
  } else {
    auto [b1, b2] = commuting_pair(db);
    s = BellScenario::tensor(DichotomicObservable(random_dichotomic(da, rng, 0.0)),
                             DichotomicObservable(random_dichotomic(da, rng, 0.0)),
                             std::move(b1), std::move(b2));
  }
  if (tensor) return *s;
  const Matrix w = haar_unitary(s->dim(), rng);
  return BellScenario::general(DichotomicObservable(conjugate(w, s->a(0).op())),
                               DichotomicObservable(conjugate(w, s->a(1).op())),
                               DichotomicObservable(conjugate(w, s->b(0).op())),
                               DichotomicObservable(conjugate(w, s->b(1).op())));
}

}  // namespace chsh
