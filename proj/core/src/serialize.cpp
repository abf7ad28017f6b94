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

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "chsh/error.hpp"

namespace chsh {
namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ParseError("unknown key \"" + it.key() + "\"");
  }
}

double number(const Json& j) {
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

std::size_t positive_int(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw ParseError("expected a positive integer");
  }
  return j.get<std::size_t>();
}

HilbertDim dim_from_json(const Json& j) {
  const std::size_t d = positive_int(require(j, "dim"));
  auto it = j.find("factor_dims");
  if (it == j.end() || it->is_null()) return HilbertDim(d);
  if (!it->is_array()) throw ParseError("factor_dims must be an array");
  std::vector<std::size_t> f;
  for (const auto& x : *it) f.push_back(positive_int(x));
  try {
    return HilbertDim(d, std::move(f));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json to_json(const HilbertDim& dim) {
  Json j{{"dim", dim.size()}};
  if (dim.has_factors()) j["factor_dims"] = *dim.factor_dims();
  return j;
}

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array();
    Json ii = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ii.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Json to_json(const HermitianOperator& op) {
  Json j = to_json(op.dim());
  Json m = matrix_to_json(op.matrix());
  j["re"] = std::move(m["re"]);
  j["im"] = std::move(m["im"]);
  return j;
}

Json to_json(const PureState& psi) {
  Json j = to_json(psi.dim());
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    re.push_back(psi.amplitudes()(i).real());
    im.push_back(psi.amplitudes()(i).imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Matrix matrix_from_json(const Json& j, std::size_t d) {
  const Json& re = require(j, "re");
  const Json& im = require(j, "im");
  if (!re.is_array() || !im.is_array() || re.size() != d || im.size() != d) {
    throw ParseError("operator re/im must be d x d arrays");
  }
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m(n, n);
  for (std::size_t r = 0; r < d; ++r) {
    if (!re[r].is_array() || !im[r].is_array() || re[r].size() != d || im[r].size() != d) {
      throw ParseError("operator re/im must be d x d arrays");
    }
    for (std::size_t c = 0; c < d; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(number(re[r][c]), number(im[r][c]));
    }
  }
  return m;
}

HermitianOperator operator_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("operator must be a JSON object");
  reject_unknown(j, {"dim", "factor_dims", "re", "im"});
  HilbertDim dim = dim_from_json(j);
  Matrix m = matrix_from_json(j, dim.size());
  return HermitianOperator(std::move(m), std::move(dim));
}

PureState state_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("state must be a JSON object");
  reject_unknown(j, {"dim", "factor_dims", "re", "im"});
  HilbertDim dim = dim_from_json(j);
  const Json& re = require(j, "re");
  const Json& im = require(j, "im");
  if (!re.is_array() || !im.is_array() || re.size() != dim.size() || im.size() != dim.size()) {
    throw ParseError("state re/im must be arrays of length dim");
  }
  Vector v(static_cast<Eigen::Index>(dim.size()));
  for (std::size_t i = 0; i < dim.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = Complex(number(re[i]), number(im[i]));
  }
  return PureState(std::move(v), std::move(dim));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace chsh
