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

// JSON encoding of operators and states:
//   operator: {"dim": d, "factor_dims": [...], "re": [[...]], "im": [[...]]}
//   state:    {"dim": d, "factor_dims": [...], "re": [...], "im": [...]}
// "factor_dims" is omitted when the space carries no tensor structure.
// Doubles are written in shortest round-trip form, so decode(encode(x)) is
// bit-identical to x.
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "chsh/operator.hpp"

namespace chsh {

using Json = nlohmann::json;

Json to_json(const HilbertDim& dim);
Json matrix_to_json(const Matrix& m);
Json to_json(const HermitianOperator& op);
Json to_json(const PureState& psi);

Matrix matrix_from_json(const Json& j, std::size_t d);
HermitianOperator operator_from_json(const Json& j);
PureState state_from_json(const Json& j);

// Reads and parses a JSON document; ParseError on IO or syntax failure.
Json read_json_file(const std::string& path);

}  // namespace chsh
