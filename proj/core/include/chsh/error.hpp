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

#pragma once

#include <stdexcept>
#include <string>

namespace chsh {

// Base of every error raised by the library. Callers that only need to
// distinguish "bad input" from "bug" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value failed the invariant of the type it was being wrapped into
// (non-Hermitian matrix, unnormalized state, non-dichotomic observable...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its domain (non-commuting pair handed to
// a joint distribution, general scenario handed to a tensor-only formula...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Eigen-solver failure or an internal consistency check that should never
// trip on well-conditioned input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace chsh
