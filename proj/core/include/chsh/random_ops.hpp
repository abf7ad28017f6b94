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

// Random operators and states for scans and property tests. All draws go
// through CounterRng so a (seed, stream) pair fixes the output exactly.
#pragma once

#include <cstddef>
#include <vector>

#include "chsh/operator.hpp"
#include "chsh/rng.hpp"

namespace chsh {

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
// of R's diagonal absorbed into Q.
Matrix haar_unitary(std::size_t d, CounterRng& rng);

// U diag(signs) U^dagger with Haar U. `with_negative` eigenvalues equal -1,
// the rest +1.
HermitianOperator dichotomic_from_signs(const Matrix& u, std::size_t with_negative);

// Random dichotomic observable. With probability `scalar_probability` the
// result is +-I; otherwise the number of -1 eigenvalues is uniform on
// [1, d-1] (d >= 2).
HermitianOperator random_dichotomic(std::size_t d, CounterRng& rng,
                                    double scalar_probability = 0.1);

// (G + G^dagger)/2 for complex Ginibre G.
HermitianOperator random_hermitian(std::size_t d, CounterRng& rng);

// G G^dagger / d with G of shape d x rank (rank 0 means full).
HermitianOperator random_psd(std::size_t d, CounterRng& rng, std::size_t rank = 0);

PureState random_state(std::size_t d, CounterRng& rng);
DensityOperator random_density(std::size_t d, CounterRng& rng);

// `count` pairwise-commuting Hermitian operators sharing one Haar eigenbasis.
// Eigenvalues are drawn from `spectrum` (uniformly, with repetition).
std::vector<HermitianOperator> random_commuting_family(std::size_t d, std::size_t count,
                                                       const std::vector<double>& spectrum,
                                                       CounterRng& rng);

// Uniform integer in [0, n).
std::size_t uniform_index(std::size_t n, CounterRng& rng);

}  // namespace chsh
