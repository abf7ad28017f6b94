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

// Counter-based random numbers. A Philox4x32-10 block cipher maps
// (seed, stream, block index) to 128 random bits, so any draw can be
// computed directly from its coordinates. Parallel workers that agree on the
// coordinates of each draw reproduce the serial result bit for bit.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace chsh {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Ten-round Philox4x32 (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

std::uint64_t splitmix64(std::uint64_t x);

// [0, 1) with 53 random bits.
inline double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  // Independent generator for a child stream. Same inputs, same child.
  CounterRng split(std::uint64_t child) const {
    return CounterRng(seed_, splitmix64(stream_ ^ splitmix64(child + 0x632be59bd9b4e019ull)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // The two 64-bit words of block `index`; does not touch the sequential
  // position.
  std::array<std::uint64_t, 2> block(std::uint64_t index) const;
  double uniform_at(std::uint64_t index) const { return to_unit_interval(block(index)[0]); }

  // Sequential interface (UniformRandomBitGenerator).
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  double uniform() { return to_unit_interval((*this)()); }
  // Box-Muller; consumes two words per call.
  double normal();
  // Circularly-symmetric complex normal with E|z|^2 = 1.
  std::complex<double> complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t next_block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

}  // namespace chsh
