// Copyright 2026 The setsize Authors
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

#ifndef SETSIZE_RNG_H_
#define SETSIZE_RNG_H_

#include <cstdint>
#include <random>

#include "setsize/errors.h"

namespace setsize {

// SplitMix64 finalizer. Used for seed derivation and for the hash that
// defines pseudo-random subsets; not a stream generator.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for `tag` under `parent`. Distinct tags give independent
// streams; the mapping is fixed so runs are reproducible across builds.
constexpr std::uint64_t DeriveSeed(std::uint64_t parent, std::uint64_t tag) {
  return Mix64(Mix64(parent) ^ Mix64(tag + 0x632be59bd9b4e019ULL));
}

// Stream tags under a trial seed.
enum class StreamTag : std::uint64_t {
  kOracle = 1,
  kEstimator = 2,
  kInstance = 3,
};

constexpr std::uint64_t DeriveSeed(std::uint64_t parent, StreamTag tag) {
  return DeriveSeed(parent, static_cast<std::uint64_t>(tag));
}

// Seeded random stream. Wraps std::mt19937_64 with portable range
// reduction (std::uniform_*_distribution output differs between standard
// libraries, which would break byte-level reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform integer in [lo, hi]. Lemire's multiply-shift with rejection.
  Index UniformIndex(Index lo, Index hi) {
    const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return lo + static_cast<Index>(NextU64());
    std::uint64_t x = NextU64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        x = NextU64();
        m = static_cast<unsigned __int128>(x) * range;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return lo + static_cast<Index>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return UniformDouble() < p; }

  // Independent child stream; consumes one draw from this stream.
  Rng Fork() { return Rng(DeriveSeed(NextU64(), 0x5eedULL)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace setsize

#endif  // SETSIZE_RNG_H_
