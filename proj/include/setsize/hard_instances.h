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

// Pairs of hidden sets of different sizes that a small number of oracle
// calls cannot tell apart, plus the bit-string search problem behind the
// adaptive interval-query bound.

#ifndef SETSIZE_HARD_INSTANCES_H_
#define SETSIZE_HARD_INSTANCES_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "setsize/domain.h"
#include "setsize/rng.h"

namespace setsize {

struct InstancePair {
  std::string kind;
  HiddenSet s1;  // the smaller set
  HiddenSet s2;
  // Hidden construction indices, e.g. "j_star", "w_tilde", "m".
  std::map<std::string, Index> params;
  // ℓ(1..w̃) for the adaptive interval construction; empty otherwise.
  std::vector<Index> positions;
};

// k distinct elements of [1, n], uniformly, in increasing order.
std::vector<Index> UniformSubset(Index n, Index k, Rng& rng);

// Consecutive blocks I_k = [(k−1)w̃+1, k·w̃]; S1 = I_{j*},
// S2 = I_{j*} ∪ I_{j*+1}, j* uniform in [1, ⌊n/w̃⌋ − 1].
InstancePair GenIntervalQueryPair(Index n, Index w_tilde, Rng& rng);

// w̃ intervals of ⌊n/w̃⌋ elements (the last one padded), each cut into
// m = ⌈n/w̃²⌉ subintervals (the last one padded). Both sets hold the first
// element of every interval and the endpoints of subinterval ℓ(j) of
// interval j; S2 also holds all of subinterval ℓ(j*) of interval j*.
InstancePair GenIntervalAdaptivePair(Index n, Index w_tilde, Rng& rng);

// S2 = I_{j*} for j* uniform in [1, ⌊n/w̃⌋]; S1 = ⌊w̃/2⌋ random elements
// of S2.
InstancePair GenIntervalSamplePair(Index n, Index w_tilde, Rng& rng);

// n a power of two; i uniform in {0, …, log₂ n − 1}; uniform sets of sizes
// 2^i and 2^{i+1}.
InstancePair GenUnrestrictedPair(Index n, Rng& rng);

// Uniform sets of sizes ⌊w̃/4⌋ and 4w̃; requires 4 ≤ w̃ ≤ n/4.
InstancePair GenCollisionPair(Index n, Index w_tilde, Rng& rng);

// b bit strings of length m, string j holding a single 1 at position ℓ(j).
struct MseInstance {
  Index b = 0;
  Index m = 0;
  std::vector<Index> positions;  // ℓ(1..b), 1-based
};

MseInstance GenMseInstance(Index b, Index m, Rng& rng);

// True iff string j has its 1 inside [lo, hi].
bool MseQuery(const MseInstance& instance, Index j, Index lo, Index hi);

// True iff some query in `specs` answers differently on S1 and S2.
bool TranscriptDistinguishable(const DomainShape& shape,
                               std::span<const SubsetSpec> specs,
                               const HiddenSet& s1, const HiddenSet& s2);

// Writes <stem>.s1.txt, <stem>.s2.txt and <stem>.meta.json.
void SaveInstancePair(const std::filesystem::path& stem,
                      const InstancePair& pair);

}  // namespace setsize

#endif  // SETSIZE_HARD_INSTANCES_H_
