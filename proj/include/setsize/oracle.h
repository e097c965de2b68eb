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

#ifndef SETSIZE_ORACLE_H_
#define SETSIZE_ORACLE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "setsize/domain.h"
#include "setsize/rng.h"

namespace setsize {

enum class OracleCall { kQuery, kSample };

// One answered call. For queries `answer` is 0 or 1; for samples it is the
// returned element, or 0 for an empty intersection.
struct TranscriptEntry {
  OracleCall call = OracleCall::kQuery;
  SubsetSpec spec;
  Index answer = 0;
};

struct OracleTally {
  std::int64_t queries = 0;
  std::int64_t samples = 0;
  // Populated only while recording is enabled on the session.
  std::vector<TranscriptEntry> transcript;

  std::int64_t total() const { return queries + samples; }
};

// Answers subset queries and subset samples about a fixed hidden set,
// restricted to one subset family. Single-threaded; concurrent trials use
// separate sessions.
class OracleSession {
 public:
  OracleSession(DomainShape shape, HiddenSet hidden, SubsetFamily family,
                std::uint64_t seed);

  // True iff T ∩ S is non-empty. Throws InvalidSpec / FamilyViolation.
  bool Query(const SubsetSpec& spec);

  // Uniform element of T ∩ S drawn from the session stream (with
  // replacement across calls), or nullopt when the intersection is empty.
  std::optional<Index> Sample(const SubsetSpec& spec);

  // Singleton-interval shortcuts, equivalent to Query/Sample on
  // IntervalSpec{x, x}.
  bool QuerySingleton(Index x);
  std::optional<Index> SampleSingleton(Index x);

  // Ground-truth |T ∩ S|. Not metered and not recorded; reserved for tests
  // and exact-mode cross-checks.
  Index IntersectionSize(const SubsetSpec& spec);

  const OracleTally& tally() const { return tally_; }
  void set_recording(bool on) { recording_ = on; }
  bool recording() const { return recording_; }

  const DomainShape& shape() const { return shape_; }
  SubsetFamily family() const { return family_; }
  Index universe_size() const { return shape_.size(); }

 private:
  void Admit(const SubsetSpec& spec) const;
  bool Member(Index x);
  bool SingletonFastPath(Index x) const {
    return family_ != SubsetFamily::kUniverseOnly && x >= 1 &&
           x <= shape_.size();
  }
  // Elements of S inside `spec`, in increasing order.
  std::span<const Index> Matching(const SubsetSpec& spec);
  std::pair<std::size_t, std::size_t> IntervalRange(Index lo, Index hi) const;
  void Record(OracleCall call, const SubsetSpec& spec, Index answer);

  struct CacheEntry {
    SubsetSpec spec;
    std::vector<Index> members;
  };

  DomainShape shape_;
  HiddenSet hidden_;
  SubsetFamily family_;
  Rng rng_;
  OracleTally tally_;
  bool recording_ = false;
  std::vector<std::uint64_t> bitmap_;
  // Mix64(x) for each x in S, the seed-independent half of random-subset
  // membership.
  std::vector<std::uint64_t> element_keys_;
  std::vector<CacheEntry> cache_;
  std::size_t cache_next_ = 0;
};

}  // namespace setsize

#endif  // SETSIZE_ORACLE_H_
