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

#include "setsize/oracle.h"

#include <algorithm>
#include <bit>
#include <span>
#include <utility>

namespace setsize {
namespace {

constexpr std::size_t kCacheSlots = 4;

// Explicit specs are compared by identity here; content comparison is O(n).
bool SameSpec(const SubsetSpec& a, const SubsetSpec& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ea = std::get_if<ExplicitSpec>(&a)) {
    return ea->members == std::get<ExplicitSpec>(b).members;
  }
  return a == b;
}

// Index range of a sub-cube whose fixed coordinates are exactly 1..t.
std::optional<IntervalSpec> CubePrefixRange(const DomainShape& shape,
                                            const SubCubeSpec& s) {
  const int t = std::countr_one(s.mask);
  if (std::popcount(s.mask) != t) return std::nullopt;
  const int d = shape.dimension();
  std::uint64_t prefix = 0;
  for (int k = 1; k <= t; ++k) prefix = prefix << 1 | (s.value >> (k - 1) & 1);
  const Index width = Index{1} << (d - t);
  const Index lo = static_cast<Index>(prefix) * width + 1;
  return IntervalSpec{lo, lo + width - 1};
}

// A spec that is a contiguous index range, if it is one we can see cheaply.
std::optional<IntervalSpec> AsRange(const DomainShape& shape,
                                    const SubsetSpec& spec) {
  if (std::holds_alternative<WholeSpec>(spec)) {
    return IntervalSpec{1, shape.size()};
  }
  if (const auto* s = std::get_if<IntervalSpec>(&spec)) return *s;
  if (const auto* s = std::get_if<SubGridSpec>(&spec)) {
    if (shape.is_linear()) return IntervalSpec{s->lo[0], s->hi[0]};
  }
  if (const auto* s = std::get_if<SubCubeSpec>(&spec)) {
    return CubePrefixRange(shape, *s);
  }
  return std::nullopt;
}

// True iff some key hashes below `threshold`.
bool AnyBelow(std::span<const std::uint64_t> keys, std::uint64_t seed,
              std::uint64_t threshold) {
  const RandomSubsetMixer mixer(seed);
  for (std::uint64_t key : keys) {
    if (mixer.Hash(key) < threshold) return true;
  }
  return false;
}

}  // namespace

OracleSession::OracleSession(DomainShape shape, HiddenSet hidden,
                             SubsetFamily family, std::uint64_t seed)
    : shape_(std::move(shape)),
      hidden_(std::move(hidden)),
      family_(family),
      rng_(seed) {
  cache_.reserve(kCacheSlots);
  if (hidden_.universe_size() != shape_.size()) {
    throw InvalidParams("hidden set universe size " +
                        std::to_string(hidden_.universe_size()) +
                        " does not match domain size " +
                        std::to_string(shape_.size()));
  }
}

void OracleSession::Admit(const SubsetSpec& spec) const {
  ValidateSpec(shape_, spec);
  if (!SpecAllowed(family_, shape_, spec)) {
    throw FamilyViolation(DescribeSpec(spec) + " is not in the " +
                          std::string(FamilyName(family_)) + " family");
  }
}

void OracleSession::Record(OracleCall call, const SubsetSpec& spec,
                           Index answer) {
  if (call == OracleCall::kQuery) {
    ++tally_.queries;
  } else {
    ++tally_.samples;
  }
  if (recording_) tally_.transcript.push_back({call, spec, answer});
}

std::pair<std::size_t, std::size_t> OracleSession::IntervalRange(
    Index lo, Index hi) const {
  const auto elems = hidden_.elements();
  const auto first = std::lower_bound(elems.begin(), elems.end(), lo);
  const auto last = std::upper_bound(first, elems.end(), hi);
  return {static_cast<std::size_t>(first - elems.begin()),
          static_cast<std::size_t>(last - elems.begin())};
}

bool OracleSession::Member(Index x) {
  if (bitmap_.empty()) {
    if (shape_.size() > kMaxExplicitUniverse) return hidden_.Contains(x);
    bitmap_.assign(static_cast<std::size_t>(shape_.size() / 64 + 1), 0);
    for (Index e : hidden_.elements()) {
      bitmap_[(e - 1) >> 6] |= std::uint64_t{1} << ((e - 1) & 63);
    }
  }
  return (bitmap_[(x - 1) >> 6] >> ((x - 1) & 63)) & 1;
}

std::span<const Index> OracleSession::Matching(const SubsetSpec& spec) {
  if (auto range = AsRange(shape_, spec)) {
    const auto [first, last] = IntervalRange(range->lo, range->hi);
    return hidden_.elements().subspan(first, last - first);
  }
  for (const auto& entry : cache_) {
    if (SameSpec(entry.spec, spec)) return entry.members;
  }
  std::vector<Index> members;
  for (Index x : hidden_.elements()) {
    if (SpecContains(shape_, spec, x)) members.push_back(x);
  }
  if (cache_.size() < kCacheSlots) {
    cache_.push_back({spec, std::move(members)});
    return cache_.back().members;
  }
  auto& slot = cache_[cache_next_];
  cache_next_ = (cache_next_ + 1) % kCacheSlots;
  slot = {spec, std::move(members)};
  return slot.members;
}

bool OracleSession::Query(const SubsetSpec& spec) {
  if (const auto* s = std::get_if<IntervalSpec>(&spec);
      s && s->lo == s->hi && SingletonFastPath(s->lo)) {
    return QuerySingleton(s->lo);
  }
  Admit(spec);
  bool positive = false;
  if (const auto* s = std::get_if<IntervalSpec>(&spec); s && s->lo == s->hi) {
    positive = Member(s->lo);
  } else if (const auto* r = std::get_if<RandomSubsetSpec>(&spec)) {
    const std::uint64_t threshold = RandomSubsetThreshold(r->p);
    if (threshold == UINT64_MAX) {
      positive = !hidden_.empty();
    } else {
      if (element_keys_.size() != static_cast<std::size_t>(hidden_.size())) {
        element_keys_.clear();
        for (Index x : hidden_.elements()) {
          element_keys_.push_back(Mix64(static_cast<std::uint64_t>(x)));
        }
      }
      positive = AnyBelow(element_keys_, r->seed, threshold);
    }
  } else {
    positive = !Matching(spec).empty();
  }
  Record(OracleCall::kQuery, spec, positive ? 1 : 0);
  return positive;
}

std::optional<Index> OracleSession::Sample(const SubsetSpec& spec) {
  if (const auto* s = std::get_if<IntervalSpec>(&spec);
      s && s->lo == s->hi && SingletonFastPath(s->lo)) {
    return SampleSingleton(s->lo);
  }
  Admit(spec);
  std::optional<Index> out;
  if (const auto* s = std::get_if<IntervalSpec>(&spec); s && s->lo == s->hi) {
    if (Member(s->lo)) out = s->lo;
  } else {
    const auto members = Matching(spec);
    if (!members.empty()) {
      const auto pick = rng_.UniformIndex(0, static_cast<Index>(members.size()) - 1);
      out = members[pick];
    }
  }
  Record(OracleCall::kSample, spec, out.value_or(0));
  return out;
}

bool OracleSession::QuerySingleton(Index x) {
  if (!SingletonFastPath(x)) return Query(IntervalSpec{x, x});
  const bool positive = Member(x);
  ++tally_.queries;
  if (recording_) {
    tally_.transcript.push_back(
        {OracleCall::kQuery, IntervalSpec{x, x}, positive ? 1 : 0});
  }
  return positive;
}

std::optional<Index> OracleSession::SampleSingleton(Index x) {
  if (!SingletonFastPath(x)) return Sample(IntervalSpec{x, x});
  std::optional<Index> out;
  if (Member(x)) out = x;
  ++tally_.samples;
  if (recording_) {
    tally_.transcript.push_back({OracleCall::kSample, IntervalSpec{x, x},
                                 out.value_or(0)});
  }
  return out;
}

Index OracleSession::IntersectionSize(const SubsetSpec& spec) {
  ValidateSpec(shape_, spec);
  if (std::holds_alternative<RandomSubsetSpec>(spec)) {
    Index count = 0;
    for (Index x : hidden_.elements()) count += SpecContains(shape_, spec, x);
    return count;
  }
  return static_cast<Index>(Matching(spec).size());
}

}  // namespace setsize
