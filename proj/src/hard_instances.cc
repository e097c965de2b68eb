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

#include "setsize/hard_instances.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "setsize/hidden_set_io.h"

namespace setsize {
namespace {

std::vector<Index> Range(Index lo, Index hi) {
  std::vector<Index> out;
  for (Index x = lo; x <= hi; ++x) out.push_back(x);
  return out;
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParams(message);
}

bool AnyMember(const DomainShape& shape, const SubsetSpec& spec,
               const HiddenSet& s) {
  for (Index x : s.elements()) {
    if (SpecContains(shape, spec, x)) return true;
  }
  return false;
}

}  // namespace

std::vector<Index> UniformSubset(Index n, Index k, Rng& rng) {
  Require(k >= 0 && k <= n, "subset size out of range");
  std::vector<Index> out;
  out.reserve(k);
  if (k > n / 16) {
    // Selection sampling: one pass, exact inclusion probabilities.
    Index needed = k;
    for (Index x = 1; x <= n && needed > 0; ++x) {
      if (rng.UniformIndex(1, n - x + 1) <= needed) {
        out.push_back(x);
        --needed;
      }
    }
    return out;
  }
  // Floyd's algorithm.
  std::unordered_set<Index> chosen;
  chosen.reserve(k * 2);
  for (Index j = n - k + 1; j <= n; ++j) {
    const Index t = rng.UniformIndex(1, j);
    chosen.insert(chosen.contains(t) ? j : t);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

InstancePair GenIntervalQueryPair(Index n, Index w_tilde, Rng& rng) {
  Require(w_tilde >= 1 && n >= 2 * w_tilde, "need 1 <= w~ and 2 w~ <= n");
  const Index blocks = n / w_tilde;
  const Index j = rng.UniformIndex(1, blocks - 1);
  const Index start = (j - 1) * w_tilde + 1;
  InstancePair pair{.kind = "interval-query"};
  pair.s1 = HiddenSet(Range(start, start + w_tilde - 1), n);
  pair.s2 = HiddenSet(Range(start, start + 2 * w_tilde - 1), n);
  pair.params = {{"n", n}, {"w_tilde", w_tilde}, {"j_star", j}};
  return pair;
}

InstancePair GenIntervalAdaptivePair(Index n, Index w_tilde, Rng& rng) {
  Require(w_tilde >= 1 && w_tilde * w_tilde < n, "need 1 <= w~ < sqrt(n)");
  const Index width = n / w_tilde;
  const Index m = (n + w_tilde * w_tilde - 1) / (w_tilde * w_tilde);
  InstancePair pair{.kind = "interval-adaptive"};
  const Index j_star = rng.UniformIndex(1, w_tilde);
  std::vector<Index> s1;
  std::vector<Index> special;
  for (Index j = 1; j <= w_tilde; ++j) {
    const Index lo = (j - 1) * width + 1;
    const Index hi = j == w_tilde ? n : j * width;
    const Index sub = (hi - lo + 1) / m;
    const Index l = rng.UniformIndex(1, m);
    pair.positions.push_back(l);
    const Index sub_lo = lo + (l - 1) * sub;
    const Index sub_hi = l == m ? hi : sub_lo + sub - 1;
    s1.insert(s1.end(), {lo, sub_lo, sub_hi});
    if (j == j_star) special = Range(sub_lo, sub_hi);
  }
  std::vector<Index> s2 = s1;
  s2.insert(s2.end(), special.begin(), special.end());
  pair.s1 = HiddenSet::FromUnsorted(std::move(s1), n);
  pair.s2 = HiddenSet::FromUnsorted(std::move(s2), n);
  pair.params = {{"n", n}, {"w_tilde", w_tilde}, {"m", m}, {"j_star", j_star}};
  return pair;
}

InstancePair GenIntervalSamplePair(Index n, Index w_tilde, Rng& rng) {
  Require(w_tilde >= 2 && n >= w_tilde, "need 2 <= w~ <= n");
  const Index j = rng.UniformIndex(1, n / w_tilde);
  const Index start = (j - 1) * w_tilde + 1;
  std::vector<Index> s1 = UniformSubset(w_tilde, w_tilde / 2, rng);
  for (Index& x : s1) x += start - 1;
  InstancePair pair{.kind = "interval-sample"};
  pair.s1 = HiddenSet(std::move(s1), n);
  pair.s2 = HiddenSet(Range(start, start + w_tilde - 1), n);
  pair.params = {{"n", n}, {"w_tilde", w_tilde}, {"j_star", j}};
  return pair;
}

InstancePair GenUnrestrictedPair(Index n, Rng& rng) {
  Require(n >= 2 && std::has_single_bit(static_cast<std::uint64_t>(n)),
          "n must be a power of two >= 2");
  const int log_n = std::countr_zero(static_cast<std::uint64_t>(n));
  const Index i = rng.UniformIndex(0, log_n - 1);
  InstancePair pair{.kind = "unrestricted"};
  pair.s1 = HiddenSet(UniformSubset(n, Index{1} << i, rng), n);
  pair.s2 = HiddenSet(UniformSubset(n, Index{1} << (i + 1), rng), n);
  pair.params = {{"n", n}, {"i", i}};
  return pair;
}

InstancePair GenCollisionPair(Index n, Index w_tilde, Rng& rng) {
  Require(w_tilde >= 4 && 4 * w_tilde <= n, "need 4 <= w~ <= n/4");
  InstancePair pair{.kind = "collision"};
  pair.s1 = HiddenSet(UniformSubset(n, w_tilde / 4, rng), n);
  pair.s2 = HiddenSet(UniformSubset(n, 4 * w_tilde, rng), n);
  pair.params = {{"n", n}, {"w_tilde", w_tilde}};
  return pair;
}

MseInstance GenMseInstance(Index b, Index m, Rng& rng) {
  Require(b >= 1 && m >= 1, "need b, m >= 1");
  MseInstance instance{.b = b, .m = m};
  instance.positions.reserve(b);
  for (Index j = 0; j < b; ++j) instance.positions.push_back(rng.UniformIndex(1, m));
  return instance;
}

bool MseQuery(const MseInstance& instance, Index j, Index lo, Index hi) {
  Require(j >= 1 && j <= instance.b, "string index out of range");
  Require(lo >= 1 && lo <= hi && hi <= instance.m, "bad substring range");
  const Index l = instance.positions[j - 1];
  return l >= lo && l <= hi;
}

bool TranscriptDistinguishable(const DomainShape& shape,
                               std::span<const SubsetSpec> specs,
                               const HiddenSet& s1, const HiddenSet& s2) {
  for (const SubsetSpec& spec : specs) {
    ValidateSpec(shape, spec);
    if (AnyMember(shape, spec, s1) != AnyMember(shape, spec, s2)) return true;
  }
  return false;
}

void SaveInstancePair(const std::filesystem::path& stem,
                      const InstancePair& pair) {
  const std::string base = stem.string();
  SaveHiddenSetFile(base + ".s1.txt", pair.s1);
  SaveHiddenSetFile(base + ".s2.txt", pair.s2);
  nlohmann::ordered_json meta;
  meta["kind"] = pair.kind;
  meta["universe_size"] = pair.s1.universe_size();
  meta["s1_size"] = pair.s1.size();
  meta["s2_size"] = pair.s2.size();
  for (const auto& [key, value] : pair.params) meta["params"][key] = value;
  if (!pair.positions.empty()) meta["positions"] = pair.positions;
  const std::string path = base + ".meta.json";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << meta.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace setsize
