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

// Universe geometry, the hidden set, and describable subsets of the
// universe.
//
// Every domain is a row-major grid. A line of n elements is Grid({n}); the
// Boolean hypercube {0,1}^d is Grid({2, ..., 2}) with coordinates read as
// bits. Element indices are 1-based:
//
//   grid:  index = 1 + sum_k (x_k - 1) * stride_k,  x_k in [1, dims_k],
//          stride_d = 1, stride_k = dims_{k+1} * ... * dims_d
//   cube:  index = 1 + sum_k b_k * 2^(d-k),  b_k in {0, 1}
//
// so coordinate 1 is the most significant. On the cube, fixing coordinates
// 1..t yields a contiguous index range.

#ifndef SETSIZE_DOMAIN_H_
#define SETSIZE_DOMAIN_H_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "setsize/errors.h"
#include "setsize/rng.h"

namespace setsize {

// Universes larger than this cannot back explicit (bit-vector) specs.
inline constexpr Index kMaxExplicitUniverse = Index{1} << 26;

class DomainShape {
 public:
  static DomainShape Line(Index n);
  static DomainShape Grid(std::vector<Index> dims);
  static DomainShape Hypercube(int d);

  bool is_cube() const { return is_cube_; }
  // True for a line, i.e. a one-dimensional grid.
  bool is_linear() const { return !is_cube_ && dims_.size() == 1; }
  Index size() const { return size_; }
  int dimension() const { return static_cast<int>(dims_.size()); }
  const std::vector<Index>& dims() const { return dims_; }
  const std::vector<Index>& strides() const { return strides_; }

  // Coordinates of `element`: 1-based per axis for grids, bits for cubes.
  std::vector<Index> ToCoordinates(Index element) const;
  Index FromCoordinates(std::span<const Index> coords) const;
  // Coordinate `axis` (0-based) of `element`, without materializing the rest.
  Index Coordinate(Index element, int axis) const {
    const Index c = ((element - 1) / strides_[axis]) % dims_[axis];
    return is_cube_ ? c : c + 1;
  }

  std::string ToString() const;
  bool operator==(const DomainShape&) const = default;

 private:
  DomainShape(std::vector<Index> dims, bool is_cube);

  std::vector<Index> dims_;
  std::vector<Index> strides_;
  Index size_ = 0;
  bool is_cube_ = false;
};

// The unknown set S: strictly increasing indices in [1, n].
class HiddenSet {
 public:
  HiddenSet() = default;
  // Throws InvalidParams unless `elements` is strictly increasing in [1, n].
  HiddenSet(std::vector<Index> elements, Index universe_size);
  // Sorts and deduplicates first.
  static HiddenSet FromUnsorted(std::vector<Index> elements,
                                Index universe_size);

  std::span<const Index> elements() const { return elements_; }
  Index size() const { return static_cast<Index>(elements_.size()); }
  bool empty() const { return elements_.empty(); }
  Index universe_size() const { return universe_size_; }
  bool Contains(Index element) const;

  bool operator==(const HiddenSet&) const = default;

 private:
  std::vector<Index> elements_;
  Index universe_size_ = 0;
};

struct WholeSpec {
  bool operator==(const WholeSpec&) const = default;
};

// Closed range [lo, hi] of linear indices.
struct IntervalSpec {
  Index lo = 1;
  Index hi = 1;
  bool operator==(const IntervalSpec&) const = default;
};

// Closed axis-aligned box; lo/hi are 1-based coordinates per axis.
struct SubGridSpec {
  std::vector<Index> lo;
  std::vector<Index> hi;
  bool operator==(const SubGridSpec&) const = default;
};

// Sub-cube: bit (k-1) of `mask` set means coordinate k is fixed to bit
// (k-1) of `value`.
struct SubCubeSpec {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;

  static SubCubeSpec FromRestrictions(const std::map<int, int>& fixed);
  std::map<int, int> Restrictions() const;
  bool operator==(const SubCubeSpec&) const = default;
};

// Arbitrary member set as a bit-vector; bit x-1 is element x.
struct ExplicitSpec {
  std::shared_ptr<const std::vector<bool>> members;

  static ExplicitSpec FromElements(std::span<const Index> elements, Index n);
  bool operator==(const ExplicitSpec& other) const;
};

// Pseudo-random subset: element x is a member iff
// RandomSubsetMixer(seed).Hash(Mix64(x)) < threshold(p). It is a fixed
// subset of U given (seed, p), evaluated lazily instead of materialized as
// a bit-vector.
struct RandomSubsetSpec {
  std::uint64_t seed = 0;
  double p = 1.0;
  bool operator==(const RandomSubsetSpec&) const = default;
};

using SubsetSpec = std::variant<WholeSpec, IntervalSpec, SubGridSpec,
                                SubCubeSpec, ExplicitSpec, RandomSubsetSpec>;

enum class SubsetFamily {
  kUniverseOnly,
  kIntervals,
  kSubGrids,
  kSubCubes,
  kUnrestricted,
};

std::string_view FamilyName(SubsetFamily family);
// Throws ConfigError on unknown names.
SubsetFamily ParseFamily(std::string_view name);

// Throws InvalidSpec if `spec` is malformed for `shape`.
void ValidateSpec(const DomainShape& shape, const SubsetSpec& spec);

// True iff `spec` belongs to `family`. Whole, and any spec that describes
// all of U, is allowed everywhere. `spec` must be valid for `shape`.
bool SpecAllowed(SubsetFamily family, const DomainShape& shape,
                 const SubsetSpec& spec);

// Membership predicate of `spec`; `spec` must be valid for `shape`.
bool SpecContains(const DomainShape& shape, const SubsetSpec& spec,
                  Index element);

// Number of universe elements in the subset (|T|). Linear in n for
// explicit and random specs.
Index SpecCardinality(const DomainShape& shape, const SubsetSpec& spec);

std::string DescribeSpec(const SubsetSpec& spec);

// 64-bit inclusion threshold for probability p in (0, 1].
std::uint64_t RandomSubsetThreshold(double p);

// Per-query half of random-subset membership: a 64x64->128 multiply by a
// seed-derived odd constant, folded. The per-element half is Mix64(x), which
// callers can cache across queries.
class RandomSubsetMixer {
 public:
  explicit constexpr RandomSubsetMixer(std::uint64_t seed)
      : seed_(seed), multiplier_(Mix64(seed) | 1) {}

  std::uint64_t Hash(std::uint64_t element_key) const {
    const unsigned __int128 m =
        static_cast<unsigned __int128>(element_key ^ seed_) * multiplier_;
    return static_cast<std::uint64_t>(m) ^ static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t multiplier_;
};

// UINT64_MAX is reserved for p = 1 (every element).
inline bool RandomSubsetContains(std::uint64_t seed, std::uint64_t threshold,
                                 Index element) {
  if (threshold == UINT64_MAX) return true;
  return RandomSubsetMixer(seed).Hash(Mix64(static_cast<std::uint64_t>(element))) <
         threshold;
}

}  // namespace setsize

#endif  // SETSIZE_DOMAIN_H_
