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

#include "setsize/domain.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <type_traits>
#include <utility>

namespace setsize {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t CubeCoordinateMaskToOffsetMask(std::uint64_t coordinate_mask,
                                             int d) {
  std::uint64_t out = 0;
  for (int k = 1; k <= d; ++k) {
    if (coordinate_mask >> (k - 1) & 1) out |= std::uint64_t{1} << (d - k);
  }
  return out;
}

bool DescribesUniverse(const DomainShape& shape, const SubsetSpec& spec) {
  return std::visit(
      Overloaded{
          [](const WholeSpec&) { return true; },
          [&](const IntervalSpec& s) {
            return s.lo == 1 && s.hi == shape.size();
          },
          [&](const SubGridSpec& s) {
            for (int k = 0; k < shape.dimension(); ++k) {
              if (s.lo[k] != 1 || s.hi[k] != shape.dims()[k]) return false;
            }
            return true;
          },
          [](const SubCubeSpec& s) { return s.mask == 0; },
          [](const ExplicitSpec& s) {
            return std::all_of(s.members->begin(), s.members->end(),
                               [](bool b) { return b; });
          },
          [](const RandomSubsetSpec& s) { return s.p >= 1.0; },
      },
      spec);
}

bool IsSingleton(const DomainShape& shape, const SubsetSpec& spec) {
  return std::visit(
      Overloaded{
          [&](const WholeSpec&) { return shape.size() == 1; },
          [](const IntervalSpec& s) { return s.lo == s.hi; },
          [](const SubGridSpec& s) { return s.lo == s.hi; },
          [&](const SubCubeSpec& s) {
            const int d = shape.dimension();
            const std::uint64_t full =
                d == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1;
            return s.mask == full;
          },
          [](const ExplicitSpec& s) {
            return std::count(s.members->begin(), s.members->end(), true) ==
                   1;
          },
          [](const RandomSubsetSpec&) { return false; },
      },
      spec);
}

}  // namespace

DomainShape::DomainShape(std::vector<Index> dims, bool is_cube)
    : dims_(std::move(dims)), is_cube_(is_cube) {
  if (dims_.empty()) throw InvalidParams("domain needs at least one axis");
  strides_.assign(dims_.size(), 1);
  size_ = 1;
  for (int k = static_cast<int>(dims_.size()) - 1; k >= 0; --k) {
    if (dims_[k] < 1) throw InvalidParams("grid dimensions must be >= 1");
    strides_[k] = size_;
    if (size_ > (Index{1} << 62) / dims_[k]) {
      throw InvalidParams("universe too large");
    }
    size_ *= dims_[k];
  }
}

DomainShape DomainShape::Line(Index n) {
  if (n < 1) throw InvalidParams("line length must be >= 1");
  return DomainShape({n}, false);
}

DomainShape DomainShape::Grid(std::vector<Index> dims) {
  return DomainShape(std::move(dims), false);
}

DomainShape DomainShape::Hypercube(int d) {
  if (d < 1 || d > 62) throw InvalidParams("hypercube dimension must be in [1, 62]");
  return DomainShape(std::vector<Index>(d, 2), true);
}

std::vector<Index> DomainShape::ToCoordinates(Index element) const {
  std::vector<Index> out(dims_.size());
  for (int k = 0; k < dimension(); ++k) out[k] = Coordinate(element, k);
  return out;
}

Index DomainShape::FromCoordinates(std::span<const Index> coords) const {
  if (static_cast<int>(coords.size()) != dimension()) {
    throw InvalidParams("coordinate arity does not match the domain");
  }
  Index offset = 0;
  for (int k = 0; k < dimension(); ++k) {
    const Index c = is_cube_ ? coords[k] : coords[k] - 1;
    if (c < 0 || c >= dims_[k]) throw InvalidParams("coordinate out of range");
    offset += c * strides_[k];
  }
  return offset + 1;
}

std::string DomainShape::ToString() const {
  std::ostringstream out;
  if (is_cube_) {
    out << "cube(" << dims_.size() << ")";
  } else if (dims_.size() == 1) {
    out << "line(" << size_ << ")";
  } else {
    out << "grid(";
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      out << (k ? "x" : "") << dims_[k];
    }
    out << ")";
  }
  return out.str();
}

HiddenSet::HiddenSet(std::vector<Index> elements, Index universe_size)
    : elements_(std::move(elements)), universe_size_(universe_size) {
  if (universe_size_ < 1) throw InvalidParams("universe size must be >= 1");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < 1 || elements_[i] > universe_size_) {
      throw InvalidParams("hidden element " + std::to_string(elements_[i]) +
                          " outside [1, " + std::to_string(universe_size_) +
                          "]");
    }
    if (i > 0 && elements_[i] <= elements_[i - 1]) {
      throw InvalidParams("hidden elements must be strictly increasing");
    }
  }
}

HiddenSet HiddenSet::FromUnsorted(std::vector<Index> elements,
                                  Index universe_size) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  return HiddenSet(std::move(elements), universe_size);
}

bool HiddenSet::Contains(Index element) const {
  return std::binary_search(elements_.begin(), elements_.end(), element);
}

SubCubeSpec SubCubeSpec::FromRestrictions(const std::map<int, int>& fixed) {
  SubCubeSpec spec;
  for (const auto& [coordinate, bit] : fixed) {
    if (coordinate < 1 || coordinate > 64 || (bit != 0 && bit != 1)) {
      throw InvalidSpec("sub-cube restriction must map a coordinate in "
                        "[1, 64] to 0 or 1");
    }
    spec.mask |= std::uint64_t{1} << (coordinate - 1);
    if (bit) spec.value |= std::uint64_t{1} << (coordinate - 1);
  }
  return spec;
}

std::map<int, int> SubCubeSpec::Restrictions() const {
  std::map<int, int> out;
  for (int k = 1; k <= 64; ++k) {
    if (mask >> (k - 1) & 1) out[k] = static_cast<int>(value >> (k - 1) & 1);
  }
  return out;
}

ExplicitSpec ExplicitSpec::FromElements(std::span<const Index> elements,
                                        Index n) {
  if (n < 1 || n > kMaxExplicitUniverse) {
    throw InvalidSpec("explicit specs need 1 <= n <= 2^26");
  }
  auto bits = std::make_shared<std::vector<bool>>(n, false);
  for (Index x : elements) {
    if (x < 1 || x > n) throw InvalidSpec("explicit member outside universe");
    (*bits)[x - 1] = true;
  }
  return ExplicitSpec{std::move(bits)};
}

bool ExplicitSpec::operator==(const ExplicitSpec& other) const {
  if (members == other.members) return true;
  if (!members || !other.members) return false;
  return *members == *other.members;
}

std::string_view FamilyName(SubsetFamily family) {
  switch (family) {
    case SubsetFamily::kUniverseOnly:
      return "universe";
    case SubsetFamily::kIntervals:
      return "intervals";
    case SubsetFamily::kSubGrids:
      return "subgrids";
    case SubsetFamily::kSubCubes:
      return "subcubes";
    case SubsetFamily::kUnrestricted:
      return "unrestricted";
  }
  return "?";
}

SubsetFamily ParseFamily(std::string_view name) {
  for (auto f : {SubsetFamily::kUniverseOnly, SubsetFamily::kIntervals,
                 SubsetFamily::kSubGrids, SubsetFamily::kSubCubes,
                 SubsetFamily::kUnrestricted}) {
    if (FamilyName(f) == name) return f;
  }
  throw ConfigError("unknown subset family '" + std::string(name) + "'");
}

void ValidateSpec(const DomainShape& shape, const SubsetSpec& spec) {
  std::visit(
      Overloaded{
          [](const WholeSpec&) {},
          [&](const IntervalSpec& s) {
            if (!(1 <= s.lo && s.lo <= s.hi && s.hi <= shape.size())) {
              throw InvalidSpec("interval [" + std::to_string(s.lo) + ", " +
                                std::to_string(s.hi) + "] not within [1, " +
                                std::to_string(shape.size()) + "]");
            }
          },
          [&](const SubGridSpec& s) {
            if (shape.is_cube()) {
              throw InvalidSpec("sub-grid spec on a hypercube domain");
            }
            const auto d = static_cast<std::size_t>(shape.dimension());
            if (s.lo.size() != d || s.hi.size() != d) {
              throw InvalidSpec("sub-grid arity does not match the grid");
            }
            for (std::size_t k = 0; k < d; ++k) {
              if (!(1 <= s.lo[k] && s.lo[k] <= s.hi[k] &&
                    s.hi[k] <= shape.dims()[k])) {
                throw InvalidSpec("sub-grid bounds out of range on axis " +
                                  std::to_string(k + 1));
              }
            }
          },
          [&](const SubCubeSpec& s) {
            if (!shape.is_cube()) {
              throw InvalidSpec("sub-cube spec on a non-cube domain");
            }
            const int d = shape.dimension();
            if (d < 64 && (s.mask >> d) != 0) {
              throw InvalidSpec("sub-cube restricts a coordinate beyond d");
            }
            if ((s.value & ~s.mask) != 0) {
              throw InvalidSpec("sub-cube value bits outside its mask");
            }
          },
          [&](const ExplicitSpec& s) {
            if (!s.members ||
                static_cast<Index>(s.members->size()) != shape.size()) {
              throw InvalidSpec("explicit spec length must equal n");
            }
          },
          [](const RandomSubsetSpec& s) {
            if (!(s.p > 0.0 && s.p <= 1.0)) {
              throw InvalidSpec("random subset probability must be in (0, 1]");
            }
          },
      },
      spec);
}

bool SpecAllowed(SubsetFamily family, const DomainShape& shape,
                 const SubsetSpec& spec) {
  if (family == SubsetFamily::kUnrestricted) return true;
  if (DescribesUniverse(shape, spec)) return true;
  switch (family) {
    case SubsetFamily::kUniverseOnly:
      return false;
    case SubsetFamily::kIntervals:
      return std::holds_alternative<IntervalSpec>(spec) ||
             (shape.is_linear() && std::holds_alternative<SubGridSpec>(spec)) ||
             IsSingleton(shape, spec);
    case SubsetFamily::kSubGrids:
      return std::holds_alternative<SubGridSpec>(spec) ||
             (shape.is_linear() && std::holds_alternative<IntervalSpec>(spec)) ||
             IsSingleton(shape, spec);
    case SubsetFamily::kSubCubes:
      return std::holds_alternative<SubCubeSpec>(spec) ||
             IsSingleton(shape, spec);
    case SubsetFamily::kUnrestricted:
      return true;
  }
  return false;
}

bool SpecContains(const DomainShape& shape, const SubsetSpec& spec,
                  Index element) {
  return std::visit(
      Overloaded{
          [](const WholeSpec&) { return true; },
          [&](const IntervalSpec& s) {
            return s.lo <= element && element <= s.hi;
          },
          [&](const SubGridSpec& s) {
            for (int k = 0; k < shape.dimension(); ++k) {
              const Index c = shape.Coordinate(element, k);
              if (c < s.lo[k] || c > s.hi[k]) return false;
            }
            return true;
          },
          [&](const SubCubeSpec& s) {
            const int d = shape.dimension();
            const auto offset = static_cast<std::uint64_t>(element - 1);
            const std::uint64_t mask = CubeCoordinateMaskToOffsetMask(s.mask, d);
            const std::uint64_t value =
                CubeCoordinateMaskToOffsetMask(s.value, d);
            return (offset & mask) == value;
          },
          [&](const ExplicitSpec& s) { return (*s.members)[element - 1]; },
          [&](const RandomSubsetSpec& s) {
            return RandomSubsetContains(s.seed, RandomSubsetThreshold(s.p),
                                        element);
          },
      },
      spec);
}

Index SpecCardinality(const DomainShape& shape, const SubsetSpec& spec) {
  return std::visit(
      Overloaded{
          [&](const WholeSpec&) { return shape.size(); },
          [](const IntervalSpec& s) { return s.hi - s.lo + 1; },
          [](const SubGridSpec& s) {
            Index count = 1;
            for (std::size_t k = 0; k < s.lo.size(); ++k) {
              count *= s.hi[k] - s.lo[k] + 1;
            }
            return count;
          },
          [&](const SubCubeSpec& s) {
            return Index{1} << (shape.dimension() - std::popcount(s.mask));
          },
          [](const ExplicitSpec& s) {
            return static_cast<Index>(
                std::count(s.members->begin(), s.members->end(), true));
          },
          [&](const RandomSubsetSpec& s) {
            const std::uint64_t threshold = RandomSubsetThreshold(s.p);
            Index count = 0;
            for (Index x = 1; x <= shape.size(); ++x) {
              count += RandomSubsetContains(s.seed, threshold, x);
            }
            return count;
          },
      },
      spec);
}

std::string DescribeSpec(const SubsetSpec& spec) {
  std::ostringstream out;
  std::visit(
      Overloaded{
          [&](const WholeSpec&) { out << "whole"; },
          [&](const IntervalSpec& s) {
            out << "interval[" << s.lo << "," << s.hi << "]";
          },
          [&](const SubGridSpec& s) {
            out << "subgrid[";
            for (std::size_t k = 0; k < s.lo.size(); ++k) {
              out << (k ? "," : "") << s.lo[k] << ".." << s.hi[k];
            }
            out << "]";
          },
          [&](const SubCubeSpec& s) {
            out << "subcube{";
            bool first = true;
            for (const auto& [k, b] : s.Restrictions()) {
              out << (first ? "" : ",") << k << ":" << b;
              first = false;
            }
            out << "}";
          },
          [&](const ExplicitSpec& s) {
            out << "explicit(|T|="
                << std::count(s.members->begin(), s.members->end(), true)
                << ")";
          },
          [&](const RandomSubsetSpec& s) {
            out << "random(seed=" << s.seed << ",p=" << s.p << ")";
          },
      },
      spec);
  return out.str();
}

std::uint64_t RandomSubsetThreshold(double p) {
  if (p >= 1.0) return UINT64_MAX;
  if (p <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::ldexp(static_cast<long double>(p), 64));
}

}  // namespace setsize
