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

#include "setsize/structured.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

namespace setsize {
namespace {

// Fresh sample batches tried before a cube split gives up.
constexpr int kCubeSplitAttempts = 3;

bool AllEqual(std::span<const Index> xs) {
  return std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) ==
         xs.end();
}

std::uint64_t CubeBit(int d, std::uint64_t offset, int coordinate) {
  return (offset >> (d - coordinate)) & 1;
}

bool CubeContainsOffset(int d, const SubCubeSpec& cube, std::uint64_t offset) {
  for (std::uint64_t m = cube.mask; m != 0; m &= m - 1) {
    const int k = std::countr_zero(m) + 1;
    if (CubeBit(d, offset, k) != ((cube.value >> (k - 1)) & 1)) return false;
  }
  return true;
}

}  // namespace

SubGridSpec ChooseGridCut(const SubGridSpec& region,
                          std::span<const std::vector<Index>> points) {
  const auto total = static_cast<std::int64_t>(points.size());
  const int d = static_cast<int>(region.lo.size());
  SubGridSpec cur = region;
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Index> values;

  for (int a = 0; a < d; ++a) {
    if (cur.lo[a] == cur.hi[a]) continue;
    values.clear();
    for (std::size_t i : idx) values.push_back(points[i][a]);
    std::sort(values.begin(), values.end());

    // x: coordinate at which the prefix count first reaches ⌈total/2⌉.
    const std::int64_t half = (total + 1) / 2;
    const auto it_x = values.begin() + (half - 1);
    const Index x = *it_x;
    const auto at_or_below =
        std::upper_bound(values.begin(), values.end(), x) - values.begin();
    const auto below =
        std::lower_bound(values.begin(), values.end(), x) - values.begin();

    SubGridSpec prefix = cur;
    prefix.hi[a] = x;
    if (4 * at_or_below <= 3 * total && prefix != region) return prefix;
    if (4 * below >= total) {
      prefix.hi[a] = x - 1;
      return prefix;
    }
    cur.lo[a] = cur.hi[a] = x;
    std::erase_if(idx, [&](std::size_t i) { return points[i][a] != x; });
  }
  return cur;
}

std::int64_t GridSplitSampleCount(int d, double delta_j, double kappa) {
  return static_cast<std::int64_t>(
      std::ceil(kappa * d * std::log(3.0 * d / delta_j)));
}

SplitOutcome<SubGridSpec> SplitGridBySample(OracleSession& session,
                                            const SubGridSpec& region,
                                            double delta_j, double kappa) {
  const DomainShape& shape = session.shape();
  const std::int64_t s =
      GridSplitSampleCount(shape.dimension(), delta_j, kappa);
  std::vector<Index> elements;
  elements.reserve(s);
  for (std::int64_t i = 0; i < s; ++i) {
    const auto x = session.Sample(region);
    if (!x) return SplitOutcome<SubGridSpec>::Empty();
    elements.push_back(*x);
  }
  if (AllEqual(elements)) return SplitOutcome<SubGridSpec>::Terminal();
  std::vector<std::vector<Index>> points;
  points.reserve(elements.size());
  for (Index x : elements) points.push_back(shape.ToCoordinates(x));
  return SplitOutcome<SubGridSpec>::Next(ChooseGridCut(region, points));
}

Estimate EstimateGridSampleAdaptive(OracleSession& session,
                                    const NestedOptions& options, double kappa,
                                    NestedTrace<SubGridSpec>* trace) {
  const DomainShape& shape = session.shape();
  if (shape.is_cube()) throw InvalidParams("grid estimator on a hypercube");
  const int d = shape.dimension();
  if (d > kMaxGridDimension) {
    throw InvalidParams("grid dimension exceeds " +
                        std::to_string(kMaxGridDimension));
  }
  const Schedule& schedule = options.schedule;
  auto split = [&](OracleSession& s, const SubGridSpec& r, int j) {
    return SplitGridBySample(s, r, schedule.Delta(j), kappa);
  };
  auto ratio = [&](OracleSession& s, const SubGridSpec& prev,
                   const SubGridSpec& next, int j) {
    if (options.exact_ratios) {
      return RatioEstimate{s.IntersectionSize(prev), s.IntersectionSize(next)};
    }
    const std::int64_t m =
        d * RatioSampleCount(schedule.Eps(options.epsilon, j),
                             schedule.Delta(j) / d);
    return EstimateRatioBySampling(s, prev, m, [&](Index x) {
      for (int a = 0; a < d; ++a) {
        const Index c = shape.Coordinate(x, a);
        if (c < next.lo[a] || c > next.hi[a]) return false;
      }
      return true;
    });
  };
  SubGridSpec root{std::vector<Index>(d, 1), shape.dims()};
  return RunNested(session, root,
                   NestedIterationCap(shape.size(), options.iteration_kappa),
                   split, ratio, trace);
}

SubCubeSpec RestrictCube(const SubCubeSpec& cube, int coordinate, int bit) {
  const std::uint64_t b = std::uint64_t{1} << (coordinate - 1);
  return SubCubeSpec{cube.mask | b, bit ? (cube.value | b) : (cube.value & ~b)};
}

std::vector<SubCubeSpec> CubeCandidates(int d, const SubCubeSpec& cube,
                                        std::span<const std::uint64_t> offsets,
                                        double lo, double hi) {
  const auto total = static_cast<double>(offsets.size());
  std::vector<std::uint64_t> pts(offsets.begin(), offsets.end());
  SubCubeSpec cur = cube;
  for (int k = 1; k <= d; ++k) {
    if (cur.mask >> (k - 1) & 1) continue;
    const auto ones = std::count_if(pts.begin(), pts.end(), [&](auto p) {
      return CubeBit(d, p, k) == 1;
    });
    const double f[2] = {
        static_cast<double>(static_cast<std::int64_t>(pts.size()) - ones) /
            total,
        static_cast<double>(ones) / total};
    std::vector<SubCubeSpec> found;
    for (int bit = 0; bit < 2; ++bit) {
      if (f[bit] >= lo && f[bit] <= hi) found.push_back(RestrictCube(cur, k, bit));
    }
    if (!found.empty()) return found;
    const int heavy = f[1] > f[0] ? 1 : 0;
    cur = RestrictCube(cur, k, heavy);
    std::erase_if(pts, [&](auto p) {
      return static_cast<int>(CubeBit(d, p, k)) != heavy;
    });
  }
  return {};
}

std::int64_t CubeSplitSampleCount(double delta_j, double kappa) {
  return static_cast<std::int64_t>(std::ceil(kappa * std::log(3.0 / delta_j)));
}

SplitOutcome<SubCubeSpec> SplitCubeBySample(OracleSession& session,
                                            const SubCubeSpec& cube,
                                            double delta_j, double kappa) {
  const int d = session.shape().dimension();
  const std::int64_t s = CubeSplitSampleCount(delta_j, kappa);
  auto draw = [&](std::vector<std::uint64_t>& out) {
    out.clear();
    for (std::int64_t i = 0; i < s; ++i) {
      const auto x = session.Sample(cube);
      if (!x) return false;
      out.push_back(static_cast<std::uint64_t>(*x - 1));
    }
    return true;
  };
  std::vector<std::uint64_t> offsets;
  const char* reason = "no candidate";
  for (int attempt = 0; attempt < kCubeSplitAttempts; ++attempt) {
    if (!draw(offsets)) return SplitOutcome<SubCubeSpec>::Empty();
    if (std::adjacent_find(offsets.begin(), offsets.end(),
                           std::not_equal_to<>()) == offsets.end()) {
      return SplitOutcome<SubCubeSpec>::Terminal();
    }
    const auto candidates = CubeCandidates(d, cube, offsets, 0.25, 0.75);
    if (candidates.empty()) {
      reason = "no candidate";
      continue;
    }
    if (candidates.size() == 1) return SplitOutcome<SubCubeSpec>::Next(candidates[0]);

    if (!draw(offsets)) return SplitOutcome<SubCubeSpec>::Empty();
    for (const SubCubeSpec& c : candidates) {
      const auto inside = std::count_if(
          offsets.begin(), offsets.end(),
          [&](std::uint64_t p) { return CubeContainsOffset(d, c, p); });
      const double f = static_cast<double>(inside) / static_cast<double>(s);
      if (f >= 0.25 && f <= 0.875) return SplitOutcome<SubCubeSpec>::Next(c);
    }
    reason = "no candidate after tie-break";
  }
  return SplitOutcome<SubCubeSpec>::Failed(reason);
}

Estimate EstimateHypercubeSampleAdaptive(OracleSession& session,
                                         const NestedOptions& options,
                                         double kappa,
                                         NestedTrace<SubCubeSpec>* trace) {
  const DomainShape& shape = session.shape();
  if (!shape.is_cube()) throw InvalidParams("cube estimator on a grid");
  const int d = shape.dimension();
  const Schedule& schedule = options.schedule;
  auto split = [&](OracleSession& s, const SubCubeSpec& c, int j) {
    return SplitCubeBySample(s, c, schedule.Delta(j), kappa);
  };
  auto ratio = [&](OracleSession& s, const SubCubeSpec& prev,
                   const SubCubeSpec& next, int j) {
    if (options.exact_ratios) {
      return RatioEstimate{s.IntersectionSize(prev), s.IntersectionSize(next)};
    }
    return EstimateRatioBySampling(
        s, prev,
        RatioSampleCount(schedule.Eps(options.epsilon, j), schedule.Delta(j)),
        [&](Index x) {
          return CubeContainsOffset(d, next, static_cast<std::uint64_t>(x - 1));
        });
  };
  return RunNested(session, SubCubeSpec{},
                   NestedIterationCap(shape.size(), options.iteration_kappa),
                   split, ratio, trace);
}

}  // namespace setsize
