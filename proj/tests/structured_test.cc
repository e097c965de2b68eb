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
#include <numeric>

#include <gtest/gtest.h>

#include "setsize/calibration.h"
#include "setsize/hard_instances.h"
#include "setsize/interval_estimators.h"

namespace setsize {
namespace {

using GridOutcome = SplitOutcome<SubGridSpec>;
using CubeOutcome = SplitOutcome<SubCubeSpec>;

std::vector<Index> Range(Index lo, Index hi) {
  std::vector<Index> v(hi - lo + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

OracleSession GridSession(std::vector<Index> dims, std::vector<Index> s,
                          std::uint64_t seed) {
  auto shape = DomainShape::Grid(std::move(dims));
  const Index n = shape.size();
  return OracleSession(shape, HiddenSet(std::move(s), n),
                       SubsetFamily::kSubGrids, seed);
}

OracleSession CubeSession(int d, std::vector<Index> s, std::uint64_t seed) {
  auto shape = DomainShape::Hypercube(d);
  const Index n = shape.size();
  return OracleSession(shape, HiddenSet(std::move(s), n),
                       SubsetFamily::kSubCubes, seed);
}

std::vector<Index> RandomSet(Index n, Index w, std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, StreamTag::kInstance));
  return UniformSubset(n, w, rng);
}

bool StrictlyInside(const SubGridSpec& inner, const SubGridSpec& outer) {
  bool strict = false;
  for (std::size_t a = 0; a < outer.lo.size(); ++a) {
    if (inner.lo[a] < outer.lo[a] || inner.hi[a] > outer.hi[a]) return false;
    strict = strict || inner.lo[a] > outer.lo[a] || inner.hi[a] < outer.hi[a];
  }
  return strict;
}

TEST(GridSplitSampleCountTest, Formula) {
  // 8·2·ln(60) = 65.5…
  EXPECT_EQ(GridSplitSampleCount(2, 0.1, 8.0), 66);
  EXPECT_EQ(GridSplitSampleCount(1, 0.1, 4.0), MedianSplitSampleCount(0.1));
}

TEST(ChooseGridCutTest, OneDimensionalCut) {
  const SubGridSpec region{{1}, {20}};
  std::vector<std::vector<Index>> pts{{3}, {4}, {6}, {9}, {15}};
  const auto cut = ChooseGridCut(region, pts);
  EXPECT_EQ(cut, (SubGridSpec{{1}, {6}}));
}

TEST(ChooseGridCutTest, HeavySliceIsFixed) {
  // Seven of eight points share row 2; the cut fixes that row and splits
  // along the second axis.
  const SubGridSpec region{{1, 1}, {4, 4}};
  std::vector<std::vector<Index>> pts{{2, 1}, {2, 1}, {2, 2}, {2, 2},
                                      {2, 3}, {2, 4}, {2, 4}, {3, 1}};
  const auto cut = ChooseGridCut(region, pts);
  EXPECT_EQ(cut.lo[0], 2);
  EXPECT_EQ(cut.hi[0], 2);
  EXPECT_TRUE(StrictlyInside(cut, region));
}

// Every set of distinct points in a random box gets a strict sub-box with
// a quarter to three quarters of them.
TEST(ChooseGridCutTest, QuartileGuaranteeOnDistinctPoints) {
  Rng rng(8);
  for (int t = 0; t < 3000; ++t) {
    const int d = static_cast<int>(rng.UniformIndex(1, 3));
    SubGridSpec region;
    Index cells = 1;
    for (int a = 0; a < d; ++a) {
      const Index lo = rng.UniformIndex(1, 4);
      region.lo.push_back(lo);
      region.hi.push_back(lo + rng.UniformIndex(0, 4));
      cells *= region.hi[a] - region.lo[a] + 1;
    }
    if (cells < 2) continue;
    const Index k = rng.UniformIndex(2, std::min<Index>(cells, 30));
    std::vector<std::vector<Index>> pts;
    for (Index c : UniformSubset(cells, k, rng)) {
      std::vector<Index> p(d);
      Index rest = c - 1;
      for (int a = d - 1; a >= 0; --a) {
        const Index len = region.hi[a] - region.lo[a] + 1;
        p[a] = region.lo[a] + rest % len;
        rest /= len;
      }
      pts.push_back(p);
    }
    const auto cut = ChooseGridCut(region, pts);
    ASSERT_TRUE(StrictlyInside(cut, region));
    std::int64_t inside = 0;
    for (const auto& p : pts) {
      bool in = true;
      for (int a = 0; a < d; ++a) in = in && p[a] >= cut.lo[a] && p[a] <= cut.hi[a];
      inside += in;
    }
    EXPECT_GE(4 * inside, k);
    EXPECT_LE(4 * inside, 3 * k);
  }
}

TEST(SplitGridTest, SingletonIsTerminal) {
  auto s = GridSession({8, 8}, {20}, 1);
  const auto out = SplitGridBySample(s, SubGridSpec{{1, 1}, {8, 8}}, 0.1, 8.0);
  EXPECT_EQ(out.kind, GridOutcome::Kind::kTerminal);
}

TEST(SplitGridTest, FullGridFractionBand) {
  const SubGridSpec root{{1, 1}, {32, 32}};
  int good = 0;
  const int trials = 2000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    auto s = GridSession({32, 32}, Range(1, 1024), seed);
    const auto out = SplitGridBySample(s, root, 0.1, 8.0);
    ASSERT_EQ(out.kind, GridOutcome::Kind::kRegion);
    const double f = static_cast<double>(s.IntersectionSize(out.region)) / 1024;
    good += f >= 1.0 / 8 && f <= 3.0 / 4;
  }
  EXPECT_GE(good, 0.9 * trials);
}

TEST(GridEstimatorTest, TrivialCasesAndErrors) {
  const NestedOptions options;
  auto one = GridSession({16, 16}, {77}, 1);
  auto e = EstimateGridSampleAdaptive(one, options, 8.0);
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(e.value, 1.0);
  auto empty = GridSession({16, 16}, {}, 1);
  EXPECT_EQ(EstimateGridSampleAdaptive(empty, options, 8.0).value, 0.0);
  auto deep = GridSession(std::vector<Index>(9, 2), {1}, 1);
  EXPECT_THROW(EstimateGridSampleAdaptive(deep, options, 8.0), InvalidParams);
  auto cube = CubeSession(4, {1}, 1);
  EXPECT_THROW(EstimateGridSampleAdaptive(cube, options, 8.0), InvalidParams);
}

TEST(GridEstimatorTest, ExactTelescopingAndNesting) {
  const NestedOptions options{.exact_ratios = true};
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const int d = static_cast<int>(rng.UniformIndex(1, 3));
    std::vector<Index> dims;
    for (int a = 0; a < d; ++a) dims.push_back(rng.UniformIndex(1, 24));
    const Index n = DomainShape::Grid(dims).size();
    const Index w = rng.UniformIndex(1, std::min<Index>(n, 200));
    auto s = GridSession(dims, UniformSubset(n, w, rng), rng.NextU64());
    NestedTrace<SubGridSpec> trace;
    const auto e = EstimateGridSampleAdaptive(s, options, 8.0, &trace);
    ASSERT_TRUE(e.ok()) << e.note;
    for (std::size_t j = 1; j < trace.regions.size(); ++j) {
      EXPECT_TRUE(StrictlyInside(trace.regions[j], trace.regions[j - 1]));
    }
    if (s.IntersectionSize(trace.regions.back()) == 1) {
      EXPECT_EQ(e.value, static_cast<double>(w));
    }
  }
}

TEST(GridEstimatorTest, SuccessContract) {
  const auto cal = Calibration::Defaults();
  const NestedOptions options = NestedOptionsFrom(cal, 0.5);
  for (Index w : {16, 256}) {
    int good = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      auto s = GridSession({256, 256}, RandomSet(1 << 16, w, seed), seed);
      const auto e = EstimateGridSampleAdaptive(s, options, cal.grid_kappa);
      good += e.ok() && WithinFactor(e.value, w, 0.5);
    }
    EXPECT_GE(good, 400 * 2 / 3) << w;
  }
}

TEST(GridEstimatorTest, DimensionCostRatioBounded) {
  const auto cal = Calibration::Defaults();
  const NestedOptions options = NestedOptionsFrom(cal, 1.0);
  std::vector<double> line;
  std::vector<double> grid;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto set = RandomSet(1 << 12, 64, seed);
    auto a = GridSession({4096}, set, seed);
    auto b = GridSession({64, 64}, set, seed);
    line.push_back(static_cast<double>(
        EstimateGridSampleAdaptive(a, options, cal.grid_kappa).cost()));
    grid.push_back(static_cast<double>(
        EstimateGridSampleAdaptive(b, options, cal.grid_kappa).cost()));
  }
  std::sort(line.begin(), line.end());
  std::sort(grid.begin(), grid.end());
  const double ratio = grid[30] / line[30];
  EXPECT_GT(ratio, 1.0 / 8);
  EXPECT_LT(ratio, 8.0);
}

TEST(RestrictCubeTest, SetsMaskAndValue) {
  const auto c = RestrictCube(RestrictCube(SubCubeSpec{}, 1, 1), 3, 0);
  EXPECT_EQ(c.Restrictions(), (std::map<int, int>{{1, 1}, {3, 0}}));
}

TEST(CubeCandidatesTest, FollowsHeavyChild) {
  const int d = 4;
  // Offsets with coordinate 1 = 0 (< 8): 7 of 8 points; coordinate 2 splits
  // those 4/3.
  std::vector<std::uint64_t> offsets{0, 1, 2, 3, 4, 5, 6, 12};
  const auto c = CubeCandidates(d, SubCubeSpec{}, offsets, 0.25, 0.75);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].Restrictions(), (std::map<int, int>{{1, 0}, {2, 0}}));
  EXPECT_EQ(c[1].Restrictions(), (std::map<int, int>{{1, 0}, {2, 1}}));
}

TEST(SplitCubeTest, SingletonIsTerminal) {
  auto s = CubeSession(6, {9}, 1);
  EXPECT_EQ(SplitCubeBySample(s, SubCubeSpec{}, 0.1, 8.0).kind,
            CubeOutcome::Kind::kTerminal);
}

TEST(SplitCubeTest, FullCubeHalves) {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto s = CubeSession(6, Range(1, 64), seed);
    const auto out = SplitCubeBySample(s, SubCubeSpec{}, 0.1, 8.0);
    ASSERT_EQ(out.kind, CubeOutcome::Kind::kRegion);
    const double f = s.IntersectionSize(out.region) / 64.0;
    good += f >= 1.0 / 3 && f <= 2.0 / 3;
  }
  EXPECT_GE(good, 450);
}

TEST(SplitCubeTest, AtMostTwoCandidates) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const int d = 10;
    const auto set = RandomSet(1 << d, 2 + seed % 200, seed);
    Rng rng(seed);
    std::vector<std::uint64_t> offsets;
    for (int i = 0; i < 30; ++i) {
      offsets.push_back(static_cast<std::uint64_t>(
          set[rng.UniformIndex(0, static_cast<Index>(set.size()) - 1)] - 1));
    }
    EXPECT_LE(CubeCandidates(d, SubCubeSpec{}, offsets, 0.25, 0.75).size(), 2u);
  }
}

TEST(CubeEstimatorTest, TrivialCasesAndErrors) {
  const NestedOptions options;
  auto one = CubeSession(10, {300}, 1);
  auto e = EstimateHypercubeSampleAdaptive(one, options, 8.0);
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(e.value, 1.0);
  auto empty = CubeSession(10, {}, 1);
  EXPECT_EQ(EstimateHypercubeSampleAdaptive(empty, options, 8.0).value, 0.0);
  auto grid = GridSession({4, 4}, {1}, 1);
  EXPECT_THROW(EstimateHypercubeSampleAdaptive(grid, options, 8.0),
               InvalidParams);
}

TEST(CubeEstimatorTest, ExactTelescopingAndPrefixExtension) {
  const NestedOptions options{.exact_ratios = true};
  Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    const int d = static_cast<int>(rng.UniformIndex(1, 14));
    const Index n = Index{1} << d;
    const Index w = rng.UniformIndex(1, std::min<Index>(n, 300));
    auto s = CubeSession(d, UniformSubset(n, w, rng), rng.NextU64());
    NestedTrace<SubCubeSpec> trace;
    const auto e = EstimateHypercubeSampleAdaptive(s, options, 8.0, &trace);
    if (!e.ok()) {
      // Sampling noise can leave no candidate; exact ratios cannot fix that.
      EXPECT_EQ(e.status, EstimateStatus::kFailed);
      continue;
    }
    for (std::size_t j = 0; j < trace.regions.size(); ++j) {
      const std::uint64_t mask = trace.regions[j].mask;
      EXPECT_EQ(mask & (mask + 1), 0u) << "restrictions form a prefix";
      if (j > 0) {
        EXPECT_GT(std::popcount(mask), std::popcount(trace.regions[j - 1].mask));
        EXPECT_EQ(trace.regions[j].value & trace.regions[j - 1].mask,
                  trace.regions[j - 1].value);
      }
    }
    if (s.IntersectionSize(trace.regions.back()) == 1) {
      EXPECT_EQ(e.value, static_cast<double>(w));
    }
  }
}

TEST(CubeEstimatorTest, SuccessContract) {
  const auto cal = Calibration::Defaults();
  const NestedOptions options = NestedOptionsFrom(cal, 0.5);
  for (Index w : {16, 256}) {
    int good = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      auto s = CubeSession(14, RandomSet(1 << 14, w, seed), seed);
      const auto e = EstimateHypercubeSampleAdaptive(s, options, cal.cube_kappa);
      good += e.ok() && WithinFactor(e.value, w, 0.5);
    }
    EXPECT_GE(good, 400 * 2 / 3) << w;
  }
}

}  // namespace
}  // namespace setsize
