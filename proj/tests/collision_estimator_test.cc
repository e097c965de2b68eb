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
#include "setsize/collision_estimator.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "support/stats.h"

namespace setsize {
namespace {

std::vector<Index> FirstK(Index k) {
  std::vector<Index> s(k);
  std::iota(s.begin(), s.end(), 1);
  return s;
}

OracleSession UniverseSession(Index w, Index n, std::uint64_t seed) {
  return OracleSession(DomainShape::Line(n), HiddenSet(FirstK(w), n),
                       SubsetFamily::kUniverseOnly, seed);
}

TEST(NonemptyCheckTest, Examples) {
  for (auto mode : {ProbeMode::kQuery, ProbeMode::kSample}) {
    auto empty = UniverseSession(0, 16, 1);
    EXPECT_FALSE(NonemptyCheck(empty, mode));
    auto one = UniverseSession(1, 16, 1);
    EXPECT_TRUE(NonemptyCheck(one, mode));
    auto full = UniverseSession(16, 16, 1);
    EXPECT_TRUE(NonemptyCheck(full, mode));
    EXPECT_EQ(empty.tally().total(), 1);
    EXPECT_EQ(full.tally().total(), 1);
  }
}

TEST(RoughCollisionTest, SingletonCollidesAtTwo) {
  auto s = UniverseSession(1, 100, 3);
  const auto r = RoughEstimateByCollision(s, 1000);
  EXPECT_EQ(r.first_repeat, 2);
  EXPECT_EQ(r.w_tilde, 4.0);
}

TEST(RoughCollisionTest, Pigeonhole) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    auto s = UniverseSession(4, 100, seed);
    const auto r = RoughEstimateByCollision(s, 1000);
    ASSERT_EQ(r.status, EstimateStatus::kOk);
    EXPECT_LE(r.first_repeat, 5);
    EXPECT_LE(r.w_tilde, 25.0);
    EXPECT_EQ(s.tally().samples, r.first_repeat);
  }
}

TEST(RoughCollisionTest, WithinFactorSix) {
  int outside = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    auto s = UniverseSession(100, 1000, seed);
    const auto r = RoughEstimateByCollision(s, 1000);
    if (r.w_tilde < 100.0 / 6 || r.w_tilde > 600.0) ++outside;
  }
  EXPECT_LE(outside, 2000 / 6);
}

TEST(RoughCollisionTest, CapExceeded) {
  auto s = UniverseSession(1 << 16, 1 << 16, 4);
  const auto r = RoughEstimateByCollision(s, 10);
  EXPECT_EQ(r.status, EstimateStatus::kCapExceeded);
  EXPECT_EQ(s.tally().samples, 10);
}

TEST(CoincidentPairsTest, Arithmetic) {
  const std::vector<Index> aabb{7, 7, 3, 3};
  EXPECT_EQ(CountCoincidentPairs(aabb), 2);
  // ŵ = C(4,2)/η = 6/2.
  EXPECT_EQ(6.0 / CountCoincidentPairs(aabb), 3.0);
  const std::vector<Index> same(10, 4);
  EXPECT_EQ(CountCoincidentPairs(same), 45);
  const std::vector<Index> distinct{1, 2, 3};
  EXPECT_EQ(CountCoincidentPairs(distinct), 0);
}

TEST(CoincidentPairsTest, MatchesBruteForce) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::vector<Index> v(rng.UniformIndex(0, 40));
    for (auto& x : v) x = rng.UniformIndex(1, 12);
    std::int64_t brute = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) brute += v[i] == v[j];
    }
    EXPECT_EQ(CountCoincidentPairs(v), brute);
  }
}

TEST(CollisionSampleCountTest, RoundsUpAndClampsEpsilon) {
  CollisionConfig c{.epsilon = 0.5, .kappa = 8};
  EXPECT_EQ(CollisionSampleCount(100.0, c), 320);
  c.kappa = 1.1;
  EXPECT_EQ(CollisionSampleCount(2.0, c), 7);  // 1.1·√2·4 = 6.22…
  CollisionConfig loose{.epsilon = 1.0, .kappa = 8};
  CollisionConfig half{.epsilon = 0.5, .kappa = 8};
  EXPECT_EQ(CollisionSampleCount(400.0, loose),
            CollisionSampleCount(400.0, half));
}

// Exp[η] = C(s,2)/w for s uniform draws from w elements.
TEST(CollisionRefineTest, EtaMeanMatchesExpectation) {
  for (auto [w, s] : {std::pair<Index, int>{10, 20}, {50, 40}}) {
    auto session = UniverseSession(w, 1000, 12 + w);
    std::vector<double> etas;
    for (int t = 0; t < 10000; ++t) {
      std::vector<Index> batch;
      for (int i = 0; i < s; ++i) batch.push_back(*session.Sample(WholeSpec{}));
      etas.push_back(static_cast<double>(CountCoincidentPairs(batch)));
    }
    const double expected = 0.5 * s * (s - 1) / static_cast<double>(w);
    EXPECT_NEAR(testing::Mean(etas), expected, 3 * testing::StandardError(etas))
        << "w = " << w << ", s = " << s;
  }
}

TEST(CollisionRefineTest, SingletonGivesOne) {
  auto s = UniverseSession(1, 50, 5);
  const auto e = CollisionRefine(s, 4.0, CollisionConfig{.epsilon = 0.5});
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(e.value, 1.0);
}

TEST(CollisionRefineTest, ZeroCollisionsRetriesOnceThenFails) {
  auto s = UniverseSession(1 << 20, 1 << 20, 6);
  const CollisionConfig c{.epsilon = 0.5, .kappa = 8};
  const auto e = CollisionRefine(s, 1.0, c);
  EXPECT_EQ(e.status, EstimateStatus::kFailed);
  EXPECT_EQ(s.tally().samples, 3 * CollisionSampleCount(1.0, c));
}

TEST(CollisionRefineTest, ContractAtW256) {
  const CollisionConfig c{.epsilon = 0.5, .kappa = 8};
  int good = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto s = UniverseSession(256, 4096, seed);
    const auto rough = RoughEstimateByCollision(s, 1 << 20);
    const auto e = CollisionRefine(s, rough.w_tilde, c);
    good += e.ok() && WithinFactor(e.value, 256, 0.5);
  }
  EXPECT_GE(good, 500 * 2 / 3);
}

TEST(EstimateUniverseSamplingTest, EmptyUsesOneSample) {
  auto s = UniverseSession(0, 64, 1);
  const auto e = EstimateUniverseSampling(s, CollisionConfig{});
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(e.samples, 1);
  EXPECT_EQ(e.queries, 0);
}

TEST(EstimateUniverseSamplingTest, SingletonIsExact) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s = UniverseSession(1, 64, seed);
    const auto e = EstimateUniverseSampling(s, CollisionConfig{.epsilon = 0.3});
    ASSERT_TRUE(e.ok());
    EXPECT_EQ(e.value, 1.0);
  }
}

TEST(EstimateUniverseSamplingTest, CapExceeded) {
  auto s = UniverseSession(1 << 16, 1 << 16, 2);
  const auto e = EstimateUniverseSampling(
      s, CollisionConfig{.epsilon = 1.0, .max_samples = 8});
  EXPECT_EQ(e.status, EstimateStatus::kCapExceeded);
}

TEST(EstimateUniverseSamplingTest, SampleCountGrowsLikeSqrtW) {
  const CollisionConfig c{.epsilon = 1.0};
  std::vector<double> medians;
  for (Index w : {16, 64, 256, 1024}) {
    std::vector<double> costs;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      auto s = UniverseSession(w, 1 << 14, DeriveSeed(seed, w));
      costs.push_back(
          static_cast<double>(EstimateUniverseSampling(s, c).samples));
    }
    std::nth_element(costs.begin(), costs.begin() + 150, costs.end());
    medians.push_back(costs[150]);
  }
  for (std::size_t k = 1; k < medians.size(); ++k) {
    const double ratio = medians[k] / medians[k - 1];
    EXPECT_GE(ratio, 1.0) << k;
    EXPECT_LE(ratio, 4.0) << k;
  }
}

TEST(EstimateUniverseSamplingTest, TailDecaysGeometrically) {
  const CollisionConfig c{.epsilon = 0.5, .kappa = 8};
  const Index w = 256;
  const double unit = c.kappa * std::sqrt(static_cast<double>(w)) /
                      (c.effective_epsilon() * c.effective_epsilon());
  int over2 = 0;
  int over4 = 0;
  const int trials = 2000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    auto s = UniverseSession(w, 4096, seed);
    const auto total = EstimateUniverseSampling(s, c).samples;
    over2 += total > 2 * unit;
    over4 += total > 4 * unit;
  }
  EXPECT_LT(over2, trials / 2);
  EXPECT_LE(over4, over2 / 2);
}

}  // namespace
}  // namespace setsize
