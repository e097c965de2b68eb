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
#include <unordered_set>

namespace setsize {
namespace {

double PairCount(std::int64_t s) {
  return 0.5 * static_cast<double>(s) * static_cast<double>(s - 1);
}

}  // namespace

bool NonemptyCheck(OracleSession& session, ProbeMode mode) {
  if (mode == ProbeMode::kQuery) return session.Query(WholeSpec{});
  return session.Sample(WholeSpec{}).has_value();
}

RoughCollision RoughEstimateByCollision(OracleSession& session,
                                        std::int64_t max_samples) {
  std::unordered_set<Index> seen;
  for (std::int64_t j = 1;; ++j) {
    if (j > max_samples) {
      return {.status = EstimateStatus::kCapExceeded, .first_repeat = j - 1};
    }
    const auto x = session.Sample(WholeSpec{});
    if (!x) return {.status = EstimateStatus::kFailed, .first_repeat = j};
    if (!seen.insert(*x).second) {
      return {.first_repeat = j, .w_tilde = static_cast<double>(j) * j};
    }
  }
}

std::int64_t CountCoincidentPairs(std::span<const Index> samples) {
  std::vector<Index> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto run = static_cast<std::int64_t>(j - i);
    pairs += run * (run - 1) / 2;
    i = j;
  }
  return pairs;
}

std::int64_t CollisionSampleCount(double w_tilde,
                                  const CollisionConfig& config) {
  const double eps = config.effective_epsilon();
  return std::max<std::int64_t>(
      2, static_cast<std::int64_t>(
             std::ceil(config.kappa * std::sqrt(w_tilde) / (eps * eps))));
}

Estimate CollisionRefine(OracleSession& session, double w_tilde,
                         const CollisionConfig& config) {
  std::int64_t s = CollisionSampleCount(w_tilde, config);
  for (int attempt = 0; attempt < 2; ++attempt, s *= 2) {
    std::vector<Index> batch;
    batch.reserve(s);
    for (std::int64_t i = 0; i < s; ++i) {
      const auto x = session.Sample(WholeSpec{});
      if (!x) return Estimate::Failure(EstimateStatus::kFailed, "empty set");
      batch.push_back(*x);
    }
    const std::int64_t eta = CountCoincidentPairs(batch);
    if (eta > 0) return Estimate::Value(PairCount(s) / static_cast<double>(eta));
  }
  return Estimate::Failure(EstimateStatus::kFailed,
                           "no collisions after doubling the sample");
}

Estimate EstimateUniverseSampling(OracleSession& session,
                                  const CollisionConfig& config) {
  const OracleTally before = CountersOf(session.tally());
  CollisionProcess process(config);
  std::optional<Estimate> done;
  while (!(done = process.Step(session))) {
  }
  return WithCost(std::move(*done), before, session.tally());
}

std::optional<Estimate> CollisionProcess::Step(OracleSession& session) {
  const auto x = session.Sample(WholeSpec{});
  switch (phase_) {
    case Phase::kCheck:
      if (!x) return Estimate::Value(0.0);
      phase_ = Phase::kRough;
      return std::nullopt;
    case Phase::kRough: {
      const auto j = static_cast<std::int64_t>(seen_.size()) + 1;
      const auto pos = std::lower_bound(seen_.begin(), seen_.end(), *x);
      if (pos != seen_.end() && *pos == *x) {
        target_ = CollisionSampleCount(static_cast<double>(j) * j, config_);
        seen_.clear();
        seen_.shrink_to_fit();
        batch_.reserve(target_);
        phase_ = Phase::kRefine;
        return std::nullopt;
      }
      if (j >= config_.max_samples) {
        return Estimate::Failure(EstimateStatus::kCapExceeded,
                                 "no collision within the sample cap");
      }
      seen_.insert(pos, *x);
      return std::nullopt;
    }
    case Phase::kRefine: {
      batch_.push_back(*x);
      if (static_cast<std::int64_t>(batch_.size()) < target_) {
        return std::nullopt;
      }
      const std::int64_t eta = CountCoincidentPairs(batch_);
      if (eta > 0) {
        return Estimate::Value(PairCount(target_) / static_cast<double>(eta));
      }
      if (retried_) {
        return Estimate::Failure(EstimateStatus::kFailed,
                                 "no collisions after doubling the sample");
      }
      retried_ = true;
      target_ *= 2;
      batch_.clear();
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace setsize
