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

// Set-size estimation when the only allowed subset is U, from collisions
// among with-replacement samples of S.

#ifndef SETSIZE_COLLISION_ESTIMATOR_H_
#define SETSIZE_COLLISION_ESTIMATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "setsize/estimate.h"
#include "setsize/oracle.h"

namespace setsize {

struct CollisionConfig {
  double epsilon = 1.0;
  double kappa = 8.0;
  std::int64_t max_samples = std::int64_t{1} << 24;

  // The refinement analysis assumes ε ≤ 1/2.
  double effective_epsilon() const { return epsilon < 0.5 ? epsilon : 0.5; }
};

enum class ProbeMode { kQuery, kSample };

// One oracle call on U: true iff S is non-empty.
bool NonemptyCheck(OracleSession& session, ProbeMode mode = ProbeMode::kQuery);

struct RoughCollision {
  EstimateStatus status = EstimateStatus::kOk;
  // 1-based index of the first sample that repeats an earlier one.
  std::int64_t first_repeat = 0;
  // first_repeat².
  double w_tilde = 0.0;
};

// Samples U until the first repeat. Requires w ≥ 1; reports kCapExceeded
// after `max_samples` distinct draws.
RoughCollision RoughEstimateByCollision(OracleSession& session,
                                        std::int64_t max_samples);

// η: number of pairs i < j with samples[i] == samples[j].
std::int64_t CountCoincidentPairs(std::span<const Index> samples);

// ⌈κ·√w̃ / ε²⌉ with ε clamped to 1/2.
std::int64_t CollisionSampleCount(double w_tilde, const CollisionConfig& config);

// Draws s = CollisionSampleCount(w̃) samples and returns C(s,2)/η. With
// η = 0 it retries once at 2s, then fails.
Estimate CollisionRefine(OracleSession& session, double w_tilde,
                         const CollisionConfig& config);

// Emptiness check, rough estimate, refinement.
Estimate EstimateUniverseSampling(OracleSession& session,
                                  const CollisionConfig& config);

// The same estimator as a resumable process issuing exactly one sample of
// U per Step(); used where it runs interleaved with another procedure.
// Step() returns the estimate (without cost fields) once finished.
class CollisionProcess {
 public:
  explicit CollisionProcess(CollisionConfig config) : config_(config) {}

  std::optional<Estimate> Step(OracleSession& session);

 private:
  enum class Phase { kCheck, kRough, kRefine };

  CollisionConfig config_;
  Phase phase_ = Phase::kCheck;
  std::vector<Index> seen_;  // stage 1, kept sorted
  std::int64_t target_ = 0;
  bool retried_ = false;
  std::vector<Index> batch_;
};

}  // namespace setsize

#endif  // SETSIZE_COLLISION_ESTIMATOR_H_
