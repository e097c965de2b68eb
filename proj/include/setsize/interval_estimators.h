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

// Estimators for a line universe [1, n] whose subset family is the
// intervals.

#ifndef SETSIZE_INTERVAL_ESTIMATORS_H_
#define SETSIZE_INTERVAL_ESTIMATORS_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "setsize/calibration.h"
#include "setsize/collision_estimator.h"
#include "setsize/estimate.h"
#include "setsize/nested.h"
#include "setsize/oracle.h"
#include "setsize/rng.h"

namespace setsize {

struct SingletonProbeConfig {
  double epsilon = 1.0;
  double kappa = 5.0;
  double cap_factor = 16.0;
  // kSample: a non-empty singleton sample counts as a positive answer.
  ProbeMode mode = ProbeMode::kQuery;
};

struct RoughSingletons {
  EstimateStatus status = EstimateStatus::kOk;
  std::int64_t first_hit = 0;  // j
  double w_tilde = 0.0;        // n / j
};

// Probes uniform singletons until the first positive one. kCapExceeded after
// `max_probes` misses.
RoughSingletons RoughEstimateSingletons(OracleSession& session, Rng& rng,
                                        std::int64_t max_probes,
                                        ProbeMode mode = ProbeMode::kQuery);

// s = ⌈κ·(n/w̃)/ε²⌉.
std::int64_t SingletonSampleCount(Index n, double w_tilde, double epsilon,
                                  double kappa);

// n · positives / s over s uniform singleton probes.
double RefineSingletons(OracleSession& session, Rng& rng, double w_tilde,
                        double epsilon, double kappa,
                        ProbeMode mode = ProbeMode::kQuery);

// Both singleton stages as one process with one oracle call per Step().
// Probe positions come from `rng` in a fixed order; answers only decide
// when each stage stops. After cap_factor·n misses one call on U decides
// between ŵ = 0 and kCapExceeded.
class SingletonProbeProcess {
 public:
  SingletonProbeProcess(Index n, SingletonProbeConfig config, Rng rng);

  std::optional<Estimate> Step(OracleSession& session);

 private:
  enum class Phase { kRough, kRefine, kConfirm };

  bool Probe(OracleSession& session);

  Index n_;
  SingletonProbeConfig config_;
  Rng rng_;
  Phase phase_ = Phase::kRough;
  std::int64_t cap_;
  std::int64_t probes_ = 0;
  std::int64_t target_ = 0;
  std::int64_t positives_ = 0;
};

// Query-tree search: a positive interval of length > 1 is split into halves
// of ⌈len/2⌉ and ⌊len/2⌋ elements, visited breadth first. One query per
// Step(); finishes with value = w and `recovered` = S in increasing order.
class BinarySearchRecovery {
 public:
  explicit BinarySearchRecovery(Index n);

  std::optional<Estimate> Step(OracleSession& session);

 private:
  std::deque<IntervalSpec> pending_;
  std::vector<Index> found_;
};

// Runs BinarySearchRecovery to completion; exact, deterministic.
Estimate ExactRecoverBinarySearch(OracleSession& session);

Estimate EstimateIntervalQueryNonadaptive(OracleSession& session,
                                          const SingletonProbeConfig& config,
                                          Rng rng);

// Alternates single queries of exact recovery and of the non-adaptive
// estimator (recovery first) and returns whichever finishes first.
Estimate EstimateIntervalQueryAdaptive(OracleSession& session,
                                       const SingletonProbeConfig& config,
                                       Rng rng);

// Alternates single samples of the collision estimator on U and of the
// singleton-probe estimator in sample mode (collision first).
Estimate EstimateIntervalSampleNonadaptive(OracleSession& session,
                                           const CollisionConfig& collision,
                                           const SingletonProbeConfig& probes,
                                           Rng rng);

// s = ⌈4·ln(3/δ)⌉.
std::int64_t MedianSplitSampleCount(double delta_j);

// Picks I_j = [lo, v_{⌈s/2⌉}] from the sorted samples v of I_prev; when
// that median equals the largest sample, the largest smaller sample is
// used instead. Terminal when all samples coincide.
SplitOutcome<IntervalSpec> ChooseMedianSplit(const IntervalSpec& prev,
                                             std::vector<Index> samples);

SplitOutcome<IntervalSpec> SplitIntervalBySampleMedian(
    OracleSession& session, const IntervalSpec& prev, double delta_j);

// b̂_j from m = ⌈ln(3/δ_j)/ε_j²⌉ samples of I_prev.
RatioEstimate EstimateIntervalRatio(OracleSession& session,
                                    const IntervalSpec& prev,
                                    const IntervalSpec& next, double epsilon_j,
                                    double delta_j);

Estimate EstimateIntervalSampleAdaptive(
    OracleSession& session, const NestedOptions& options,
    NestedTrace<IntervalSpec>* trace = nullptr);

NestedOptions NestedOptionsFrom(const Calibration& calibration, double epsilon);
SingletonProbeConfig SingletonConfigFrom(const Calibration& calibration,
                                         double epsilon,
                                         ProbeMode mode = ProbeMode::kQuery);
CollisionConfig CollisionConfigFrom(const Calibration& calibration,
                                    double epsilon);

}  // namespace setsize

#endif  // SETSIZE_INTERVAL_ESTIMATORS_H_
