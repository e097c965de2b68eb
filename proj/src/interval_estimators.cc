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

#include "setsize/interval_estimators.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace setsize {
namespace {

bool ProbeSingleton(OracleSession& session, Index x, ProbeMode mode) {
  if (mode == ProbeMode::kQuery) return session.QuerySingleton(x);
  return session.SampleSingleton(x).has_value();
}

std::int64_t ProbeCap(Index n, double cap_factor) {
  return std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(cap_factor * n)));
}

// Drives two step processes alternately until one of them finishes.
template <typename First, typename Second>
Estimate Interleave(OracleSession& session, First& first, Second& second) {
  const OracleTally before = CountersOf(session.tally());
  for (;;) {
    if (auto done = first.Step(session)) {
      return WithCost(std::move(*done), before, session.tally());
    }
    if (auto done = second.Step(session)) {
      return WithCost(std::move(*done), before, session.tally());
    }
  }
}

template <typename Process>
Estimate RunToCompletion(OracleSession& session, Process& process) {
  const OracleTally before = CountersOf(session.tally());
  for (;;) {
    if (auto done = process.Step(session)) {
      return WithCost(std::move(*done), before, session.tally());
    }
  }
}

}  // namespace

RoughSingletons RoughEstimateSingletons(OracleSession& session, Rng& rng,
                                        std::int64_t max_probes,
                                        ProbeMode mode) {
  const Index n = session.universe_size();
  for (std::int64_t j = 1; j <= max_probes; ++j) {
    if (ProbeSingleton(session, rng.UniformIndex(1, n), mode)) {
      return {.first_hit = j, .w_tilde = static_cast<double>(n) / j};
    }
  }
  return {.status = EstimateStatus::kCapExceeded, .first_hit = max_probes};
}

std::int64_t SingletonSampleCount(Index n, double w_tilde, double epsilon,
                                  double kappa) {
  return std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(
             kappa * (static_cast<double>(n) / w_tilde) / (epsilon * epsilon))));
}

double RefineSingletons(OracleSession& session, Rng& rng, double w_tilde,
                        double epsilon, double kappa, ProbeMode mode) {
  const Index n = session.universe_size();
  const std::int64_t s = SingletonSampleCount(n, w_tilde, epsilon, kappa);
  std::int64_t positives = 0;
  for (std::int64_t i = 0; i < s; ++i) {
    positives += ProbeSingleton(session, rng.UniformIndex(1, n), mode);
  }
  return static_cast<double>(n) * static_cast<double>(positives) /
         static_cast<double>(s);
}

SingletonProbeProcess::SingletonProbeProcess(Index n,
                                             SingletonProbeConfig config,
                                             Rng rng)
    : n_(n),
      config_(config),
      rng_(rng),
      cap_(ProbeCap(n, config.cap_factor)) {}

bool SingletonProbeProcess::Probe(OracleSession& session) {
  return ProbeSingleton(session, rng_.UniformIndex(1, n_), config_.mode);
}

std::optional<Estimate> SingletonProbeProcess::Step(OracleSession& session) {
  switch (phase_) {
    case Phase::kRough:
      ++probes_;
      if (Probe(session)) {
        const double w_tilde = static_cast<double>(n_) / probes_;
        target_ = SingletonSampleCount(n_, w_tilde, config_.epsilon,
                                       config_.kappa);
        probes_ = 0;
        phase_ = Phase::kRefine;
      } else if (probes_ >= cap_) {
        phase_ = Phase::kConfirm;
      }
      return std::nullopt;
    case Phase::kRefine:
      ++probes_;
      positives_ += Probe(session);
      if (probes_ < target_) return std::nullopt;
      return Estimate::Value(static_cast<double>(n_) *
                             static_cast<double>(positives_) /
                             static_cast<double>(target_));
    case Phase::kConfirm:
      if (!NonemptyCheck(session, config_.mode)) return Estimate::Value(0.0);
      return Estimate::Failure(EstimateStatus::kCapExceeded,
                               "no positive singleton within the probe cap");
  }
  return std::nullopt;
}

BinarySearchRecovery::BinarySearchRecovery(Index n) {
  pending_.push_back(IntervalSpec{1, n});
}

std::optional<Estimate> BinarySearchRecovery::Step(OracleSession& session) {
  const IntervalSpec node = pending_.front();
  pending_.pop_front();
  if (session.Query(node)) {
    if (node.lo == node.hi) {
      found_.push_back(node.lo);
    } else {
      const Index mid = node.lo + (node.hi - node.lo + 1 + 1) / 2 - 1;
      pending_.push_back(IntervalSpec{node.lo, mid});
      pending_.push_back(IntervalSpec{mid + 1, node.hi});
    }
  }
  if (!pending_.empty()) return std::nullopt;
  std::sort(found_.begin(), found_.end());
  Estimate e = Estimate::Value(static_cast<double>(found_.size()));
  e.recovered = std::move(found_);
  return e;
}

Estimate ExactRecoverBinarySearch(OracleSession& session) {
  BinarySearchRecovery recovery(session.universe_size());
  return RunToCompletion(session, recovery);
}

Estimate EstimateIntervalQueryNonadaptive(OracleSession& session,
                                          const SingletonProbeConfig& config,
                                          Rng rng) {
  const OracleTally before = CountersOf(session.tally());
  const Index n = session.universe_size();
  const RoughSingletons rough = RoughEstimateSingletons(
      session, rng, ProbeCap(n, config.cap_factor), ProbeMode::kQuery);
  Estimate result;
  if (rough.status != EstimateStatus::kOk) {
    result = NonemptyCheck(session, ProbeMode::kQuery)
                 ? Estimate::Failure(EstimateStatus::kCapExceeded,
                                     "no positive singleton within the probe cap")
                 : Estimate::Value(0.0);
  } else {
    result = Estimate::Value(RefineSingletons(session, rng, rough.w_tilde,
                                              config.epsilon, config.kappa,
                                              ProbeMode::kQuery));
  }
  return WithCost(std::move(result), before, session.tally());
}

Estimate EstimateIntervalQueryAdaptive(OracleSession& session,
                                       const SingletonProbeConfig& config,
                                       Rng rng) {
  SingletonProbeConfig c = config;
  c.mode = ProbeMode::kQuery;
  BinarySearchRecovery recovery(session.universe_size());
  SingletonProbeProcess probes(session.universe_size(), c, rng);
  return Interleave(session, recovery, probes);
}

Estimate EstimateIntervalSampleNonadaptive(OracleSession& session,
                                           const CollisionConfig& collision,
                                           const SingletonProbeConfig& probes,
                                           Rng rng) {
  SingletonProbeConfig c = probes;
  c.mode = ProbeMode::kSample;
  CollisionProcess first(collision);
  SingletonProbeProcess second(session.universe_size(), c, rng);
  return Interleave(session, first, second);
}

std::int64_t MedianSplitSampleCount(double delta_j) {
  return static_cast<std::int64_t>(std::ceil(4.0 * std::log(3.0 / delta_j)));
}

SplitOutcome<IntervalSpec> ChooseMedianSplit(const IntervalSpec& prev,
                                             std::vector<Index> samples) {
  std::sort(samples.begin(), samples.end());
  if (samples.empty() || samples.front() == samples.back()) {
    return SplitOutcome<IntervalSpec>::Terminal();
  }
  const std::size_t s = samples.size();
  Index v = samples[(s + 1) / 2 - 1];
  if (v == samples.back()) {
    v = *(std::lower_bound(samples.begin(), samples.end(), v) - 1);
  }
  return SplitOutcome<IntervalSpec>::Next(IntervalSpec{prev.lo, v});
}

SplitOutcome<IntervalSpec> SplitIntervalBySampleMedian(
    OracleSession& session, const IntervalSpec& prev, double delta_j) {
  const std::int64_t s = MedianSplitSampleCount(delta_j);
  std::vector<Index> samples;
  samples.reserve(s);
  for (std::int64_t i = 0; i < s; ++i) {
    const auto x = session.Sample(prev);
    if (!x) return SplitOutcome<IntervalSpec>::Empty();
    samples.push_back(*x);
  }
  return ChooseMedianSplit(prev, std::move(samples));
}

RatioEstimate EstimateIntervalRatio(OracleSession& session,
                                    const IntervalSpec& prev,
                                    const IntervalSpec& next, double epsilon_j,
                                    double delta_j) {
  return EstimateRatioBySampling(
      session, prev, RatioSampleCount(epsilon_j, delta_j),
      [&](Index x) { return x >= next.lo && x <= next.hi; });
}

Estimate EstimateIntervalSampleAdaptive(OracleSession& session,
                                        const NestedOptions& options,
                                        NestedTrace<IntervalSpec>* trace) {
  const Index n = session.universe_size();
  const Schedule& schedule = options.schedule;
  auto split = [&](OracleSession& s, const IntervalSpec& prev, int j) {
    return SplitIntervalBySampleMedian(s, prev, schedule.Delta(j));
  };
  auto ratio = [&](OracleSession& s, const IntervalSpec& prev,
                   const IntervalSpec& next, int j) {
    if (options.exact_ratios) {
      return RatioEstimate{s.IntersectionSize(prev), s.IntersectionSize(next)};
    }
    return EstimateIntervalRatio(s, prev, next,
                                 schedule.Eps(options.epsilon, j),
                                 schedule.Delta(j));
  };
  return RunNested(session, IntervalSpec{1, n},
                   NestedIterationCap(n, options.iteration_kappa), split,
                   ratio, trace);
}

NestedOptions NestedOptionsFrom(const Calibration& calibration,
                                double epsilon) {
  return NestedOptions{.epsilon = epsilon,
                       .schedule = calibration.ratio_schedule,
                       .iteration_kappa = calibration.iteration_kappa};
}

SingletonProbeConfig SingletonConfigFrom(const Calibration& calibration,
                                         double epsilon, ProbeMode mode) {
  return SingletonProbeConfig{.epsilon = epsilon,
                              .kappa = calibration.singleton_kappa,
                              .cap_factor = calibration.singleton_cap_factor,
                              .mode = mode};
}

CollisionConfig CollisionConfigFrom(const Calibration& calibration,
                                    double epsilon) {
  return CollisionConfig{.epsilon = epsilon,
                         .kappa = calibration.collision_kappa,
                         .max_samples = calibration.collision_max_samples};
}

}  // namespace setsize
