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

#include "setsize/unrestricted.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>

namespace setsize {
namespace {

constexpr int kMaxLevelExponent = 62;

// Hypotheses above this are never needed: w ≤ n ≤ 2^{⌈log₂ n⌉}.
Index LadderTop(Index n) {
  const int log_n =
      n <= 1 ? 0 : std::bit_width(static_cast<std::uint64_t>(n - 1));
  return Index{1} << std::min(log_n + 1, kMaxLevelExponent);
}

Estimate Done(Estimate e, const OracleTally& before, OracleSession& session) {
  return WithCost(std::move(e), before, session.tally());
}

}  // namespace

UnrestrictedConfig UnrestrictedConfigFrom(const Calibration& calibration,
                                          double epsilon) {
  return UnrestrictedConfig{.epsilon = epsilon,
                            .c = calibration.probe_c,
                            .c_prime = calibration.window_c_prime};
}

Index Hypothesis(int i, double epsilon) {
  if (i <= 1) return 1;
  if (epsilon >= 1.0) {
    return Index{1} << std::min(i - 1, kMaxLevelExponent);
  }
  const long double e =
      std::floor(std::pow(1.0L + epsilon / 4.0L, static_cast<long double>(i - 1)));
  const auto cap = static_cast<long double>(Index{1} << kMaxLevelExponent);
  return static_cast<Index>(std::min(e, cap));
}

double Rho(Index e) {
  if (e <= 1) return 0.0;
  const double x = static_cast<double>(e);
  return std::exp(x * std::log1p(-1.0 / x));
}

LevelParams MakeLevel(int i, const UnrestrictedConfig& config) {
  LevelParams level;
  level.i = i;
  level.e = Hypothesis(i, config.epsilon);
  level.rho = Rho(level.e);
  level.delta = 1.0 / (10.0 * i * i);
  double t = config.c * std::log(1.0 / level.delta);
  if (config.fine()) t /= config.epsilon * config.epsilon;
  level.t = static_cast<std::int64_t>(std::ceil(t));
  return level;
}

int LevelAtLeast(Index e, double epsilon) {
  int i = 1;
  while (Hypothesis(i, epsilon) < e) ++i;
  return i;
}

ExplicitSpec MakeRandomSubset(Rng& rng, Index n, double p) {
  auto bits = std::make_shared<std::vector<bool>>(n);
  for (Index x = 0; x < n; ++x) (*bits)[x] = p >= 1.0 || rng.Bernoulli(p);
  return ExplicitSpec{std::move(bits)};
}

RandomSubsetSpec DrawRandomSubset(Rng& rng, double p) {
  return RandomSubsetSpec{rng.NextU64(), p};
}

double ProbeLevel(OracleSession& session, const LevelParams& level, Rng& rng) {
  const double p = 1.0 / static_cast<double>(level.e);
  std::int64_t negatives = 0;
  for (std::int64_t j = 0; j < level.t; ++j) {
    negatives += !session.Query(DrawRandomSubset(rng, p));
  }
  return static_cast<double>(negatives) / static_cast<double>(level.t);
}

Window AcceptWindow(const LevelParams& level, const UnrestrictedConfig& config) {
  const double rho = level.rho;
  if (!config.fine()) {
    return Window{std::pow(rho, std::sqrt(2.0)) - 0.02,
                  std::pow(rho, 1.0 / std::sqrt(2.0)) + 0.02};
  }
  const double g = 1.0 + config.epsilon / 4.0;
  const double margin = config.epsilon / config.c_prime;
  return Window{std::pow(rho, g) - margin, std::pow(rho, 1.0 / g) + margin};
}

Estimate EstimateUnrestrictedNonadaptive(OracleSession& session,
                                         const UnrestrictedConfig& config,
                                         Rng rng) {
  const OracleTally before = CountersOf(session.tally());
  if (!session.Query(WholeSpec{})) {
    return Done(Estimate::Value(0.0), before, session);
  }
  const Index top = LadderTop(session.universe_size());
  const int first = LevelAtLeast(2, config.epsilon);
  for (int i = first;; ++i) {
    const LevelParams level = MakeLevel(i, config);
    if (level.e > top) break;
    const double p_hat = ProbeLevel(session, level, rng);
    const Window window = AcceptWindow(level, config);
    if (window.Contains(p_hat)) {
      return Done(Estimate::Value(static_cast<double>(level.e)), before,
                  session);
    }
    if (i == first && p_hat > window.high) {
      return Done(Estimate::Value(1.0), before, session);
    }
  }
  return Done(Estimate::Failure(EstimateStatus::kCapExceeded,
                                "no level accepted"),
              before, session);
}

Estimate EstimateUnrestrictedAdaptive(OracleSession& session,
                                      const UnrestrictedConfig& config, Rng rng,
                                      AdaptiveTrace* trace) {
  const OracleTally before = CountersOf(session.tally());
  if (trace) *trace = AdaptiveTrace{};
  if (!session.Query(WholeSpec{})) {
    return Done(Estimate::Value(0.0), before, session);
  }
  const Index top = LadderTop(session.universe_size());

  // Stage 1 on the coarse ladder e = 2^{i−1}.
  int l_star = -1;
  for (int l = 1; (1 << l) - 1 <= kMaxLevelExponent; ++l) {
    const int i = 1 << l;
    LevelParams level;
    level.i = i;
    level.e = Hypothesis(i, 1.0);
    level.rho = Rho(level.e);
    level.delta = 1.0 / (10.0 * l * l);
    level.t = static_cast<std::int64_t>(
        std::ceil(config.c * std::log(1.0 / level.delta)));
    const double p_hat = ProbeLevel(session, level, rng);
    if (p_hat > std::sqrt(level.rho) - 0.01) {
      l_star = l;
      break;
    }
    if (level.e >= top) break;
  }
  if (trace) trace->stage1_queries = session.tally().queries - before.queries;
  if (l_star < 0) {
    return Done(Estimate::Failure(EstimateStatus::kCapExceeded,
                                  "doubling stage never passed"),
                before, session);
  }

  // Stage 2: binary search over levels of the working ladder.
  const int coarse_lo = std::max(2, (1 << (l_star - 1)) - 1);
  const int coarse_hi = 1 << l_star;
  const int lowest = LevelAtLeast(2, config.epsilon);
  int lo = coarse_lo;
  int hi = coarse_hi;
  if (config.fine()) {
    lo = LevelAtLeast(std::max<Index>(2, Hypothesis(coarse_lo, 1.0)),
                      config.epsilon);
    hi = LevelAtLeast(Hypothesis(coarse_hi, 1.0), config.epsilon);
  }
  if (trace) {
    trace->l_star = l_star;
    trace->bracket_lo = lo;
    trace->bracket_hi = hi;
  }
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    const LevelParams level = MakeLevel(mid, config);
    const double p_hat = ProbeLevel(session, level, rng);
    const Window window = AcceptWindow(level, config);
    if (window.Contains(p_hat)) {
      return Done(Estimate::Value(static_cast<double>(level.e)), before,
                  session);
    }
    if (p_hat > window.high) {
      if (mid == lowest) return Done(Estimate::Value(1.0), before, session);
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  return Done(Estimate::Failure(EstimateStatus::kFailed, "empty bracket"),
              before, session);
}

Estimate EstimateUnrestrictedDescending(OracleSession& session,
                                        const UnrestrictedConfig& config,
                                        Rng rng) {
  const OracleTally before = CountersOf(session.tally());
  if (!session.Query(WholeSpec{})) {
    return Done(Estimate::Value(0.0), before, session);
  }
  const int lowest = LevelAtLeast(2, config.epsilon);
  const int start =
      std::max(lowest, LevelAtLeast(session.universe_size(), config.epsilon));
  for (int i = start; i >= lowest; --i) {
    const LevelParams level = MakeLevel(i, config);
    const double p_hat = ProbeLevel(session, level, rng);
    const Window window = AcceptWindow(level, config);
    if (window.Contains(p_hat)) {
      return Done(Estimate::Value(static_cast<double>(level.e)), before,
                  session);
    }
    if (i == lowest && p_hat > window.high) {
      return Done(Estimate::Value(1.0), before, session);
    }
  }
  return Done(Estimate::Failure(EstimateStatus::kCapExceeded,
                                "no level accepted"),
              before, session);
}

}  // namespace setsize
