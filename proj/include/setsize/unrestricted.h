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

// Estimators for the unrestricted family: queries on random subsets T with
// inclusion probability 1/e are negative with probability (1 − 1/e)^w, which
// is compared against ρ = (1 − 1/e)^e for a ladder of hypotheses e.

#ifndef SETSIZE_UNRESTRICTED_H_
#define SETSIZE_UNRESTRICTED_H_

#include <cstdint>
#include <vector>

#include "setsize/calibration.h"
#include "setsize/domain.h"
#include "setsize/estimate.h"
#include "setsize/oracle.h"
#include "setsize/rng.h"

namespace setsize {

struct UnrestrictedConfig {
  double epsilon = 1.0;
  double c = 12.0;        // probe count constant
  double c_prime = 12.0;  // window margin ε/c′ when ε < 1

  // ε < 1 uses the fine ladder e_i = ⌊(1+ε/4)^{i−1}⌋.
  bool fine() const { return epsilon < 1.0; }
};

UnrestrictedConfig UnrestrictedConfigFrom(const Calibration& calibration,
                                          double epsilon);

// e_i: 2^{i−1}, or ⌊(1+ε/4)^{i−1}⌋ when ε < 1. e_1 = 1.
Index Hypothesis(int i, double epsilon);

// (1 − 1/e)^e; 0 for e = 1.
double Rho(Index e);

struct LevelParams {
  int i = 1;
  Index e = 1;
  double rho = 0.0;
  double delta = 0.1;    // 1/(10 i²)
  std::int64_t t = 0;    // probes
};

// t = ⌈c·ln(1/δ_i)⌉, divided by ε² when ε < 1.
LevelParams MakeLevel(int i, const UnrestrictedConfig& config);

// Smallest level whose hypothesis is at least `e`.
int LevelAtLeast(Index e, double epsilon);

// Independent inclusion of every element of [1, n] with probability p.
ExplicitSpec MakeRandomSubset(Rng& rng, Index n, double p);

// The same distribution as a lazily evaluated predicate spec; consumes one
// draw from `rng`.
RandomSubsetSpec DrawRandomSubset(Rng& rng, double p);

// Fraction of t_i random subsets (inclusion 1/e_i) that miss S.
double ProbeLevel(OracleSession& session, const LevelParams& level, Rng& rng);

struct Window {
  double low = 0.0;
  double high = 0.0;
  bool Contains(double x) const { return x >= low && x <= high; }
};

// ε = 1: [ρ^{√2} − 0.02, ρ^{1/√2} + 0.02].
// ε < 1: [ρ^{1+ε/4} − ε/c′, ρ^{1/(1+ε/4)} + ε/c′].
// The negative rate at hypothesis e is ρ^{w/e}, so the window brackets
// w/e within a factor √2 (resp. 1 + ε/4) of 1. Requires e ≥ 2.
Window AcceptWindow(const LevelParams& level, const UnrestrictedConfig& config);

// Ascending ladder from the first level with e ≥ 2. A rate above the window
// at that first level means w = 1.
Estimate EstimateUnrestrictedNonadaptive(OracleSession& session,
                                         const UnrestrictedConfig& config,
                                         Rng rng);

struct AdaptiveTrace {
  int l_star = -1;         // stage-1 stopping ℓ
  int bracket_lo = 0;      // stage-2 level bracket
  int bracket_hi = 0;
  std::int64_t stage1_queries = 0;
};

// Stage 1 probes levels 2^ℓ, ℓ = 1, 2, … until the rate exceeds
// ρ_{2^ℓ}^{1/2} − 0.01; stage 2 binary-searches levels between
// max(2, 2^{ℓ*−1} − 1) and 2^{ℓ*} (translated to the fine ladder when
// ε < 1), moving up on a rate below the window and down above it.
Estimate EstimateUnrestrictedAdaptive(OracleSession& session,
                                      const UnrestrictedConfig& config, Rng rng,
                                      AdaptiveTrace* trace = nullptr);

// Descending ladder from the first level with e ≥ n.
Estimate EstimateUnrestrictedDescending(OracleSession& session,
                                        const UnrestrictedConfig& config,
                                        Rng rng);

}  // namespace setsize

#endif  // SETSIZE_UNRESTRICTED_H_
