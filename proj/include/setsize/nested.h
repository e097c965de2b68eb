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

// Shared driver for the nested-region sampling estimators (intervals,
// sub-grids, sub-cubes). Each iteration shrinks the current region R_{j−1}
// to a strict sub-region R_j and estimates b_j = |S ∩ R_{j−1}| / |S ∩ R_j|;
// the output is ∏ b̂_j once a region holds a single element of S.

#ifndef SETSIZE_NESTED_H_
#define SETSIZE_NESTED_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setsize/estimate.h"
#include "setsize/oracle.h"
#include "setsize/schedule.h"

namespace setsize {

template <typename Region>
struct SplitOutcome {
  enum class Kind { kRegion, kTerminal, kEmpty, kFailed };

  Kind kind = Kind::kFailed;
  Region region{};
  std::string note;

  static SplitOutcome Next(Region r) {
    return SplitOutcome{.kind = Kind::kRegion, .region = std::move(r)};
  }
  static SplitOutcome Terminal() { return SplitOutcome{.kind = Kind::kTerminal}; }
  static SplitOutcome Empty() { return SplitOutcome{.kind = Kind::kEmpty}; }
  static SplitOutcome Failed(std::string note) {
    return SplitOutcome{.kind = Kind::kFailed, .note = std::move(note)};
  }
};

// b̂ = numerator / denominator: m samples of the parent region, k of which
// landed in the child. A zero denominator is the ZeroHits failure.
struct RatioEstimate {
  std::int64_t numerator = 0;
  std::int64_t denominator = 0;

  bool ok() const { return denominator > 0; }
  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

// Running product of ratios. Stays an exact reduced fraction until it would
// overflow, then continues in long double.
class RatioProduct {
 public:
  void Multiply(const RatioEstimate& r);
  double value() const;
  bool exact() const { return exact_; }

 private:
  std::uint64_t num_ = 1;
  std::uint64_t den_ = 1;
  bool exact_ = true;
  long double approx_ = 1.0L;
};

template <typename Region>
struct NestedTrace {
  std::vector<Region> regions;          // R_0 ⊃ R_1 ⊃ … ⊃ R_t
  std::vector<RatioEstimate> ratios;    // b̂_1 … b̂_t
};

struct NestedOptions {
  double epsilon = 1.0;
  Schedule schedule{10.0, 3.0, 0.5};
  double iteration_kappa = 4.0;
  // Replace sampled ratios by true intersection sizes (unmetered).
  bool exact_ratios = false;
};

// κ_iter·⌈log₂ n⌉ + 16.
int NestedIterationCap(Index n, double iteration_kappa);

// m = ⌈ln(3/δ)/ε²⌉.
std::int64_t RatioSampleCount(double epsilon_j, double delta_j);

// Draws m samples of `parent` and counts those inside `child`.
template <typename Region, typename Contains>
RatioEstimate EstimateRatioBySampling(OracleSession& session,
                                      const Region& parent, std::int64_t m,
                                      Contains&& child_contains) {
  RatioEstimate r{.numerator = m};
  const SubsetSpec spec{parent};
  for (std::int64_t i = 0; i < m; ++i) {
    const auto x = session.Sample(spec);
    if (x && child_contains(*x)) ++r.denominator;
  }
  return r;
}

// `split(session, region, j)` returns SplitOutcome<Region>; `ratio(session,
// parent, child, j)` returns RatioEstimate.
template <typename Region, typename Split, typename Ratio>
Estimate RunNested(OracleSession& session, const Region& root, int cap,
                   Split&& split, Ratio&& ratio,
                   NestedTrace<Region>* trace = nullptr) {
  const OracleTally before = CountersOf(session.tally());
  auto finish = [&](Estimate e) {
    return WithCost(std::move(e), before, session.tally());
  };
  if (trace) *trace = NestedTrace<Region>{};
  if (!session.Sample(SubsetSpec{root})) return finish(Estimate::Value(0.0));

  Region current = root;
  if (trace) trace->regions.push_back(current);
  RatioProduct product;
  for (int j = 1;; ++j) {
    if (j > cap) {
      return finish(Estimate::Failure(EstimateStatus::kCapExceeded,
                                      "iteration cap reached"));
    }
    SplitOutcome<Region> out = split(session, current, j);
    using Kind = typename SplitOutcome<Region>::Kind;
    switch (out.kind) {
      case Kind::kTerminal:
        return finish(Estimate::Value(product.value()));
      case Kind::kEmpty:
        return finish(Estimate::Failure(EstimateStatus::kFailed,
                                        "empty region after a split"));
      case Kind::kFailed:
        return finish(Estimate::Failure(EstimateStatus::kFailed, out.note));
      case Kind::kRegion:
        break;
    }
    const RatioEstimate r = ratio(session, current, out.region, j);
    if (!r.ok()) {
      return finish(Estimate::Failure(EstimateStatus::kFailed, "zero hits"));
    }
    product.Multiply(r);
    current = std::move(out.region);
    if (trace) {
      trace->regions.push_back(current);
      trace->ratios.push_back(r);
    }
  }
}

}  // namespace setsize

#endif  // SETSIZE_NESTED_H_
