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

#ifndef SETSIZE_ESTIMATE_H_
#define SETSIZE_ESTIMATE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "setsize/domain.h"
#include "setsize/oracle.h"

namespace setsize {

enum class EstimateStatus {
  kOk,
  kFailed,       // the algorithm hit a budgeted failure event
  kCapExceeded,  // a hard query/sample/iteration cap was reached
};

std::string_view StatusName(EstimateStatus status);

struct Estimate {
  EstimateStatus status = EstimateStatus::kOk;
  // ŵ; meaningful only when status == kOk.
  double value = 0.0;
  std::int64_t queries = 0;
  std::int64_t samples = 0;
  // Failure reason, empty on success.
  std::string note;
  // Set by exact recovery only.
  std::optional<std::vector<Index>> recovered;

  bool ok() const { return status == EstimateStatus::kOk; }
  std::int64_t cost() const { return queries + samples; }

  static Estimate Value(double v) { return Estimate{.value = v}; }
  static Estimate Failure(EstimateStatus status, std::string note) {
    return Estimate{.status = status, .note = std::move(note)};
  }
};

// ŵ ∈ [w / (1 + ε), (1 + ε) w].
inline bool WithinFactor(double estimate, double truth, double epsilon) {
  return estimate >= truth / (1.0 + epsilon) &&
         estimate <= (1.0 + epsilon) * truth;
}

// Stamps the oracle calls issued since `before` onto `estimate`.
inline Estimate WithCost(Estimate estimate, const OracleTally& before,
                         const OracleTally& after) {
  estimate.queries = after.queries - before.queries;
  estimate.samples = after.samples - before.samples;
  return estimate;
}

// Snapshot of the counters only (no transcript copy).
inline OracleTally CountersOf(const OracleTally& tally) {
  return OracleTally{.queries = tally.queries, .samples = tally.samples};
}

}  // namespace setsize

#endif  // SETSIZE_ESTIMATE_H_
