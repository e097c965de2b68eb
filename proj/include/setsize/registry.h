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

// Name-addressable table of every estimator, used by the bench harness,
// the command-line tool and the Python module.

#ifndef SETSIZE_REGISTRY_H_
#define SETSIZE_REGISTRY_H_

#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "setsize/calibration.h"
#include "setsize/domain.h"
#include "setsize/estimate.h"
#include "setsize/oracle.h"
#include "setsize/rng.h"

namespace setsize {

enum class ShapeRequirement { kAny, kLine, kGrid, kCube };

using EstimatorFn = std::function<Estimate(
    OracleSession& session, double epsilon, const Calibration& calibration,
    Rng& rng)>;

struct EstimatorInfo {
  std::string_view id;
  SubsetFamily family;  // smallest family the estimator needs
  ShapeRequirement shape;
  bool exact = false;   // success means exact recovery of S
  std::string_view summary;
  EstimatorFn run;
};

std::span<const EstimatorInfo> Estimators();

// Throws ConfigError listing the known ids.
const EstimatorInfo& FindEstimator(std::string_view id);

// True if every spec of `needed` is also allowed under `family`.
bool FamilyCovers(SubsetFamily family, SubsetFamily needed);

// Throws ConfigError when `info` cannot run on `shape` under `family`.
void CheckCompatible(const EstimatorInfo& info, const DomainShape& shape,
                     SubsetFamily family);

}  // namespace setsize

#endif  // SETSIZE_REGISTRY_H_
