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

#include "setsize/registry.h"

#include <array>

#include "setsize/collision_estimator.h"
#include "setsize/interval_estimators.h"
#include "setsize/structured.h"
#include "setsize/unrestricted.h"

namespace setsize {
namespace {

const std::array<EstimatorInfo, 11>& Table() {
  static const std::array<EstimatorInfo, 11> table = {{
      {"collision", SubsetFamily::kUniverseOnly, ShapeRequirement::kAny, false,
       "collision counting on samples of U",
       [](OracleSession& s, double eps, const Calibration& c, Rng&) {
         return EstimateUniverseSampling(s, CollisionConfigFrom(c, eps));
       }},
      {"interval_query_na", SubsetFamily::kIntervals, ShapeRequirement::kLine,
       false, "non-adaptive singleton queries",
       [](OracleSession& s, double eps, const Calibration& c, Rng& rng) {
         return EstimateIntervalQueryNonadaptive(s, SingletonConfigFrom(c, eps),
                                                 rng);
       }},
      {"interval_query_adaptive", SubsetFamily::kIntervals,
       ShapeRequirement::kLine, false,
       "binary-search recovery interleaved with singleton queries",
       [](OracleSession& s, double eps, const Calibration& c, Rng& rng) {
         return EstimateIntervalQueryAdaptive(s, SingletonConfigFrom(c, eps),
                                              rng);
       }},
      {"exact_recover", SubsetFamily::kIntervals, ShapeRequirement::kLine, true,
       "exact recovery of S by interval binary search",
       [](OracleSession& s, double, const Calibration&, Rng&) {
         return ExactRecoverBinarySearch(s);
       }},
      {"interval_sample_na", SubsetFamily::kIntervals, ShapeRequirement::kLine,
       false, "collision counting interleaved with singleton samples",
       [](OracleSession& s, double eps, const Calibration& c, Rng& rng) {
         return EstimateIntervalSampleNonadaptive(
             s, CollisionConfigFrom(c, eps),
             SingletonConfigFrom(c, eps, ProbeMode::kSample), rng);
       }},
      {"interval_sample_adaptive", SubsetFamily::kIntervals,
       ShapeRequirement::kLine, false, "nested intervals split at the sample median",
       [](OracleSession& s, double eps, const Calibration& c, Rng&) {
         return EstimateIntervalSampleAdaptive(s, NestedOptionsFrom(c, eps));
       }},
      {"grid_sample_adaptive", SubsetFamily::kSubGrids, ShapeRequirement::kGrid,
       false, "nested sub-grids",
       [](OracleSession& s, double eps, const Calibration& c, Rng&) {
         return EstimateGridSampleAdaptive(s, NestedOptionsFrom(c, eps),
                                           c.grid_kappa);
       }},
      {"cube_sample_adaptive", SubsetFamily::kSubCubes, ShapeRequirement::kCube,
       false, "nested sub-cubes",
       [](OracleSession& s, double eps, const Calibration& c, Rng&) {
         return EstimateHypercubeSampleAdaptive(s, NestedOptionsFrom(c, eps),
                                                c.cube_kappa);
       }},
      {"unrestricted_na", SubsetFamily::kUnrestricted, ShapeRequirement::kAny,
       false, "ascending hypothesis ladder on random subsets",
       [](OracleSession& s, double eps, const Calibration& c, Rng& rng) {
         return EstimateUnrestrictedNonadaptive(s, UnrestrictedConfigFrom(c, eps),
                                                rng);
       }},
      {"unrestricted_adaptive", SubsetFamily::kUnrestricted,
       ShapeRequirement::kAny, false, "doubling then binary search over levels",
       [](OracleSession& s, double eps, const Calibration& c, Rng& rng) {
         return EstimateUnrestrictedAdaptive(s, UnrestrictedConfigFrom(c, eps),
                                             rng);
       }},
      {"unrestricted_descending", SubsetFamily::kUnrestricted,
       ShapeRequirement::kAny, false, "descending hypothesis ladder",
       [](OracleSession& s, double eps, const Calibration& c, Rng& rng) {
         return EstimateUnrestrictedDescending(s, UnrestrictedConfigFrom(c, eps),
                                               rng);
       }},
  }};
  return table;
}

std::string_view ShapeName(ShapeRequirement shape) {
  switch (shape) {
    case ShapeRequirement::kAny:
      return "any shape";
    case ShapeRequirement::kLine:
      return "a line";
    case ShapeRequirement::kGrid:
      return "a grid";
    case ShapeRequirement::kCube:
      return "a hypercube";
  }
  return "?";
}

}  // namespace

std::span<const EstimatorInfo> Estimators() { return Table(); }

const EstimatorInfo& FindEstimator(std::string_view id) {
  for (const EstimatorInfo& info : Table()) {
    if (info.id == id) return info;
  }
  std::string known;
  for (const EstimatorInfo& info : Table()) {
    known += known.empty() ? "" : ", ";
    known += info.id;
  }
  throw ConfigError("unknown estimator '" + std::string(id) +
                    "' (known: " + known + ")");
}

bool FamilyCovers(SubsetFamily family, SubsetFamily needed) {
  return family == needed || family == SubsetFamily::kUnrestricted ||
         needed == SubsetFamily::kUniverseOnly;
}

void CheckCompatible(const EstimatorInfo& info, const DomainShape& shape,
                     SubsetFamily family) {
  bool shape_ok = true;
  switch (info.shape) {
    case ShapeRequirement::kAny:
      break;
    case ShapeRequirement::kLine:
      shape_ok = shape.is_linear();
      break;
    case ShapeRequirement::kGrid:
      shape_ok = !shape.is_cube() && shape.dimension() <= kMaxGridDimension;
      break;
    case ShapeRequirement::kCube:
      shape_ok = shape.is_cube();
      break;
  }
  if (!shape_ok) {
    throw ConfigError(std::string(info.id) + " needs " +
                      std::string(ShapeName(info.shape)) + ", got " +
                      shape.ToString());
  }
  if (!FamilyCovers(family, info.family)) {
    throw ConfigError(std::string(info.id) + " needs the " +
                      std::string(FamilyName(info.family)) +
                      " family, got " + std::string(FamilyName(family)));
  }
}

}  // namespace setsize
