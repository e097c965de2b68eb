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

// Adaptive sampling estimators for grids (sub-grid family) and the Boolean
// hypercube (sub-cube family).

#ifndef SETSIZE_STRUCTURED_H_
#define SETSIZE_STRUCTURED_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "setsize/domain.h"
#include "setsize/estimate.h"
#include "setsize/nested.h"
#include "setsize/oracle.h"

namespace setsize {

inline constexpr int kMaxGridDimension = 8;

// Chooses a strict sub-grid of `region` from points inside it (coordinates
// per axis, at least two distinct points). Axes are scanned in order inside
// a current box, initially `region`:
//   - let x be the smallest coordinate whose prefix holds ≥ half the points;
//     if that prefix holds ≤ 3/4 of them and is not all of `region`, take it;
//   - else if the prefix strictly before x holds ≥ 1/4, take that;
//   - else the slice at x holds more than half: fix the axis to x, go on.
// A box reduced to one cell is returned as is. With exact points (no two
// equal) the result always holds between 1/4 and 3/4 of them.
SubGridSpec ChooseGridCut(const SubGridSpec& region,
                          std::span<const std::vector<Index>> points);

// ⌈κ_g·d·ln(3d/δ)⌉.
std::int64_t GridSplitSampleCount(int d, double delta_j, double kappa);

SplitOutcome<SubGridSpec> SplitGridBySample(OracleSession& session,
                                            const SubGridSpec& region,
                                            double delta_j, double kappa);

Estimate EstimateGridSampleAdaptive(OracleSession& session,
                                    const NestedOptions& options, double kappa,
                                    NestedTrace<SubGridSpec>* trace = nullptr);

// Sub-cube obtained by fixing coordinate `coordinate` (1-based) of `cube`.
SubCubeSpec RestrictCube(const SubCubeSpec& cube, int coordinate, int bit);

// Candidates among the maximal prefix-restriction sub-cubes of `cube`
// (free coordinates restricted in ascending order) whose share of
// `offsets` lies in [lo, hi]. Offsets are element − 1, all inside `cube`.
// Follows the heavy child until a child falls in the band, so at most two
// candidates are returned, the bit-0 child first.
std::vector<SubCubeSpec> CubeCandidates(int d, const SubCubeSpec& cube,
                                        std::span<const std::uint64_t> offsets,
                                        double lo, double hi);

// ⌈κ_c·ln(3/δ)⌉.
std::int64_t CubeSplitSampleCount(double delta_j, double kappa);

// Redraws the sample batch (up to three times) when noise leaves no
// candidate in the fraction band.
SplitOutcome<SubCubeSpec> SplitCubeBySample(OracleSession& session,
                                            const SubCubeSpec& cube,
                                            double delta_j, double kappa);

Estimate EstimateHypercubeSampleAdaptive(
    OracleSession& session, const NestedOptions& options, double kappa,
    NestedTrace<SubCubeSpec>* trace = nullptr);

}  // namespace setsize

#endif  // SETSIZE_STRUCTURED_H_
