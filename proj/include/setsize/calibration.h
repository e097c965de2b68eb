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

// Constants that the asymptotic analysis leaves open. Defaults are frozen
// from calibration runs and mirrored in data/calibration.json.

#ifndef SETSIZE_CALIBRATION_H_
#define SETSIZE_CALIBRATION_H_

#include <cstdint>
#include <filesystem>

#include "setsize/schedule.h"

namespace setsize {

struct Calibration {
  // Collision estimator: stage-2 sample count ⌈κ·√w̃/ε²⌉ and the stage-1 cap.
  double collision_kappa = 8.0;
  std::int64_t collision_max_samples = std::int64_t{1} << 24;

  // Singleton-probe estimator: stage-2 count ⌈κ·(n/w̃)/ε²⌉; stage 1 gives
  // up after cap_factor·n probes.
  double singleton_kappa = 5.0;
  double singleton_cap_factor = 16.0;

  // Nested-region estimators: iteration cap κ_iter·⌈log₂ n⌉ + 16, ratio
  // schedule, and split sample constants for grids and cubes.
  double iteration_kappa = 4.0;
  Schedule ratio_schedule{10.0, 3.0, 0.5};
  double grid_kappa = 8.0;
  double cube_kappa = 8.0;

  // Unrestricted estimators: probe count c·ln(1/δ_i)[/ε²] and the window
  // margin ε/c′ used when ε < 1.
  double probe_c = 12.0;
  double window_c_prime = 12.0;

  static Calibration Defaults() { return Calibration{}; }
  // Missing keys keep their defaults. Throws ConfigError/IoError.
  static Calibration LoadFile(const std::filesystem::path& path);
};

}  // namespace setsize

#endif  // SETSIZE_CALIBRATION_H_
