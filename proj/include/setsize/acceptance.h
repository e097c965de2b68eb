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

// Release acceptance checks, shared by the acceptance test binary and
// `setsize verify`.

#ifndef SETSIZE_ACCEPTANCE_H_
#define SETSIZE_ACCEPTANCE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "setsize/calibration.h"

namespace setsize {

struct AcceptanceOptions {
  std::uint64_t seed = 0x5e75123;
  int threads = 1;
  Calibration calibration;
  // The command-line tool, for the determinism check. Empty skips it with
  // a failure.
  std::filesystem::path cli;
  // Scratch directory for the determinism check.
  std::filesystem::path work_dir = std::filesystem::temp_directory_path();
  // Criteria to run (1-8); empty runs all.
  std::vector<int> only;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
  double seconds = 0.0;
};

CriterionResult CheckSuccessContract(const AcceptanceOptions& options,
                                     std::ostream* log);
CriterionResult CheckExactRecovery(const AcceptanceOptions& options);
CriterionResult CheckScalingLaws(const AcceptanceOptions& options,
                                 std::ostream* log);
CriterionResult CheckExactTelescoping(const AcceptanceOptions& options);
CriterionResult CheckWindowMathematics();
CriterionResult CheckIndistinguishability(const AcceptanceOptions& options);
CriterionResult CheckSplittingLemmas();
CriterionResult CheckDeterminism(const AcceptanceOptions& options);

// Runs the selected criteria; prints one PASS/FAIL line per criterion to
// `out` (details indented underneath) and progress to `log` if given.
std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options,
                                           std::ostream& out,
                                           std::ostream* log = nullptr);

bool AllPassed(const std::vector<CriterionResult>& results);

}  // namespace setsize

#endif  // SETSIZE_ACCEPTANCE_H_
