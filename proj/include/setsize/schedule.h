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

#ifndef SETSIZE_SCHEDULE_H_
#define SETSIZE_SCHEDULE_H_

#include <cmath>

namespace setsize {

// Per-iteration confidence and accuracy for the nested-region estimators:
//
//   δ_j = 1 / (delta_scale · j²)
//   ε_j = ε / (eps_scale · j^eps_exponent)
//
// Conservative() guarantees ∏(1 + ε_j) ≤ 1 + ε. Its ratio sample counts
// grow like 10^4·j³/ε².
struct Schedule {
  double delta_scale = 10.0;
  double eps_scale = 100.0;
  double eps_exponent = 1.5;

  static constexpr Schedule Conservative() { return Schedule{}; }

  double Delta(int j) const { return 1.0 / (delta_scale * j * j); }
  double Eps(double epsilon, int j) const {
    return epsilon / (eps_scale * std::pow(static_cast<double>(j), eps_exponent));
  }
};

}  // namespace setsize

#endif  // SETSIZE_SCHEDULE_H_
