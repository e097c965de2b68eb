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

#include "setsize/nested.h"

#include <bit>
#include <numeric>

namespace setsize {

void RatioProduct::Multiply(const RatioEstimate& r) {
  const auto a = static_cast<std::uint64_t>(r.numerator);
  const auto b = static_cast<std::uint64_t>(r.denominator);
  approx_ *= static_cast<long double>(a) / static_cast<long double>(b);
  if (!exact_) return;
  const std::uint64_t g1 = std::gcd(num_, b);
  const std::uint64_t g2 = std::gcd(a, den_);
  std::uint64_t num = 0;
  std::uint64_t den = 0;
  if (__builtin_mul_overflow(num_ / g1, a / g2, &num) ||
      __builtin_mul_overflow(den_ / g2, b / g1, &den)) {
    exact_ = false;
    return;
  }
  num_ = num;
  den_ = den;
}

double RatioProduct::value() const {
  if (!exact_) return static_cast<double>(approx_);
  return static_cast<double>(static_cast<long double>(num_) /
                             static_cast<long double>(den_));
}

int NestedIterationCap(Index n, double iteration_kappa) {
  const int log_n =
      n <= 1 ? 0 : std::bit_width(static_cast<std::uint64_t>(n - 1));
  return static_cast<int>(std::ceil(iteration_kappa * log_n)) + 16;
}

std::int64_t RatioSampleCount(double epsilon_j, double delta_j) {
  return static_cast<std::int64_t>(
      std::ceil(std::log(3.0 / delta_j) / (epsilon_j * epsilon_j)));
}

}  // namespace setsize
