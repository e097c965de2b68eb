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
#include "setsize/calibration.h"
#include "setsize/errors.h"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

namespace setsize {
namespace {

std::filesystem::path WriteTemp(const std::string& name,
                                const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

void ExpectSame(const Calibration& a, const Calibration& b) {
  EXPECT_EQ(a.collision_kappa, b.collision_kappa);
  EXPECT_EQ(a.collision_max_samples, b.collision_max_samples);
  EXPECT_EQ(a.singleton_kappa, b.singleton_kappa);
  EXPECT_EQ(a.singleton_cap_factor, b.singleton_cap_factor);
  EXPECT_EQ(a.iteration_kappa, b.iteration_kappa);
  EXPECT_EQ(a.ratio_schedule.delta_scale, b.ratio_schedule.delta_scale);
  EXPECT_EQ(a.ratio_schedule.eps_scale, b.ratio_schedule.eps_scale);
  EXPECT_EQ(a.ratio_schedule.eps_exponent, b.ratio_schedule.eps_exponent);
  EXPECT_EQ(a.grid_kappa, b.grid_kappa);
  EXPECT_EQ(a.cube_kappa, b.cube_kappa);
  EXPECT_EQ(a.probe_c, b.probe_c);
  EXPECT_EQ(a.window_c_prime, b.window_c_prime);
}

TEST(CalibrationTest, ShippedFileMatchesDefaults) {
  const auto shipped = Calibration::LoadFile(
      std::filesystem::path(SETSIZE_SOURCE_DIR) / "data" / "calibration.json");
  ExpectSame(shipped, Calibration::Defaults());
}

TEST(CalibrationTest, MissingKeysKeepDefaults) {
  const auto path = WriteTemp(
      "setsize_cal_partial.json",
      R"({"singleton_kappa": 3, "ratio_schedule": {"eps_scale": 7}})");
  const auto c = Calibration::LoadFile(path);
  EXPECT_EQ(c.singleton_kappa, 3.0);
  EXPECT_EQ(c.ratio_schedule.eps_scale, 7.0);
  EXPECT_EQ(c.ratio_schedule.delta_scale,
            Calibration::Defaults().ratio_schedule.delta_scale);
  EXPECT_EQ(c.collision_kappa, Calibration::Defaults().collision_kappa);
  std::filesystem::remove(path);
}

TEST(CalibrationTest, Errors) {
  EXPECT_THROW(Calibration::LoadFile("/nonexistent/cal.json"), IoError);
  const auto bad = WriteTemp("setsize_cal_bad.json", "{not json");
  EXPECT_THROW(Calibration::LoadFile(bad), ConfigError);
  const auto wrong = WriteTemp("setsize_cal_wrong.json",
                               R"({"probe_c": "twelve"})");
  EXPECT_THROW(Calibration::LoadFile(wrong), ConfigError);
  std::filesystem::remove(bad);
  std::filesystem::remove(wrong);
}

}  // namespace
}  // namespace setsize
