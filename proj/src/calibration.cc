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

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "setsize/errors.h"

namespace setsize {
namespace {

template <typename T>
void Read(const nlohmann::json& obj, const char* key, T& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("calibration key '") + key + "': " + e.what());
  }
}

}  // namespace

Calibration Calibration::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open calibration file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("calibration file " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("calibration file must hold an object");

  Calibration c;
  Read(doc, "collision_kappa", c.collision_kappa);
  Read(doc, "collision_max_samples", c.collision_max_samples);
  Read(doc, "singleton_kappa", c.singleton_kappa);
  Read(doc, "singleton_cap_factor", c.singleton_cap_factor);
  Read(doc, "iteration_kappa", c.iteration_kappa);
  Read(doc, "grid_kappa", c.grid_kappa);
  Read(doc, "cube_kappa", c.cube_kappa);
  Read(doc, "probe_c", c.probe_c);
  Read(doc, "window_c_prime", c.window_c_prime);
  if (const auto it = doc.find("ratio_schedule"); it != doc.end()) {
    if (!it->is_object()) throw ConfigError("ratio_schedule must be an object");
    Read(*it, "delta_scale", c.ratio_schedule.delta_scale);
    Read(*it, "eps_scale", c.ratio_schedule.eps_scale);
    Read(*it, "eps_exponent", c.ratio_schedule.eps_exponent);
  }
  return c;
}

}  // namespace setsize
