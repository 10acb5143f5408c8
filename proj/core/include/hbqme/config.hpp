// Copyright 2026 The hbqme Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hbqme/sweep.hpp"

namespace hbqme {

using Json = nlohmann::ordered_json;

struct SeriesSpec {
  std::vector<int> n_values;
};

/// A scenario document: model parameters plus optional sweep or series.
struct ScenarioConfig {
  std::string name;
  std::string description;
  ModelParams model;
  std::optional<SweepSpec> sweep;
  std::optional<SeriesSpec> series;
};

/// Every field is written, so the result re-creates the parameters exactly.
Json to_json(const ModelParams& p);
Json to_json(const IntegratorConfig& c);
Json to_json(const SweepSpec& s);
Json to_json(const ScenarioConfig& s);

/// Missing keys take reference defaults; unknown keys, wrong types and
/// constraint violations throw ConfigError naming the dotted key path.
ModelParams model_from_json(const Json& j, const std::string& path = "model");
IntegratorConfig integrator_from_json(const Json& j, const std::string& path = "model.integrator");
SweepSpec sweep_from_json(const Json& j, const std::string& path = "sweep");
/// Requires "name" and "model". A metadata sidecar (an object with a
/// "config" member) is accepted in place of the scenario itself.
ScenarioConfig scenario_from_json(const Json& j);

ScenarioConfig load_scenario(const std::filesystem::path& file);

}  // namespace hbqme
