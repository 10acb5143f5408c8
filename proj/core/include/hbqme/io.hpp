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
#include <ostream>
#include <string>
#include <vector>

#include "hbqme/config.hpp"

namespace hbqme {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// time_s, one d{d}_p{p}_n{n} column per basis state, p_stable, purity.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// x_param,y_param,x_value,y_value,value,region,steady_time_s,status
void write_heatmap_csv(std::ostream& out, const HeatMap& map);

/// n,p_stable,p_broken,steady_time_s,status
void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series);

/// One row: populations per basis state, then p_stable.
void write_steady_csv(std::ostream& out, const Basis& basis, const std::vector<double>& pops);

/// Metadata sidecar: tool version, command, and the resolved scenario,
/// which load_scenario accepts to repeat the run.
Json sidecar(const std::string& command, const ScenarioConfig& scenario, const Json& extra = Json::object());

void write_text(const std::filesystem::path& file, const std::string& body);
void write_json(const std::filesystem::path& file, const Json& j);

}  // namespace hbqme
