// Copyright 2026 The Boundary Guided Prediction Authors
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

#ifndef BGP__SCENARIO_IO_HPP_
#define BGP__SCENARIO_IO_HPP_

#include "bgp/map_graph.hpp"

#include <json.hpp>

#include <string>

namespace bgp
{

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json polyline_to_json(const Polyline & line);
Polyline polyline_from_json(const Json & j, const std::string & field);

/// Rows of [t, x, y, heading, speed].
Json trajectory_to_json(const Trajectory & traj);
Trajectory trajectory_from_json(const Json & j, const std::string & field);

Json scenario_to_json(const ScenarioRecord & scenario);
ScenarioRecord scenario_from_json(const Json & j);
void save_scenario_file(const ScenarioRecord & scenario, const std::string & path);

std::string read_text_file(const std::string & path);
void write_text_file(const std::string & path, const std::string & text);
Json parse_json(const std::string & text, const std::string & source);

}  // namespace bgp

#endif  // BGP__SCENARIO_IO_HPP_
