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

#ifndef BGP__SCENARIO_SYNTH_HPP_
#define BGP__SCENARIO_SYNTH_HPP_

#include "bgp/map_graph.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace bgp
{

enum class SceneLayout { kRoad, kIntersection, kTJunction, kYSplit };

std::string_view to_string(SceneLayout layout);

struct SynthParams
{
  double lane_width{3.5};
  // distance from the junction center to where the approach lanes stop
  double junction_margin{11.5};
  double max_speed{12.0};
  // fraction of scenarios whose agent stands still
  double stationary_fraction{0.05};
  int history_steps{50};
  int future_steps{60};
  int max_other_agents{3};
};

/// Lane with edges offset half a lane width to either side of `centerline`.
LaneSegment make_lane(LaneId id, const Polyline & centerline, double width);

/// Deterministic synthetic scenario; the layout cycles with `index` and the details are drawn from
/// a generator seeded with `seed` and `index`. The ground-truth future follows a lane route.
ScenarioRecord generate_scenario(std::uint64_t seed, int index, const SynthParams & params = {});

std::vector<ScenarioRecord> generate_corpus(std::uint64_t seed, int count, const SynthParams & params = {});

}  // namespace bgp

#endif  // BGP__SCENARIO_SYNTH_HPP_
