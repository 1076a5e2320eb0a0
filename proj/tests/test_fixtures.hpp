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

#ifndef BGP__TEST_FIXTURES_HPP_
#define BGP__TEST_FIXTURES_HPP_

#include "bgp/map_graph.hpp"
#include "bgp/scenario_synth.hpp"

#include <string>
#include <vector>

namespace bgp::test
{

inline Polyline line(Point2 a, Point2 b, int pieces = 1)
{
  Polyline out;
  for (int i = 0; i <= pieces; ++i) out.push_back(lerp(a, b, static_cast<double>(i) / pieces));
  return out;
}

/// Straight lane along +x (or -x when x1 < x0) centered on `y`.
inline LaneSegment straight_lane(const std::string & id, double x0, double x1, double y, double width = 3.5)
{
  const int pieces = std::max(1, static_cast<int>(std::abs(x1 - x0) / 5.0));
  return make_lane(id, line({x0, y}, {x1, y}, pieces), width);
}

/// Three parallel 3.5 m lanes L (left), C, R (right) of `length` meters heading +x, mutual neighbors.
inline std::vector<LaneSegment> three_lane_road(double length = 60.0)
{
  auto l = straight_lane("L", 0.0, length, 3.5);
  auto c = straight_lane("C", 0.0, length, 0.0);
  auto r = straight_lane("R", 0.0, length, -3.5);
  l.right_neighbor = "C";
  c.left_neighbor = "L";
  c.right_neighbor = "R";
  r.left_neighbor = "C";
  return {l, c, r};
}

inline AgentState agent_at(double x, double y, double heading, double speed)
{
  AgentState s;
  s.pose = {x, y, heading};
  s.speed = speed;
  return s;
}

}  // namespace bgp::test

#endif  // BGP__TEST_FIXTURES_HPP_
