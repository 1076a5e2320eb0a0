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

#include "bgp/scene_attack.hpp"

#include "bgp/error.hpp"

#include <cmath>
#include <string>

namespace bgp
{

std::string_view to_string(AttackKind kind)
{
  switch (kind) {
    case AttackKind::kSmoothTurn:
      return "smooth_turn";
    case AttackKind::kDoubleTurn:
      return "double_turn";
    case AttackKind::kRippleRoad:
      return "ripple_road";
  }
  return "unknown";
}

std::optional<AttackKind> attack_kind_from_string(std::string_view name)
{
  for (const auto kind : {AttackKind::kSmoothTurn, AttackKind::kDoubleTurn, AttackKind::kRippleRoad}) {
    if (name == to_string(kind)) {
      return kind;
    }
  }
  return std::nullopt;
}

namespace
{

void validate(const AttackSpec & spec)
{
  if (spec.power_index < 0 || spec.power_index >= kPowerLevels) {
    throw Error(ErrorCode::kParameter, "power index must be within [0, 17]");
  }
  if (spec.sign != 1 && spec.sign != -1) {
    throw Error(ErrorCode::kParameter, "attack sign must be +1 or -1");
  }
}

}  // namespace

double attack_offset(double u, const AttackSpec & spec, const AttackParams & params)
{
  if (u <= 0.0) {
    return 0.0;
  }
  const double level = static_cast<double>(spec.power_index) / static_cast<double>(kPowerLevels - 1);
  const double alpha = params.alpha_max * level;
  double f = 0.0;
  switch (spec.kind) {
    case AttackKind::kSmoothTurn:
      f = alpha * u * u;
      break;
    case AttackKind::kDoubleTurn: {
      // second half mirrors the first so the road ends parallel to where it started
      const double m = params.u_mid;
      if (u <= m) {
        f = alpha * u * u;
      } else if (u <= 2.0 * m) {
        const double r = 2.0 * m - u;
        f = alpha * (2.0 * m * m - r * r);
      } else {
        f = 2.0 * alpha * m * m;
      }
      break;
    }
    case AttackKind::kRippleRoad:
      f = params.amplitude_max * level * std::sin(2.0 * M_PI * u / params.ripple_wavelength);
      break;
  }
  return static_cast<double>(spec.sign) * f;
}

Point2 warp_point(Point2 p, const Pose2 & agent_frame, const AttackSpec & spec, const AttackParams & params)
{
  const double c = std::cos(agent_frame.heading);
  const double s = std::sin(agent_frame.heading);
  const Point2 d = p - agent_frame.position();
  const double lon = c * d.x + s * d.y;
  const double offset = attack_offset(lon - params.s0, spec, params);
  if (offset == 0.0) {
    return p;
  }
  return {p.x - s * offset, p.y + c * offset};
}

ScenarioRecord apply_attack(const ScenarioRecord & scenario, const AttackSpec & spec, const AttackParams & params)
{
  validate(spec);
  const Pose2 frame = scenario.focal_agent.pose;
  auto warp = [&](const Polyline & line) {
    Polyline out = densify(line, params.densify_spacing);
    for (auto & p : out) {
      p = warp_point(p, frame, spec, params);
    }
    return out;
  };

  std::vector<LaneSegment> lanes = scenario.map.lanes();
  for (auto & lane : lanes) {
    lane.centerline = warp(lane.centerline);
    lane.left_edge = warp(lane.left_edge);
    lane.right_edge = warp(lane.right_edge);
  }

  ScenarioRecord out;
  try {
    out.map = LaneGraph(std::move(lanes));
  } catch (const Error & e) {
    throw Error(
      ErrorCode::kDegenerateWarp, std::string(to_string(spec.kind)) + " at power " +
                                    std::to_string(spec.power_index) + ": " + e.what());
  }
  out.focal_agent = scenario.focal_agent;
  out.focal_history = scenario.focal_history;
  out.other_agents = scenario.other_agents;
  if (params.warp_other_agents) {
    for (auto & other : out.other_agents) {
      const Point2 p = warp_point(other.state.pose.position(), frame, spec, params);
      other.state.pose.x = p.x;
      other.state.pose.y = p.y;
      for (auto & st : other.history.states) {
        const Point2 q = warp_point(st.pose.position(), frame, spec, params);
        st.pose.x = q.x;
        st.pose.y = q.y;
      }
    }
  }
  return out;
}

std::vector<AttackSpec> attack_grid()
{
  std::vector<AttackSpec> grid;
  for (const auto kind : {AttackKind::kSmoothTurn, AttackKind::kDoubleTurn, AttackKind::kRippleRoad}) {
    for (int i = 0; i < kPowerLevels; ++i) {
      grid.push_back({kind, i, 1});
    }
  }
  return grid;
}

}  // namespace bgp
