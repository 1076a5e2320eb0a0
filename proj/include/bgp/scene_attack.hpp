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

#ifndef BGP__SCENE_ATTACK_HPP_
#define BGP__SCENE_ATTACK_HPP_

#include "bgp/map_graph.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace bgp
{

enum class AttackKind { kSmoothTurn, kDoubleTurn, kRippleRoad };

std::string_view to_string(AttackKind kind);
std::optional<AttackKind> attack_kind_from_string(std::string_view name);

inline constexpr int kPowerLevels = 18;

struct AttackSpec
{
  AttackKind kind{AttackKind::kSmoothTurn};
  // 0 .. kPowerLevels - 1
  int power_index{0};
  int sign{1};
};

struct AttackParams
{
  // protected zone ahead of the agent
  double s0{5.0};
  // quadratic coefficient at the highest power level, 1/m
  double alpha_max{0.012};
  // ripple amplitude at the highest power level, m
  double amplitude_max{3.0};
  double ripple_wavelength{40.0};
  // double turn: distance past s0 where the bend reverses
  double u_mid{20.0};
  // map polylines are resampled to this spacing before warping so straight edges can bend
  double densify_spacing{2.0};
  bool warp_other_agents{false};
};

/// Lateral offset for a longitudinal distance `u` past the protected zone.
double attack_offset(double u, const AttackSpec & spec, const AttackParams & params = {});

Point2 warp_point(Point2 p, const Pose2 & agent_frame, const AttackSpec & spec, const AttackParams & params = {});

/// Warps the map ahead of the focal agent; histories stay put and the ground-truth future is
/// dropped. Throws Error(kParameter) for an out-of-range spec and Error(kDegenerateWarp) when the
/// warped lanes no longer form a valid graph.
ScenarioRecord apply_attack(
  const ScenarioRecord & scenario, const AttackSpec & spec, const AttackParams & params = {});

/// All kinds crossed with all power levels, in kind-major order (sign +1).
std::vector<AttackSpec> attack_grid();

}  // namespace bgp

#endif  // BGP__SCENE_ATTACK_HPP_
