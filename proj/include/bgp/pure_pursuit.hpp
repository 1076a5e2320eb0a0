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

#ifndef BGP__PURE_PURSUIT_HPP_
#define BGP__PURE_PURSUIT_HPP_

#include "bgp/map_graph.hpp"
#include "bgp/superposition.hpp"

#include <vector>

namespace bgp
{

/// Per-step longitudinal accelerations in m/s^2, each within [-a_max, a_max].
struct AccelProfile
{
  std::vector<double> accels;
};

struct PursuitParams
{
  // L_d
  double look_ahead{10.0};
  double kappa_max{0.3};
  double dt{0.1};
  // T
  int horizon{60};
  double a_max{8.0};
};

/// a_max * tanh(raw / a_max).
double clamp_accel(double raw, double a_max = 8.0);

struct PursuitCommand
{
  double curvature{0.0};
  // arc length of the vehicle's projection onto the path
  double progress{0.0};
  Point2 goal{};
};

/// Pure-pursuit steering towards the path point L_d ahead of the vehicle's projection.
/// `previous_progress` makes the projection monotone across successive calls.
PursuitCommand pursue(
  const AgentState & state, const SuperPath & path, const PursuitParams & params,
  double previous_progress = 0.0);

/// kappa = sgn(x_g) * min(2 |x_g| / L_d^2, kappa_max) with x_g the goal's lateral (left-positive)
/// coordinate in the vehicle frame.
double curvature_command(const AgentState & state, const SuperPath & path, const PursuitParams & params);

/// Same law evaluated on a goal point already expressed as a lateral offset.
double curvature_from_lateral(double lateral, const PursuitParams & params);

/// T-step forward-Euler rollout; the result holds T + 1 states starting with `initial`.
/// Throws Error(kDimension) when the profile length differs from the horizon.
Trajectory rollout(
  const AgentState & initial, const SuperPath & path, const AccelProfile & accel,
  const PursuitParams & params = {});

}  // namespace bgp

#endif  // BGP__PURE_PURSUIT_HPP_
