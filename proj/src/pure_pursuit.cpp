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

#include "bgp/pure_pursuit.hpp"

#include "bgp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bgp
{

double clamp_accel(double raw, double a_max) { return a_max * std::tanh(raw / a_max); }

double curvature_from_lateral(double lateral, const PursuitParams & params)
{
  if (lateral == 0.0) {
    return 0.0;
  }
  const double magnitude =
    std::min(2.0 * std::abs(lateral) / (params.look_ahead * params.look_ahead), params.kappa_max);
  return lateral > 0.0 ? magnitude : -magnitude;
}

namespace
{

// Nearest point on the path among segments that start no earlier than `from` and no later than
// `from + window`; the result never moves backwards.
double project_progress(const SuperPath & path, Point2 p, double from, double window)
{
  const auto & pts = path.points;
  const auto & cum = path.cum_arc;
  if (pts.size() < 2) {
    return 0.0;
  }
  auto it = std::upper_bound(cum.begin(), cum.end(), from);
  std::size_t i = it == cum.begin() ? 0 : static_cast<std::size_t>(std::distance(cum.begin(), it)) - 1;
  i = std::min(i, pts.size() - 2);
  double best_d = std::numeric_limits<double>::infinity();
  double best_s = from;
  for (; i + 1 < pts.size() && cum[i] <= from + window; ++i) {
    double t = 0.0;
    const double d = point_segment_distance(p, pts[i], pts[i + 1], &t);
    if (d < best_d) {
      best_d = d;
      best_s = cum[i] + t * (cum[i + 1] - cum[i]);
    }
  }
  return std::max(from, best_s);
}

}  // namespace

PursuitCommand pursue(
  const AgentState & state, const SuperPath & path, const PursuitParams & params,
  double previous_progress)
{
  PursuitCommand cmd;
  const Point2 p = state.pose.position();
  cmd.progress = project_progress(path, p, previous_progress, 2.0 * params.look_ahead);
  cmd.goal = point_at_arclength(path, cmd.progress + params.look_ahead);

  const double c = std::cos(state.pose.heading);
  const double s = std::sin(state.pose.heading);
  const Point2 d = cmd.goal - p;
  const double longitudinal = c * d.x + s * d.y;
  const double lateral = -s * d.x + c * d.y;

  // past the end of the path: hold the heading
  if (cmd.progress >= path.length() - 1e-9 && longitudinal <= 0.0) {
    cmd.curvature = 0.0;
    return cmd;
  }
  cmd.curvature = curvature_from_lateral(lateral, params);
  return cmd;
}

double curvature_command(const AgentState & state, const SuperPath & path, const PursuitParams & params)
{
  return pursue(state, path, params).curvature;
}

Trajectory rollout(
  const AgentState & initial, const SuperPath & path, const AccelProfile & accel,
  const PursuitParams & params)
{
  if (static_cast<int>(accel.accels.size()) != params.horizon) {
    throw Error(
      ErrorCode::kDimension, "acceleration profile has " + std::to_string(accel.accels.size()) +
                               " steps, horizon is " + std::to_string(params.horizon));
  }
  for (std::size_t t = 0; t < accel.accels.size(); ++t) {
    if (!(std::abs(accel.accels[t]) <= params.a_max)) {
      throw Error(ErrorCode::kParameter, "acceleration " + std::to_string(t) + " exceeds a_max");
    }
  }
  Trajectory traj;
  traj.t0 = 0.0;
  traj.dt = params.dt;
  traj.states.reserve(static_cast<std::size_t>(params.horizon) + 1);

  AgentState state = initial;
  state.pose.heading = normalize_angle(state.pose.heading);
  state.speed = std::max(0.0, state.speed);
  traj.states.push_back(state);

  double progress = 0.0;
  for (int t = 0; t < params.horizon; ++t) {
    const PursuitCommand cmd = pursue(state, path, params, progress);
    progress = cmd.progress;
    const double v = state.speed;
    const double theta = state.pose.heading;
    state.pose.x += v * std::cos(theta) * params.dt;
    state.pose.y += v * std::sin(theta) * params.dt;
    state.pose.heading = normalize_angle(theta + v * cmd.curvature * params.dt);
    state.speed = std::max(0.0, v + accel.accels[static_cast<std::size_t>(t)] * params.dt);
    traj.states.push_back(state);
  }
  return traj;
}

}  // namespace bgp
