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

#include "bgp/metrics.hpp"

#include "bgp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bgp
{

DisplacementMetrics displacement_metrics(
  const PredictionSet & preds, const Trajectory & gt, int k, double miss_threshold)
{
  if (k <= 0) {
    throw Error(ErrorCode::kParameter, "k must be positive");
  }
  if (preds.entries.empty()) {
    throw Error(ErrorCode::kNoPrediction, "prediction set is empty");
  }
  if (gt.size() < 2) {
    throw Error(ErrorCode::kDimension, "ground truth has no future states");
  }
  std::vector<std::size_t> order(preds.entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return preds.entries[a].likelihood > preds.entries[b].likelihood;
  });
  order.resize(std::min(order.size(), static_cast<std::size_t>(k)));

  DisplacementMetrics out;
  double best_ade = std::numeric_limits<double>::infinity();
  double best_fde = std::numeric_limits<double>::infinity();
  double p_ade = 0.0;
  double p_fde = 0.0;
  for (const std::size_t i : order) {
    const Trajectory & traj = preds.entries[i].trajectory;
    const std::size_t n = std::min(traj.size(), gt.size());
    if (n < 2) {
      throw Error(ErrorCode::kDimension, "prediction has no future states");
    }
    double sum = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
      sum += distance(traj.position(t), gt.position(t));
    }
    const double ade = sum / static_cast<double>(n - 1);
    const double fde = distance(traj.position(n - 1), gt.position(n - 1));
    if (ade < best_ade) {
      best_ade = ade;
      p_ade = preds.entries[i].likelihood;
    }
    if (fde < best_fde) {
      best_fde = fde;
      p_fde = preds.entries[i].likelihood;
    }
  }
  out.min_ade = best_ade;
  out.min_fde = best_fde;
  out.brier_min_ade = best_ade + (1.0 - p_ade) * (1.0 - p_ade);
  out.brier_min_fde = best_fde + (1.0 - p_fde) * (1.0 - p_fde);
  out.miss = best_fde > miss_threshold;
  return out;
}

FeasibilityReport feasibility_check(const Trajectory & traj, const FeasibilityParams & params)
{
  if (traj.size() < 3) {
    throw Error(ErrorCode::kParameter, "feasibility check needs at least 3 states");
  }
  if (!(traj.dt > 0.0)) {
    throw Error(ErrorCode::kParameter, "trajectory dt must be positive");
  }
  FeasibilityReport report;
  report.steps = traj.size() - 1;
  report.accel_flags.assign(report.steps, false);
  report.curvature_flags.assign(report.steps, false);
  for (std::size_t t = 0; t < report.steps; ++t) {
    const AgentState & a = traj.states[t];
    const AgentState & b = traj.states[t + 1];
    const double accel = (b.speed - a.speed) / traj.dt;
    report.accel_flags[t] = std::abs(accel) > params.a_max + params.tolerance;

    const double travelled = distance(a.pose.position(), b.pose.position());
    if (travelled / traj.dt >= params.v_min) {
      const double dtheta = normalize_angle(b.pose.heading - a.pose.heading);
      const double kappa = dtheta / std::max(travelled, params.eps_dist);
      report.curvature_flags[t] = std::abs(kappa) > params.kappa_max + params.tolerance;
    }
    report.accel_steps += report.accel_flags[t] ? 1 : 0;
    report.curvature_steps += report.curvature_flags[t] ? 1 : 0;
    report.any_steps += (report.accel_flags[t] || report.curvature_flags[t]) ? 1 : 0;
  }
  return report;
}

OffroadRates offroad_rates(const PredictionSet & preds, const LaneGraph & graph)
{
  OffroadRates out;
  for (const auto & entry : preds.entries) {
    bool any = false;
    for (std::size_t t = 1; t < entry.trajectory.size(); ++t) {
      const OnRoadResult r = graph.on_road(entry.trajectory.position(t));
      ++out.points;
      if (!r.on_road) {
        ++out.offroad_points;
        out.worst_clearance = std::min(out.worst_clearance, r.clearance);
        any = true;
      }
    }
    ++out.trajectories;
    out.offroad_trajectories += any ? 1 : 0;
  }
  if (out.points > 0) {
    out.sor = static_cast<double>(out.offroad_points) / static_cast<double>(out.points);
  }
  if (out.trajectories > 0) {
    out.hor = static_cast<double>(out.offroad_trajectories) / static_cast<double>(out.trajectories);
  }
  return out;
}

std::string_view to_string(Maneuver m)
{
  switch (m) {
    case Maneuver::kStationary:
      return "stationary";
    case Maneuver::kStraight:
      return "straight";
    case Maneuver::kStraightLeft:
      return "straight_left";
    case Maneuver::kStraightRight:
      return "straight_right";
    case Maneuver::kLeftTurn:
      return "left_turn";
    case Maneuver::kRightTurn:
      return "right_turn";
    case Maneuver::kLeftUTurn:
      return "left_u_turn";
    case Maneuver::kRightUTurn:
      return "right_u_turn";
  }
  return "unknown";
}

Maneuver classify_maneuver(const Trajectory & gt, const ManeuverParams & params)
{
  if (gt.size() < 2) {
    return Maneuver::kStationary;
  }
  if (distance(gt.position(0), gt.position(gt.size() - 1)) < params.stationary_distance) {
    return Maneuver::kStationary;
  }
  double net = 0.0;
  for (std::size_t t = 1; t < gt.size(); ++t) {
    net += normalize_angle(gt.states[t].pose.heading - gt.states[t - 1].pose.heading);
  }
  const double deg = std::abs(net) * 180.0 / M_PI;
  const bool left = net > 0.0;
  if (deg < params.straight_deg) {
    return Maneuver::kStraight;
  }
  if (deg < params.turn_deg) {
    return left ? Maneuver::kStraightLeft : Maneuver::kStraightRight;
  }
  if (deg <= params.u_turn_deg) {
    return left ? Maneuver::kLeftTurn : Maneuver::kRightTurn;
  }
  return left ? Maneuver::kLeftUTurn : Maneuver::kRightUTurn;
}

}  // namespace bgp
