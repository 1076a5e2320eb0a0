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

#ifndef BGP__METRICS_HPP_
#define BGP__METRICS_HPP_

#include "bgp/map_graph.hpp"
#include "bgp/predictor.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bgp
{

struct DisplacementMetrics
{
  double min_ade{0.0};
  double min_fde{0.0};
  double brier_min_ade{0.0};
  double brier_min_fde{0.0};
  // miss iff min_fde > miss_threshold
  bool miss{false};
};

/// Scores the top-k entries against `gt`; both are compared on states[1..]. A prediction shorter
/// than the ground truth is compared on the common prefix.
DisplacementMetrics displacement_metrics(
  const PredictionSet & preds, const Trajectory & gt, int k, double miss_threshold = 2.0);

struct FeasibilityParams
{
  double a_max{8.0};
  double kappa_max{0.3};
  double v_min{0.1};
  double eps_dist{1e-6};
  // absorbs rounding in limits that a rollout meets with equality
  double tolerance{1e-9};
};

struct FeasibilityReport
{
  std::vector<bool> accel_flags;
  std::vector<bool> curvature_flags;
  std::size_t accel_steps{0};
  std::size_t curvature_steps{0};
  std::size_t any_steps{0};
  std::size_t steps{0};

  bool accel_infeasible() const { return accel_steps > 0; }
  bool curvature_infeasible() const { return curvature_steps > 0; }
  bool infeasible() const { return any_steps > 0; }
};

FeasibilityReport feasibility_check(const Trajectory & traj, const FeasibilityParams & params = {});

struct OffroadRates
{
  double sor{0.0};
  double hor{0.0};
  std::size_t points{0};
  std::size_t offroad_points{0};
  std::size_t trajectories{0};
  std::size_t offroad_trajectories{0};
  // most negative clearance seen among off-road points, 0 when all points are on road
  double worst_clearance{0.0};
};

/// Counts predicted points states[1..] against the drivable area.
OffroadRates offroad_rates(const PredictionSet & preds, const LaneGraph & graph);

enum class Maneuver {
  kStationary,
  kStraight,
  kStraightLeft,
  kStraightRight,
  kLeftTurn,
  kRightTurn,
  kLeftUTurn,
  kRightUTurn,
};

std::string_view to_string(Maneuver m);

struct ManeuverParams
{
  double stationary_distance{2.0};
  double straight_deg{15.0};
  double turn_deg{45.0};
  double u_turn_deg{135.0};
};

/// Net heading change is accumulated step by step so that turns beyond 180 degrees keep their sign.
Maneuver classify_maneuver(const Trajectory & gt, const ManeuverParams & params = {});

}  // namespace bgp

#endif  // BGP__METRICS_HPP_
