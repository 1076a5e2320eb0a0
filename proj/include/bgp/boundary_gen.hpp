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

#ifndef BGP__BOUNDARY_GEN_HPP_
#define BGP__BOUNDARY_GEN_HPP_

#include "bgp/geometry.hpp"
#include "bgp/map_graph.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bgp
{

/// Left/right polylines of one permissible driving direction. Index i of `left` corresponds to
/// index i of `right`.
struct Boundary
{
  Polyline left;
  Polyline right;
  std::vector<LaneId> left_path;
  std::vector<LaneId> right_path;

  std::size_t size() const { return left.size(); }
  /// Left polyline followed by the reversed right polyline.
  Polyline polygon() const;
  double area() const;
};

struct BoundarySet
{
  std::vector<Boundary> boundaries;
};

struct BoundaryConfig
{
  StartLaneParams start{};
  // reachability horizon measured from the agent, meters
  double max_arc_length{150.0};
  // N_p: points per polyline at 1 m spacing
  int max_points{150};
  // N_b
  int max_boundaries{6};
  double iou_threshold{0.8};
  // delta_smooth: cap on the smoothed curve's deviation from the raw polyline
  double smoothing_tolerance{0.5};
  // initial smoothing spline penalty (m^3); reduced until the deviation cap holds
  double smoothing_lambda{1.0};
  // scale NMS relevance by the alignment of the boundary with the agent heading
  bool heading_weighted_relevance{false};
};

struct Reachability
{
  // lane id -> arc length at which the lane is entered
  std::map<LaneId, double> entry;
  std::set<LaneId> goals;
};

/// Forward reachability over successor and same-direction neighbor edges.
Reachability analyze_reachability(
  const LaneGraph & graph, std::span<const LaneId> start_lanes, double max_arc_length);

std::set<LaneId> reachable_goal_lanes(
  const LaneGraph & graph, std::span<const LaneId> start_lanes, double max_arc_length = 150.0);

struct GoalCluster
{
  LaneId leftmost;
  LaneId rightmost;
  std::vector<LaneId> members;
};

/// Connected components of the goals under same-direction neighbor edges, sorted by leftmost id.
/// Throws Error(kDegenerateCluster) for a component without a unique leftmost/rightmost lane.
std::vector<GoalCluster> cluster_goals(const LaneGraph & graph, const std::set<LaneId> & goals);

enum class Side { kLeft, kRight };

/// Expansion order used by the boundary search: the preferred side's neighbor, then successors
/// by id, then the opposite neighbor. Neighbors must run in the same direction.
std::vector<LaneId> expansion_order(const LaneGraph & graph, const LaneId & lane, Side side);

struct LanePaths
{
  std::vector<LaneId> left;
  std::vector<LaneId> right;
};

/// Side-prioritized depth-first search from `start` to the cluster's extreme lanes. When
/// `allowed` is given, the search stays inside it. Throws Error(kUnreachableGoal).
LanePaths extract_boundary(
  const LaneGraph & graph, const LaneId & start, const GoalCluster & cluster,
  const std::set<LaneId> * allowed = nullptr);

/// Concatenated edge geometry along a lane path. Lateral hops replace the current lane's edge
/// with the neighbor's, so only the outermost lane of each longitudinal step contributes.
Polyline path_edge_geometry(const LaneGraph & graph, std::span<const LaneId> path, Side side);

struct SmoothingParams
{
  int max_points{150};
  double tolerance{0.5};
  double lambda{1.0};
};

/// Cubic smoothing spline fit, resampled every 1 m of arc length and truncated to
/// max_points - 1 meters. Throws Error(kTooShort) for inputs shorter than 2 m.
Polyline sample_and_smooth(const Polyline & raw, const SmoothingParams & params = {});

/// Resamples the longer polyline at equal arc fractions so both have the shorter one's count.
std::pair<Polyline, Polyline> align_pair(const Polyline & left, const Polyline & right);

/// Intersection-over-union of the regions enclosed by two boundaries.
double boundary_iou(const Boundary & a, const Boundary & b);

/// Greedy NMS on area relevance. `relevance` overrides the area when non-empty.
BoundarySet select_boundaries(
  std::vector<Boundary> candidates, int n_b, double iou_threshold = 0.8,
  std::span<const double> relevance = {});

/// Empty string when valid, otherwise the first violated invariant.
std::string check_boundary(const Boundary & boundary);

/// Largest clearance deficit of sampled chord points between corresponding boundary points;
/// 0 when every sample is on the road.
double chord_excursion(const LaneGraph & graph, const Boundary & boundary);

BoundarySet generate_boundary_set(
  const LaneGraph & graph, const AgentState & agent, const BoundaryConfig & config = {});

}  // namespace bgp

#endif  // BGP__BOUNDARY_GEN_HPP_
