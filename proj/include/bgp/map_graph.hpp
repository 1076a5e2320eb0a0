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

#ifndef BGP__MAP_GRAPH_HPP_
#define BGP__MAP_GRAPH_HPP_

#include "bgp/geometry.hpp"
#include "bgp/spatial_grid.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bgp
{

using LaneId = std::string;

struct AgentState
{
  Pose2 pose{};
  // m/s, never negative
  double speed{0.0};
};

/// Equi-temporal state sequence. When used as a prediction or a ground-truth future, states[0] is
/// the agent's current state and states[1..T] are the scored future steps.
struct Trajectory
{
  double t0{0.0};
  double dt{0.1};
  std::vector<AgentState> states;

  std::size_t size() const { return states.size(); }
  Point2 position(std::size_t i) const { return states[i].pose.position(); }
};

struct LaneSegment
{
  LaneId id;
  Polyline centerline;
  Polyline left_edge;
  Polyline right_edge;
  std::vector<LaneId> successors;
  std::vector<LaneId> predecessors;
  std::optional<LaneId> left_neighbor;
  std::optional<LaneId> right_neighbor;
};

/// Left edge followed by the reversed right edge, with duplicate vertices removed.
Polyline lane_polygon(const LaneSegment & lane);

struct OnRoadResult
{
  bool on_road{false};
  // distance to the drivable-area boundary, positive inside, negative outside
  double clearance{0.0};
};

struct Segment2
{
  Point2 a;
  Point2 b;
};

/// Directed lane graph with a uniform-grid spatial index. Immutable after construction.
class LaneGraph
{
public:
  static constexpr double kDefaultCellSize = 10.0;

  LaneGraph() = default;

  /// Validates every lane invariant and edge reference; throws Error(kGraphIntegrity).
  explicit LaneGraph(std::vector<LaneSegment> lanes, double cell_size = kDefaultCellSize);

  bool empty() const { return lanes_.empty(); }
  std::size_t size() const { return lanes_.size(); }

  /// Lanes sorted by id.
  const std::vector<LaneSegment> & lanes() const { return lanes_; }
  bool has_lane(std::string_view id) const;
  const LaneSegment & lane(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;

  const Polyline & polygon(std::size_t index) const { return polygons_[index]; }
  double centerline_length(std::size_t index) const { return lengths_[index]; }
  double centerline_length(std::string_view id) const { return lengths_[index_of(id)]; }

  /// Both lanes run the same way (centerline start-to-end chords point into the same half-plane).
  bool same_direction(std::string_view a, std::string_view b) const;

  /// Lane indices whose polygon bounding boxes come within `radius` of `p`.
  std::vector<std::size_t> lanes_near(Point2 p, double radius) const;

  OnRoadResult on_road(Point2 p) const;

  /// Membership in the union of lane polygons (boundary inclusive), without the clearance query.
  bool contains(Point2 p) const { return inside_union(p); }

  /// Edge pieces of the union of lane polygons.
  const std::vector<Segment2> & drivable_boundary() const { return boundary_pieces_; }

private:
  void validate() const;
  void build_index();
  void build_drivable_boundary();
  bool inside_union(Point2 p) const;
  double distance_to_boundary(Point2 p) const;

  std::vector<LaneSegment> lanes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Polyline> polygons_;
  std::vector<BoundingBox> boxes_;
  std::vector<double> lengths_;
  std::vector<Point2> chord_dirs_;
  double cell_size_{kDefaultCellSize};
  UniformGrid polygon_grid_{kDefaultCellSize};
  std::vector<Segment2> boundary_pieces_;
  UniformGrid piece_grid_{kDefaultCellSize};
};

struct OtherAgent
{
  AgentState state;
  Trajectory history;
};

struct ScenarioRecord
{
  LaneGraph map;
  AgentState focal_agent;
  Trajectory focal_history;
  std::vector<OtherAgent> other_agents;
  std::optional<Trajectory> ground_truth_future;
};

/// Parses and validates a scenario document (JSON text).
ScenarioRecord load_scenario(std::string_view text);
ScenarioRecord load_scenario_file(const std::string & path);

/// Ground-truth future with the focal agent's current state prepended as states[0].
Trajectory future_with_current(const ScenarioRecord & scenario);

struct StartLaneParams
{
  // d_start: lateral acceptance for agents just outside a lane polygon
  double max_lateral_distance{3.0};
  double max_heading_difference{M_PI / 3.0};
};

/// Lanes the agent may currently occupy, ordered by lateral distance then id.
/// Throws Error(kNoStartLane) when none qualifies.
std::vector<LaneId> find_start_lanes(
  const LaneGraph & graph, const AgentState & agent, const StartLaneParams & params = {});

inline OnRoadResult on_road(const LaneGraph & graph, Point2 p) { return graph.on_road(p); }

}  // namespace bgp

#endif  // BGP__MAP_GRAPH_HPP_
