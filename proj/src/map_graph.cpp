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

#include "bgp/map_graph.hpp"

#include "bgp/error.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace bgp
{

Polyline lane_polygon(const LaneSegment & lane)
{
  Polyline ring = lane.left_edge;
  ring.insert(ring.end(), lane.right_edge.rbegin(), lane.right_edge.rend());
  ring = dedupe(ring);
  while (ring.size() > 1 && distance(ring.front(), ring.back()) <= 1e-9) {
    ring.pop_back();
  }
  return ring;
}

namespace
{

void require_polyline(const Polyline & line, const LaneId & id, const char * field)
{
  if (line.size() < 2) {
    throw Error(ErrorCode::kGraphIntegrity, "lane " + id + ": " + field + " needs at least 2 points");
  }
  for (std::size_t i = 1; i < line.size(); ++i) {
    if (distance(line[i - 1], line[i]) <= 1e-9) {
      throw Error(
        ErrorCode::kGraphIntegrity,
        "lane " + id + ": " + field + " has repeated point at index " + std::to_string(i));
    }
  }
}

Point2 first_direction(const Polyline & line) { return line[1] - line[0]; }
Point2 last_direction(const Polyline & line) { return line[line.size() - 1] - line[line.size() - 2]; }

void visit_cells(const UniformGrid & grid, const BoundingBox & box, auto && visit)
{
  const auto [x0, y0] = grid.cell_of({box.min_x, box.min_y});
  const auto [x1, y1] = grid.cell_of({box.max_x, box.max_y});
  for (std::int64_t ix = x0; ix <= x1; ++ix) {
    for (std::int64_t iy = y0; iy <= y1; ++iy) {
      visit(grid.cell(ix, iy));
    }
  }
}

BoundingBox segment_box(Point2 a, Point2 b)
{
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

bool box_contains(const BoundingBox & box, Point2 p, double margin)
{
  return p.x >= box.min_x - margin && p.x <= box.max_x + margin && p.y >= box.min_y - margin &&
         p.y <= box.max_y + margin;
}

}  // namespace

LaneGraph::LaneGraph(std::vector<LaneSegment> lanes, double cell_size)
: lanes_(std::move(lanes)), cell_size_(cell_size), polygon_grid_(cell_size), piece_grid_(cell_size)
{
  std::sort(lanes_.begin(), lanes_.end(), [](const LaneSegment & a, const LaneSegment & b) {
    return a.id < b.id;
  });
  for (std::size_t i = 0; i < lanes_.size(); ++i) {
    if (!index_.emplace(lanes_[i].id, i).second) {
      throw Error(ErrorCode::kGraphIntegrity, "duplicate lane id " + lanes_[i].id);
    }
  }
  validate();
  build_index();
  build_drivable_boundary();
}

bool LaneGraph::has_lane(std::string_view id) const
{
  return index_.find(std::string(id)) != index_.end();
}

std::size_t LaneGraph::index_of(std::string_view id) const
{
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw Error(ErrorCode::kGraphIntegrity, "unknown lane id " + std::string(id));
  }
  return it->second;
}

const LaneSegment & LaneGraph::lane(std::string_view id) const { return lanes_[index_of(id)]; }

bool LaneGraph::same_direction(std::string_view a, std::string_view b) const
{
  return dot(chord_dirs_[index_of(a)], chord_dirs_[index_of(b)]) > 0.0;
}

void LaneGraph::validate() const
{
  const auto check_ref = [this](const LaneId & owner, const LaneId & ref, const char * relation) {
    if (!has_lane(ref)) {
      throw Error(
        ErrorCode::kGraphIntegrity,
        "lane " + owner + ": " + relation + " references missing lane " + ref);
    }
  };

  for (const auto & lane : lanes_) {
    require_polyline(lane.centerline, lane.id, "centerline");
    require_polyline(lane.left_edge, lane.id, "left_edge");
    require_polyline(lane.right_edge, lane.id, "right_edge");

    for (const auto * edge : {&lane.left_edge, &lane.right_edge}) {
      if (
        dot(first_direction(*edge), first_direction(lane.centerline)) <= 0.0 ||
        dot(last_direction(*edge), last_direction(lane.centerline)) <= 0.0) {
        throw Error(
          ErrorCode::kGraphIntegrity, "lane " + lane.id + ": edge travel direction disagrees with centerline");
      }
    }
    if (!is_simple_polygon(lane_polygon(lane))) {
      throw Error(ErrorCode::kGraphIntegrity, "lane " + lane.id + ": polygon is not simple");
    }

    for (const auto & s : lane.successors) check_ref(lane.id, s, "successor");
    for (const auto & p : lane.predecessors) check_ref(lane.id, p, "predecessor");
    if (lane.left_neighbor) check_ref(lane.id, *lane.left_neighbor, "left_neighbor");
    if (lane.right_neighbor) check_ref(lane.id, *lane.right_neighbor, "right_neighbor");
  }

  // neighbor relations must agree whenever both sides state one
  for (const auto & lane : lanes_) {
    if (lane.left_neighbor) {
      const auto & other = this->lane(*lane.left_neighbor);
      if (other.right_neighbor && *other.right_neighbor != lane.id) {
        throw Error(
          ErrorCode::kGraphIntegrity, "lane " + lane.id + ": left neighbor " + other.id +
                                        " names a different right neighbor");
      }
    }
    if (lane.right_neighbor) {
      const auto & other = this->lane(*lane.right_neighbor);
      if (other.left_neighbor && *other.left_neighbor != lane.id) {
        throw Error(
          ErrorCode::kGraphIntegrity, "lane " + lane.id + ": right neighbor " + other.id +
                                        " names a different left neighbor");
      }
    }
  }
}

void LaneGraph::build_index()
{
  polygons_.reserve(lanes_.size());
  for (std::size_t i = 0; i < lanes_.size(); ++i) {
    const auto & lane = lanes_[i];
    polygons_.push_back(lane_polygon(lane));
    boxes_.push_back(bounding_box(polygons_.back()));
    lengths_.push_back(polyline_length(lane.centerline));
    chord_dirs_.push_back(lane.centerline.back() - lane.centerline.front());
    polygon_grid_.insert(boxes_.back(), static_cast<std::uint32_t>(i));
  }
}

bool LaneGraph::inside_union(Point2 p) const
{
  for (const auto idx : polygon_grid_.at(p)) {
    if (box_contains(boxes_[idx], p, 1e-9) && point_in_polygon(polygons_[idx], p)) {
      return true;
    }
  }
  return false;
}

void LaneGraph::build_drivable_boundary()
{
  // Every polygon edge is split where other polygons' edges cross or touch it. A piece belongs to
  // the union boundary unless both of its sides are covered by some lane polygon.
  std::vector<Segment2> edges;
  std::vector<std::size_t> owner;
  UniformGrid edge_grid(cell_size_);
  for (std::size_t k = 0; k < polygons_.size(); ++k) {
    const auto & ring = polygons_[k];
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point2 a = ring[i];
      const Point2 b = ring[(i + 1) % ring.size()];
      edge_grid.insert(segment_box(a, b), static_cast<std::uint32_t>(edges.size()));
      edges.push_back({a, b});
      owner.push_back(k);
    }
  }

  std::vector<double> params;
  std::vector<std::uint32_t> seen;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    params.assign({0.0, 1.0});
    seen.clear();
    visit_cells(edge_grid, segment_box(a, b), [&](std::span<const std::uint32_t> cell) {
      seen.insert(seen.end(), cell.begin(), cell.end());
    });
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    const double len2 = dot(b - a, b - a);
    for (const auto f : seen) {
      if (owner[f] == owner[e]) {
        continue;
      }
      const auto [c, d] = edges[f];
      if (const auto hit = intersect_segments(a, b, c, d)) {
        params.push_back(hit->t_first);
      }
      for (const Point2 q : {c, d}) {
        if (point_on_segment(q, a, b, 1e-9)) {
          params.push_back(std::clamp(dot(q - a, b - a) / len2, 0.0, 1.0));
        }
      }
    }
    std::sort(params.begin(), params.end());
    const Point2 dir = b - a;
    const double len = std::sqrt(len2);
    const Point2 normal{-dir.y / len, dir.x / len};
    constexpr double kOffset = 1e-6;
    for (std::size_t i = 0; i + 1 < params.size(); ++i) {
      if ((params[i + 1] - params[i]) * len <= 1e-9) {
        continue;
      }
      const Point2 mid = a + (0.5 * (params[i] + params[i + 1])) * dir;
      const bool covered =
        inside_union(mid + kOffset * normal) && inside_union(mid - kOffset * normal);
      if (!covered) {
        const Segment2 piece{a + params[i] * dir, a + params[i + 1] * dir};
        piece_grid_.insert(segment_box(piece.a, piece.b), static_cast<std::uint32_t>(boundary_pieces_.size()));
        boundary_pieces_.push_back(piece);
      }
    }
  }
}

double LaneGraph::distance_to_boundary(Point2 p) const
{
  double best = std::numeric_limits<double>::infinity();
  if (boundary_pieces_.empty()) {
    return best;
  }
  constexpr std::int64_t kMaxRings = 64;
  const std::int64_t needed = piece_grid_.rings_to_cover(p);
  const std::int64_t limit = std::min(needed, kMaxRings);
  for (std::int64_t r = 0; r <= limit; ++r) {
    piece_grid_.visit_ring(p, r, [&](std::span<const std::uint32_t> cell) {
      for (const auto idx : cell) {
        best = std::min(best, point_segment_distance(p, boundary_pieces_[idx].a, boundary_pieces_[idx].b));
      }
    });
    // unseen pieces lie in cells at least r cells away
    if (best <= static_cast<double>(r) * cell_size_) {
      return best;
    }
  }
  if (needed > kMaxRings) {
    for (const auto & piece : boundary_pieces_) {
      best = std::min(best, point_segment_distance(p, piece.a, piece.b));
    }
  }
  return best;
}

OnRoadResult LaneGraph::on_road(Point2 p) const
{
  OnRoadResult result;
  result.on_road = inside_union(p);
  const double d = distance_to_boundary(p);
  result.clearance = result.on_road ? d : -d;
  return result;
}

std::vector<std::size_t> LaneGraph::lanes_near(Point2 p, double radius) const
{
  std::vector<std::size_t> out;
  const BoundingBox query{p.x - radius, p.y - radius, p.x + radius, p.y + radius};
  visit_cells(polygon_grid_, query, [&](std::span<const std::uint32_t> cell) {
    for (const auto idx : cell) {
      if (box_contains(boxes_[idx], p, radius)) {
        out.push_back(idx);
      }
    }
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LaneId> find_start_lanes(
  const LaneGraph & graph, const AgentState & agent, const StartLaneParams & params)
{
  const Point2 p = agent.pose.position();
  std::vector<std::tuple<double, LaneId>> hits;
  for (const auto idx : graph.lanes_near(p, params.max_lateral_distance)) {
    const auto & lane = graph.lanes()[idx];
    const auto proj = project_onto_polyline(lane.centerline, p);
    const bool contained = point_in_polygon(graph.polygon(idx), p);
    if (!contained && proj.distance > params.max_lateral_distance) {
      continue;
    }
    const Point2 d = lane.centerline[proj.segment + 1] - lane.centerline[proj.segment];
    const double lane_heading = std::atan2(d.y, d.x);
    if (std::abs(normalize_angle(agent.pose.heading - lane_heading)) > params.max_heading_difference) {
      continue;
    }
    hits.emplace_back(proj.distance, lane.id);
  }
  if (hits.empty()) {
    throw Error(ErrorCode::kNoStartLane, "no lane matches the agent position and heading");
  }
  std::sort(hits.begin(), hits.end());
  std::vector<LaneId> ids;
  ids.reserve(hits.size());
  for (auto & [d, id] : hits) {
    ids.push_back(std::move(id));
  }
  return ids;
}

Trajectory future_with_current(const ScenarioRecord & scenario)
{
  if (!scenario.ground_truth_future) {
    throw Error(ErrorCode::kParameter, "scenario has no ground_truth_future");
  }
  Trajectory out = *scenario.ground_truth_future;
  out.t0 -= out.dt;
  out.states.insert(out.states.begin(), scenario.focal_agent);
  return out;
}

}  // namespace bgp
