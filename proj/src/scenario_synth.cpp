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

#include "bgp/scenario_synth.hpp"

#include "bgp/pure_pursuit.hpp"
#include "bgp/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace bgp
{

std::string_view to_string(SceneLayout layout)
{
  switch (layout) {
    case SceneLayout::kRoad:
      return "road";
    case SceneLayout::kIntersection:
      return "intersection";
    case SceneLayout::kTJunction:
      return "t_junction";
    case SceneLayout::kYSplit:
      return "y_split";
  }
  return "unknown";
}

LaneSegment make_lane(LaneId id, const Polyline & centerline, double width)
{
  LaneSegment lane;
  lane.id = std::move(id);
  lane.centerline = centerline;
  const double h = 0.5 * width;
  const std::size_t n = centerline.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = centerline[i == 0 ? 0 : i - 1];
    const Point2 b = centerline[i + 1 < n ? i + 1 : n - 1];
    const Point2 t = (1.0 / norm(b - a)) * (b - a);
    const Point2 normal{-t.y, t.x};
    lane.left_edge.push_back(centerline[i] + h * normal);
    lane.right_edge.push_back(centerline[i] - h * normal);
  }
  return lane;
}

namespace
{

using Rng = std::mt19937_64;

double uniform(Rng & rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng & rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Poses along a chain of constant-curvature pieces, one per meter.
std::vector<Pose2> integrate_reference(const std::vector<std::pair<double, double>> & pieces)
{
  std::vector<Pose2> poses{Pose2{0.0, 0.0, 0.0}};
  for (const auto & [length, kappa] : pieces) {
    const int steps = static_cast<int>(std::round(length));
    for (int i = 0; i < steps; ++i) {
      Pose2 p = poses.back();
      const double th = p.heading;
      if (std::abs(kappa) < 1e-12) {
        p.x += std::cos(th);
        p.y += std::sin(th);
      } else {
        p.x += (std::sin(th + kappa) - std::sin(th)) / kappa;
        p.y += (std::cos(th) - std::cos(th + kappa)) / kappa;
      }
      p.heading = th + kappa;
      poses.push_back(p);
    }
  }
  return poses;
}

Polyline offset_slice(const std::vector<Pose2> & poses, std::size_t i0, std::size_t i1, double offset)
{
  Polyline out;
  for (std::size_t i = i0; i <= i1; ++i) {
    const Pose2 & p = poses[i];
    out.push_back({p.x - std::sin(p.heading) * offset, p.y + std::cos(p.heading) * offset});
  }
  return out;
}

Polyline arc(Point2 center, double radius, double from, double to)
{
  const double sweep = to - from;
  const int n = std::max(2, static_cast<int>(std::ceil(std::abs(sweep) * radius)) + 1);
  Polyline out;
  for (int i = 0; i < n; ++i) {
    const double a = from + sweep * static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return out;
}

Polyline straight(Point2 a, Point2 b)
{
  const int n = std::max(2, static_cast<int>(std::ceil(distance(a, b))) + 1);
  Polyline out;
  for (int i = 0; i < n; ++i) {
    out.push_back(lerp(a, b, static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  return out;
}

// Lane whose centerline and edges are exact offsets of the reference poses, so neighbors and
// consecutive segments share edge vertices bit for bit.
LaneSegment road_lane(
  LaneId id, const std::vector<Pose2> & poses, std::size_t i0, std::size_t i1, double offset, double width,
  bool reversed)
{
  LaneSegment lane;
  lane.id = std::move(id);
  lane.centerline = offset_slice(poses, i0, i1, offset);
  lane.left_edge = offset_slice(poses, i0, i1, offset + 0.5 * width);
  lane.right_edge = offset_slice(poses, i0, i1, offset - 0.5 * width);
  if (reversed) {
    std::reverse(lane.centerline.begin(), lane.centerline.end());
    std::reverse(lane.left_edge.begin(), lane.left_edge.end());
    std::reverse(lane.right_edge.begin(), lane.right_edge.end());
    std::swap(lane.left_edge, lane.right_edge);
  }
  return lane;
}

// Makes end caps of linked lanes coincide. A lane entered from several predecessors keeps its own
// start; otherwise the successor adopts its predecessor's end.
void snap_joints(std::vector<LaneSegment> & lanes)
{
  auto find = [&](const LaneId & id) -> LaneSegment & {
    return *std::find_if(lanes.begin(), lanes.end(), [&](const LaneSegment & l) { return l.id == id; });
  };
  for (auto & lane : lanes) {
    for (const auto & next_id : lane.successors) {
      LaneSegment & next = find(next_id);
      if (next.predecessors.size() > 1) {
        lane.centerline.back() = next.centerline.front();
        lane.left_edge.back() = next.left_edge.front();
        lane.right_edge.back() = next.right_edge.front();
      } else {
        next.centerline.front() = lane.centerline.back();
        next.left_edge.front() = lane.left_edge.back();
        next.right_edge.front() = lane.right_edge.back();
      }
    }
  }
}

void link(std::vector<LaneSegment> & lanes, const LaneId & from, const LaneId & to)
{
  for (auto & lane : lanes) {
    if (lane.id == from) lane.successors.push_back(to);
    if (lane.id == to) lane.predecessors.push_back(from);
  }
}

struct Layout
{
  std::vector<LaneSegment> lanes;
  LaneId agent_lane;
  // arc length of the agent along its lane's centerline
  double agent_arc{0.0};
};

Layout build_road(Rng & rng, const SynthParams & params)
{
  std::vector<std::pair<double, double>> pieces;
  double total = 0.0;
  while (total < 320.0) {
    const double length = uniform(rng, 30.0, 80.0);
    const double kappa = uniform(rng, 0.0, 1.0) < 0.3 ? 0.0 : uniform(rng, -1.0 / 45.0, 1.0 / 45.0);
    pieces.emplace_back(length, kappa);
    total += std::round(length);
  }
  const auto poses = integrate_reference(pieces);
  const int n_fwd = uniform_int(rng, 1, 3);
  const bool opposing = uniform(rng, 0.0, 1.0) < 0.5;
  const double w = params.lane_width;

  std::vector<std::size_t> cuts{0};
  while (cuts.back() + 1 < poses.size()) {
    const auto step = static_cast<std::size_t>(uniform_int(rng, 30, 60));
    std::size_t next = std::min(cuts.back() + step, poses.size() - 1);
    if (poses.size() - 1 - next < 15) next = poses.size() - 1;
    cuts.push_back(next);
  }
  const std::size_t n_seg = cuts.size() - 1;

  auto fwd = [](int k, std::size_t j) { return "f" + std::to_string(k) + "_" + std::to_string(j); };
  auto opp = [](std::size_t j) { return "o_" + std::to_string(j); };

  Layout layout;
  for (std::size_t j = 0; j < n_seg; ++j) {
    for (int k = 0; k < n_fwd; ++k) {
      LaneSegment lane = road_lane(fwd(k, j), poses, cuts[j], cuts[j + 1], k * w, w, false);
      if (j + 1 < n_seg) lane.successors.push_back(fwd(k, j + 1));
      if (j > 0) lane.predecessors.push_back(fwd(k, j - 1));
      if (k > 0) lane.right_neighbor = fwd(k - 1, j);
      if (k + 1 < n_fwd) {
        lane.left_neighbor = fwd(k + 1, j);
      } else if (opposing) {
        lane.left_neighbor = opp(j);
      }
      layout.lanes.push_back(std::move(lane));
    }
    if (opposing) {
      LaneSegment lane = road_lane(opp(j), poses, cuts[j], cuts[j + 1], n_fwd * w, w, true);
      if (j > 0) lane.successors.push_back(opp(j - 1));
      if (j + 1 < n_seg) lane.predecessors.push_back(opp(j + 1));
      layout.lanes.push_back(std::move(lane));
    }
  }

  const double s = uniform(rng, 20.0, 70.0);
  const int k = uniform_int(rng, 0, n_fwd - 1);
  std::size_t j = 0;
  while (j + 1 < n_seg && static_cast<double>(cuts[j + 1]) <= s) ++j;
  layout.agent_lane = fwd(k, j);
  layout.agent_arc = s - static_cast<double>(cuts[j]);
  return layout;
}

// Junction with arms indexed counter-clockwise from the west (0 = west, 1 = south, 2 = east,
// 3 = north). Every arm has one inbound and one outbound lane.
Layout build_junction(Rng & rng, const SynthParams & params, bool has_north)
{
  const double w = params.lane_width;
  const double h = 0.5 * w;
  const double c = params.junction_margin;
  const double l_in = 80.0;
  const double l_out = 170.0;

  auto rotate = [](Polyline line, int quarter) {
    for (auto & p : line) {
      for (int q = 0; q < quarter; ++q) p = {-p.y, p.x};
    }
    return line;
  };
  auto in_id = [](int a) { return "in" + std::to_string(a); };
  auto out_id = [](int a) { return "out" + std::to_string(a); };
  auto arm_exists = [&](int a) { return has_north || a != 3; };

  Layout layout;
  for (int a = 0; a < 4; ++a) {
    if (!arm_exists(a)) continue;
    layout.lanes.push_back(make_lane(in_id(a), rotate(straight({-c - l_in, -h}, {-c, -h}), a), w));
    layout.lanes.push_back(make_lane(out_id(a), rotate(straight({-c, h}, {-c - l_out, h}), a), w));
  }
  for (int a = 0; a < 4; ++a) {
    if (!arm_exists(a)) continue;
    struct Turn
    {
      const char * tag;
      int to;
      Polyline center;
    };
    const std::vector<Turn> turns{
      {"s", (a + 2) % 4, straight({-c, -h}, {c, -h})},
      {"r", (a + 1) % 4, arc({-c, -c}, c - h, M_PI / 2.0, 0.0)},
      {"l", (a + 3) % 4, arc({-c, c}, c + h, -M_PI / 2.0, 0.0)},
    };
    for (const auto & turn : turns) {
      if (!arm_exists(turn.to)) continue;
      const LaneId id = "c" + std::to_string(a) + turn.tag;
      layout.lanes.push_back(make_lane(id, rotate(turn.center, a), w));
      link(layout.lanes, in_id(a), id);
      link(layout.lanes, id, out_id(turn.to));
    }
  }
  snap_joints(layout.lanes);
  layout.agent_lane = in_id(0);
  layout.agent_arc = l_in - uniform(rng, 5.0, 60.0);
  return layout;
}

Layout build_y_split(Rng & rng, const SynthParams & params)
{
  const double w = params.lane_width;
  const double radius = uniform(rng, 45.0, 70.0);
  const double bend = uniform(rng, 20.0, 35.0);
  const double l_in = 70.0;
  Layout layout;
  layout.lanes.push_back(make_lane("in", straight({-l_in, 0.0}, {0.0, 0.0}), w));
  for (const int side : {1, -1}) {
    const LaneId id = side > 0 ? "left" : "right";
    std::vector<std::pair<double, double>> pieces{{bend, side / radius}, {160.0, 0.0}};
    Polyline center;
    for (const auto & p : integrate_reference(pieces)) center.push_back(p.position());
    layout.lanes.push_back(make_lane(id, center, w));
    link(layout.lanes, "in", id);
  }
  snap_joints(layout.lanes);
  layout.agent_lane = "in";
  layout.agent_arc = l_in - uniform(rng, 5.0, 50.0);
  return layout;
}

Pose2 pose_on_lane(const LaneSegment & lane, double s)
{
  const auto cum = cumulative_arc_length(lane.centerline);
  const Point2 p = point_at_arc(lane.centerline, cum, s);
  const Point2 t = tangent_at_arc(lane.centerline, cum, s);
  return {p.x, p.y, std::atan2(t.y, t.x)};
}

// Lane route from `start` following random successors until it extends `reach` meters.
Polyline random_route(Rng & rng, const std::vector<LaneSegment> & lanes, const LaneId & start, double reach)
{
  auto find = [&](const LaneId & id) -> const LaneSegment & {
    return *std::find_if(lanes.begin(), lanes.end(), [&](const LaneSegment & l) { return l.id == id; });
  };
  Polyline route;
  const LaneSegment * lane = &find(start);
  double length = 0.0;
  while (true) {
    route.insert(route.end(), lane->centerline.begin(), lane->centerline.end());
    length += polyline_length(lane->centerline);
    if (length >= reach || lane->successors.empty()) break;
    const auto pick = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(lane->successors.size()) - 1));
    lane = &find(lane->successors[pick]);
  }
  return dedupe(route, 1e-6);
}

Trajectory straight_history(const AgentState & current, int steps, double dt)
{
  Trajectory hist;
  hist.dt = dt;
  hist.t0 = -dt * (steps - 1);
  const double c = std::cos(current.pose.heading);
  const double s = std::sin(current.pose.heading);
  for (int i = 0; i < steps; ++i) {
    const double back = current.speed * dt * (steps - 1 - i);
    AgentState st = current;
    st.pose.x -= back * c;
    st.pose.y -= back * s;
    hist.states.push_back(st);
  }
  return hist;
}

Point2 transform(Point2 p, double c, double s, Point2 shift) { return {c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y}; }

void transform_state(AgentState & st, double angle, Point2 shift)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Point2 p = transform(st.pose.position(), c, s, shift);
  st.pose = {p.x, p.y, normalize_angle(st.pose.heading + angle)};
}

}  // namespace

ScenarioRecord generate_scenario(std::uint64_t seed, int index, const SynthParams & params)
{
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(index));
  const auto layout_kind = static_cast<SceneLayout>(index % 4);
  Layout layout;
  switch (layout_kind) {
    case SceneLayout::kRoad:
      layout = build_road(rng, params);
      break;
    case SceneLayout::kIntersection:
      layout = build_junction(rng, params, true);
      break;
    case SceneLayout::kTJunction:
      layout = build_junction(rng, params, false);
      break;
    case SceneLayout::kYSplit:
      layout = build_y_split(rng, params);
      break;
  }
  const auto & lanes = layout.lanes;
  const LaneSegment & start =
    *std::find_if(lanes.begin(), lanes.end(), [&](const LaneSegment & l) { return l.id == layout.agent_lane; });

  AgentState agent;
  agent.pose = pose_on_lane(start, layout.agent_arc);
  const double lateral = uniform(rng, -0.4, 0.4);
  agent.pose.x -= std::sin(agent.pose.heading) * lateral;
  agent.pose.y += std::cos(agent.pose.heading) * lateral;
  agent.pose.heading += uniform(rng, -4.0, 4.0) * M_PI / 180.0;
  agent.speed = uniform(rng, 0.0, 1.0) < params.stationary_fraction ? 0.0 : uniform(rng, 1.0, params.max_speed);

  // ground truth: follow a lane route with a gentle constant acceleration
  PursuitParams pursuit;
  pursuit.horizon = params.future_steps;
  const Polyline route =
    trim_polyline(random_route(rng, lanes, start.id, layout.agent_arc + 200.0), layout.agent_arc, 1e9);
  const double a_gt = agent.speed > 0.0 ? uniform(rng, -1.0, 1.0) : 0.0;
  const Trajectory gt_roll = rollout(
    agent, make_super_path(route), AccelProfile{std::vector<double>(params.future_steps, a_gt)}, pursuit);

  const int n_others = uniform_int(rng, 0, params.max_other_agents);
  std::vector<OtherAgent> others;
  for (int i = 0; i < n_others; ++i) {
    const LaneSegment & lane = lanes[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(lanes.size()) - 1))];
    OtherAgent other;
    other.state.pose = pose_on_lane(lane, uniform(rng, 0.0, polyline_length(lane.centerline)));
    other.state.speed = uniform(rng, 0.0, params.max_speed);
    others.push_back(other);
  }

  // place the whole scene at a random pose so nothing depends on axis alignment
  const double angle = uniform(rng, -M_PI, M_PI);
  const Point2 shift{uniform(rng, -500.0, 500.0), uniform(rng, -500.0, 500.0)};
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<LaneSegment> placed = layout.lanes;
  for (auto & lane : placed) {
    for (Polyline * line : {&lane.centerline, &lane.left_edge, &lane.right_edge}) {
      for (auto & p : *line) p = transform(p, c, s, shift);
    }
  }

  ScenarioRecord scenario;
  scenario.map = LaneGraph(std::move(placed));
  transform_state(agent, angle, shift);
  scenario.focal_agent = agent;
  scenario.focal_history = straight_history(agent, params.history_steps, pursuit.dt);

  Trajectory future;
  future.dt = pursuit.dt;
  future.t0 = pursuit.dt;
  for (std::size_t i = 1; i < gt_roll.size(); ++i) {
    AgentState st = gt_roll.states[i];
    transform_state(st, angle, shift);
    future.states.push_back(st);
  }
  scenario.ground_truth_future = std::move(future);

  for (auto & other : others) {
    transform_state(other.state, angle, shift);
    other.history = straight_history(other.state, params.history_steps, pursuit.dt);
    scenario.other_agents.push_back(std::move(other));
  }
  return scenario;
}

std::vector<ScenarioRecord> generate_corpus(std::uint64_t seed, int count, const SynthParams & params)
{
  std::vector<ScenarioRecord> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(generate_scenario(seed, i, params));
  }
  return out;
}

}  // namespace bgp
