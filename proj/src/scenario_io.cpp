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

#include "bgp/scenario_io.hpp"

#include "bgp/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace bgp
{

namespace
{

constexpr double kStepTolerance = 1e-6;

[[noreturn]] void fail(const std::string & field, const std::string & what)
{
  throw Error(ErrorCode::kParse, field + ": " + what);
}

double number(const Json & j, const std::string & field)
{
  if (!j.is_number()) {
    fail(field, "expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    fail(field, "expected a finite number");
  }
  return v;
}

const Json & member(const Json & obj, const char * key, const std::string & field)
{
  if (!obj.is_object() || !obj.contains(key)) {
    fail(field + "." + key, "missing required key");
  }
  return obj.at(key);
}

std::string id_string(const Json & j, const std::string & field)
{
  if (j.is_string()) {
    return j.get<std::string>();
  }
  if (j.is_number_integer()) {
    return std::to_string(j.get<long long>());
  }
  fail(field, "expected a lane id string");
}

std::vector<LaneId> id_list(const Json & j, const std::string & field)
{
  if (!j.is_array()) {
    fail(field, "expected an array of lane ids");
  }
  std::vector<LaneId> ids;
  for (std::size_t i = 0; i < j.size(); ++i) {
    ids.push_back(id_string(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return ids;
}

std::optional<LaneId> optional_id(const Json & lane, const char * key, const std::string & field)
{
  if (!lane.contains(key) || lane.at(key).is_null()) {
    return std::nullopt;
  }
  return id_string(lane.at(key), field + "." + key);
}

AgentState agent_from_json(const Json & j, const std::string & field)
{
  AgentState s;
  s.pose.x = number(member(j, "x", field), field + ".x");
  s.pose.y = number(member(j, "y", field), field + ".y");
  s.pose.heading = normalize_angle(number(member(j, "heading", field), field + ".heading"));
  s.speed = number(member(j, "speed", field), field + ".speed");
  if (s.speed < 0.0) {
    fail(field + ".speed", "speed must be non-negative");
  }
  return s;
}

Json agent_to_json(const AgentState & s)
{
  return {{"x", s.pose.x}, {"y", s.pose.y}, {"heading", s.pose.heading}, {"speed", s.speed}};
}

}  // namespace

Json polyline_to_json(const Polyline & line)
{
  Json out = Json::array();
  for (const auto & p : line) {
    out.push_back({p.x, p.y});
  }
  return out;
}

Polyline polyline_from_json(const Json & j, const std::string & field)
{
  if (!j.is_array()) {
    fail(field, "expected an array of [x, y] pairs");
  }
  Polyline line;
  line.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto & p = j[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) {
      fail(where, "expected an [x, y] pair");
    }
    line.push_back({number(p[0], where + "[0]"), number(p[1], where + "[1]")});
  }
  return line;
}

Json trajectory_to_json(const Trajectory & traj)
{
  Json out = Json::array();
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto & s = traj.states[i];
    out.push_back({traj.t0 + static_cast<double>(i) * traj.dt, s.pose.x, s.pose.y, s.pose.heading, s.speed});
  }
  return out;
}

Trajectory trajectory_from_json(const Json & j, const std::string & field)
{
  if (!j.is_array()) {
    fail(field, "expected an array of [t, x, y, heading, speed] rows");
  }
  Trajectory traj;
  std::vector<double> times;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto & row = j[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != 5) {
      fail(where, "expected a [t, x, y, heading, speed] row");
    }
    AgentState s;
    times.push_back(number(row[0], where + "[0]"));
    s.pose.x = number(row[1], where + "[1]");
    s.pose.y = number(row[2], where + "[2]");
    s.pose.heading = normalize_angle(number(row[3], where + "[3]"));
    s.speed = number(row[4], where + "[4]");
    if (s.speed < 0.0) {
      fail(where + "[4]", "speed must be non-negative");
    }
    traj.states.push_back(s);
  }
  if (!times.empty()) {
    traj.t0 = times.front();
  }
  if (times.size() >= 2) {
    traj.dt = times[1] - times[0];
    if (std::abs(traj.dt - 0.1) > kStepTolerance) {
      fail(field, "time step must be 0.1 s");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (std::abs(times[i] - times[i - 1] - traj.dt) > kStepTolerance) {
        fail(field + "[" + std::to_string(i) + "][0]", "timestamps are not uniformly spaced");
      }
    }
    traj.dt = 0.1;
  }
  return traj;
}

ScenarioRecord scenario_from_json(const Json & doc)
{
  if (!doc.is_object()) {
    fail("<root>", "expected an object");
  }
  const auto & lanes_json = member(doc, "lanes", "<root>");
  if (!lanes_json.is_array()) {
    fail("lanes", "expected an array");
  }
  std::vector<LaneSegment> lanes;
  for (std::size_t i = 0; i < lanes_json.size(); ++i) {
    const auto & lj = lanes_json[i];
    const std::string field = "lanes[" + std::to_string(i) + "]";
    if (!lj.is_object()) {
      fail(field, "expected an object");
    }
    LaneSegment lane;
    lane.id = id_string(member(lj, "id", field), field + ".id");
    lane.centerline = polyline_from_json(member(lj, "centerline", field), field + ".centerline");
    lane.left_edge = polyline_from_json(member(lj, "left_edge", field), field + ".left_edge");
    lane.right_edge = polyline_from_json(member(lj, "right_edge", field), field + ".right_edge");
    lane.successors = id_list(member(lj, "successors", field), field + ".successors");
    lane.predecessors = id_list(member(lj, "predecessors", field), field + ".predecessors");
    lane.left_neighbor = optional_id(lj, "left_neighbor", field);
    lane.right_neighbor = optional_id(lj, "right_neighbor", field);
    lanes.push_back(std::move(lane));
  }

  ScenarioRecord scenario;
  scenario.map = LaneGraph(std::move(lanes));
  scenario.focal_agent = agent_from_json(member(doc, "focal_agent", "<root>"), "focal_agent");
  if (doc.contains("focal_history")) {
    scenario.focal_history = trajectory_from_json(doc.at("focal_history"), "focal_history");
  }
  if (doc.contains("other_agents")) {
    const auto & others = doc.at("other_agents");
    if (!others.is_array()) {
      fail("other_agents", "expected an array");
    }
    for (std::size_t i = 0; i < others.size(); ++i) {
      const std::string field = "other_agents[" + std::to_string(i) + "]";
      OtherAgent other;
      other.state = agent_from_json(others[i], field);
      if (others[i].contains("history")) {
        other.history = trajectory_from_json(others[i].at("history"), field + ".history");
      }
      scenario.other_agents.push_back(std::move(other));
    }
  }
  if (doc.contains("ground_truth_future") && !doc.at("ground_truth_future").is_null()) {
    scenario.ground_truth_future =
      trajectory_from_json(doc.at("ground_truth_future"), "ground_truth_future");
    const auto & hist = scenario.focal_history;
    const auto & fut = *scenario.ground_truth_future;
    if (!hist.states.empty() && !fut.states.empty()) {
      const double hist_end = hist.t0 + hist.dt * static_cast<double>(hist.states.size() - 1);
      if (hist_end >= fut.t0 - kStepTolerance) {
        fail("ground_truth_future[0][0]", "future must start after the history ends");
      }
    }
  }
  return scenario;
}

ScenarioRecord load_scenario(std::string_view text)
{
  return scenario_from_json(parse_json(std::string(text), "<scenario>"));
}

ScenarioRecord load_scenario_file(const std::string & path)
{
  return scenario_from_json(parse_json(read_text_file(path), path));
}

Json scenario_to_json(const ScenarioRecord & scenario)
{
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  Json lanes = Json::array();
  for (const auto & lane : scenario.map.lanes()) {
    Json lj;
    lj["id"] = lane.id;
    lj["centerline"] = polyline_to_json(lane.centerline);
    lj["left_edge"] = polyline_to_json(lane.left_edge);
    lj["right_edge"] = polyline_to_json(lane.right_edge);
    lj["successors"] = lane.successors;
    lj["predecessors"] = lane.predecessors;
    lj["left_neighbor"] = lane.left_neighbor ? Json(*lane.left_neighbor) : Json(nullptr);
    lj["right_neighbor"] = lane.right_neighbor ? Json(*lane.right_neighbor) : Json(nullptr);
    lanes.push_back(std::move(lj));
  }
  doc["lanes"] = std::move(lanes);
  doc["focal_agent"] = agent_to_json(scenario.focal_agent);
  doc["focal_history"] = trajectory_to_json(scenario.focal_history);
  Json others = Json::array();
  for (const auto & other : scenario.other_agents) {
    Json o = agent_to_json(other.state);
    o["history"] = trajectory_to_json(other.history);
    others.push_back(std::move(o));
  }
  doc["other_agents"] = std::move(others);
  if (scenario.ground_truth_future) {
    doc["ground_truth_future"] = trajectory_to_json(*scenario.ground_truth_future);
  }
  return doc;
}

void save_scenario_file(const ScenarioRecord & scenario, const std::string & path)
{
  write_text_file(path, scenario_to_json(scenario).dump());
}

std::string read_text_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write " + path);
  }
  out << text;
  if (!text.empty() && text.back() != '\n') {
    out << '\n';
  }
}

Json parse_json(const std::string & text, const std::string & source)
{
  try {
    return Json::parse(text);
  } catch (const Json::parse_error & e) {
    throw Error(ErrorCode::kParse, source + ": " + e.what());
  }
}

}  // namespace bgp
