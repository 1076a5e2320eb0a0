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

#include "bgp/artifacts.hpp"

#include "bgp/error.hpp"

#include <cmath>

namespace bgp
{

namespace
{

[[noreturn]] void fail(const std::string & source, const std::string & what)
{
  throw Error(ErrorCode::kParse, source + ": " + what);
}

std::vector<LaneId> ids_from_json(const Json & j, const std::string & field)
{
  std::vector<LaneId> ids;
  if (j.is_null()) {
    return ids;
  }
  if (!j.is_array()) {
    fail(field, "expected an array of lane ids");
  }
  for (const auto & id : j) {
    if (!id.is_string()) {
      fail(field, "expected a lane id string");
    }
    ids.push_back(id.get<std::string>());
  }
  return ids;
}

bool looks_like_trajectory(const Json & j) { return j.is_array() && !j.empty() && j.front().is_array(); }

}  // namespace

Json wrap_artifact(std::string_view kind, Json data)
{
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = std::string(kind);
  doc["data"] = std::move(data);
  return doc;
}

Json unwrap_artifact(const Json & doc, std::string_view kind, const std::string & source)
{
  if (!doc.is_object()) {
    return doc;
  }
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer()) {
    fail(source + ".schema_version", "missing or not an integer");
  }
  if (doc.at("schema_version").get<int>() != kSchemaVersion) {
    fail(source + ".schema_version", "unsupported version " + doc.at("schema_version").dump());
  }
  if (doc.contains("kind") && doc.at("kind") != std::string(kind)) {
    fail(source + ".kind", "expected " + std::string(kind) + ", found " + doc.at("kind").dump());
  }
  if (!doc.contains("data")) {
    fail(source + ".data", "missing required key");
  }
  return doc.at("data");
}

Json boundary_set_to_json(const BoundarySet & set)
{
  Json out = Json::array();
  for (const auto & b : set.boundaries) {
    out.push_back(
      {{"left", polyline_to_json(b.left)},
       {"right", polyline_to_json(b.right)},
       {"left_path", b.left_path},
       {"right_path", b.right_path}});
  }
  return out;
}

BoundarySet boundary_set_from_json(const Json & payload, const std::string & source)
{
  if (!payload.is_array()) {
    fail(source, "expected an array of boundaries");
  }
  BoundarySet set;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    const std::string field = source + "[" + std::to_string(i) + "]";
    const Json & bj = payload[i];
    if (!bj.is_object() || !bj.contains("left") || !bj.contains("right")) {
      fail(field, "expected an object with left and right polylines");
    }
    Boundary b;
    b.left = polyline_from_json(bj.at("left"), field + ".left");
    b.right = polyline_from_json(bj.at("right"), field + ".right");
    if (bj.contains("left_path")) b.left_path = ids_from_json(bj.at("left_path"), field + ".left_path");
    if (bj.contains("right_path")) b.right_path = ids_from_json(bj.at("right_path"), field + ".right_path");
    if (const std::string problem = check_boundary(b); !problem.empty()) {
      fail(field, problem);
    }
    set.boundaries.push_back(std::move(b));
  }
  return set;
}

Json prediction_set_to_json(const PredictionSet & preds)
{
  Json out = Json::array();
  for (const auto & e : preds.entries) {
    out.push_back(
      {{"trajectory", trajectory_to_json(e.trajectory)},
       {"likelihood", e.likelihood},
       {"boundary", e.boundary},
       {"mode", e.mode}});
  }
  return out;
}

PredictionSet prediction_set_from_json(const Json & payload, const std::string & source)
{
  PredictionSet preds;
  if (looks_like_trajectory(payload)) {
    PredictionEntry entry;
    entry.trajectory = trajectory_from_json(payload, source);
    entry.likelihood = 1.0;
    preds.entries.push_back(std::move(entry));
    return preds;
  }
  if (!payload.is_array()) {
    fail(source, "expected an array of predictions");
  }
  for (std::size_t i = 0; i < payload.size(); ++i) {
    const std::string field = source + "[" + std::to_string(i) + "]";
    const Json & ej = payload[i];
    if (!ej.is_object() || !ej.contains("trajectory")) {
      fail(field, "expected an object with a trajectory");
    }
    PredictionEntry entry;
    entry.trajectory = trajectory_from_json(ej.at("trajectory"), field + ".trajectory");
    entry.likelihood = ej.value("likelihood", 1.0);
    if (!(entry.likelihood >= 0.0) || !std::isfinite(entry.likelihood)) {
      fail(field + ".likelihood", "expected a non-negative number");
    }
    entry.boundary = ej.value("boundary", -1);
    entry.mode = ej.value("mode", -1);
    preds.entries.push_back(std::move(entry));
  }
  return preds;
}

Json values_to_json(const std::vector<double> & values) { return Json(values); }

std::vector<double> values_from_json(const Json & payload, const std::string & source)
{
  if (!payload.is_array()) {
    fail(source, "expected an array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    if (!payload[i].is_number() || !std::isfinite(payload[i].get<double>())) {
      fail(source + "[" + std::to_string(i) + "]", "expected a finite number");
    }
    out.push_back(payload[i].get<double>());
  }
  return out;
}

Json read_json_file(const std::string & path) { return parse_json(read_text_file(path), path); }

void write_json_file(const std::string & path, const Json & doc) { write_text_file(path, doc.dump() + "\n"); }

BoundarySet load_boundary_set_file(const std::string & path)
{
  return boundary_set_from_json(unwrap_artifact(read_json_file(path), "boundary_set", path), path);
}

PredictionSet load_prediction_file(const std::string & path)
{
  const Json doc = read_json_file(path);
  if (doc.is_object() && doc.value("kind", "") == "trajectory") {
    return prediction_set_from_json(unwrap_artifact(doc, "trajectory", path), path);
  }
  return prediction_set_from_json(unwrap_artifact(doc, "prediction_set", path), path);
}

WeightProfile load_weight_file(const std::string & path)
{
  return {values_from_json(unwrap_artifact(read_json_file(path), "weight_profile", path), path)};
}

AccelProfile load_accel_file(const std::string & path)
{
  return {values_from_json(unwrap_artifact(read_json_file(path), "accel_profile", path), path)};
}

Trajectory load_trajectory_file(const std::string & path)
{
  return trajectory_from_json(unwrap_artifact(read_json_file(path), "trajectory", path), path);
}

}  // namespace bgp
