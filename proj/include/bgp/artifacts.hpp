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

#ifndef BGP__ARTIFACTS_HPP_
#define BGP__ARTIFACTS_HPP_

#include "bgp/boundary_gen.hpp"
#include "bgp/predictor.hpp"
#include "bgp/pure_pursuit.hpp"
#include "bgp/scenario_io.hpp"
#include "bgp/superposition.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bgp
{

// Artifacts are written as {"schema_version": 1, "kind": ..., "data": ...}. Readers also accept the
// bare `data` payload so hand-written files stay short.

Json wrap_artifact(std::string_view kind, Json data);
/// Returns the payload, checking kind and version when the document is wrapped.
Json unwrap_artifact(const Json & doc, std::string_view kind, const std::string & source);

/// Payload: array of {left, right, left_path, right_path}.
Json boundary_set_to_json(const BoundarySet & set);
BoundarySet boundary_set_from_json(const Json & payload, const std::string & source);

/// Payload: array of {trajectory, likelihood, boundary, mode}. A bare trajectory is read as a
/// single prediction with likelihood 1.
Json prediction_set_to_json(const PredictionSet & preds);
PredictionSet prediction_set_from_json(const Json & payload, const std::string & source);

/// Payload: array of reals.
Json values_to_json(const std::vector<double> & values);
std::vector<double> values_from_json(const Json & payload, const std::string & source);

Json read_json_file(const std::string & path);
void write_json_file(const std::string & path, const Json & doc);

BoundarySet load_boundary_set_file(const std::string & path);
PredictionSet load_prediction_file(const std::string & path);
WeightProfile load_weight_file(const std::string & path);
AccelProfile load_accel_file(const std::string & path);
Trajectory load_trajectory_file(const std::string & path);

}  // namespace bgp

#endif  // BGP__ARTIFACTS_HPP_
