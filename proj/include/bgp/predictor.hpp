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

#ifndef BGP__PREDICTOR_HPP_
#define BGP__PREDICTOR_HPP_

#include "bgp/boundary_gen.hpp"
#include "bgp/map_graph.hpp"
#include "bgp/pure_pursuit.hpp"
#include "bgp/superposition.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace bgp
{

struct PredictionEntry
{
  Trajectory trajectory;
  double likelihood{0.0};
  // provenance: index into the boundary set and mode template (-1 for non-boundary predictors)
  int boundary{-1};
  int mode{-1};
};

/// Multi-modal prediction; likelihoods are non-negative and sum to one.
struct PredictionSet
{
  std::vector<PredictionEntry> entries;
};

inline constexpr int kMaxModes = 6;

enum class WeightTemplate { kConstant, kRamp, kCenterline };

struct ModeTemplate
{
  std::string_view name;
  WeightTemplate shape;
  double w_begin;
  double w_end;
  double accel;
};

/// The fixed mode table: lateral extremes, lane-change-like ramps and the agent's own lane, each
/// paired with a speed change that brackets the current speed.
const std::vector<ModeTemplate> & mode_templates();

struct PredictorConfig
{
  int modes{kMaxModes};
  PursuitParams pursuit{};
  // passes that move the weights so the rollout, not just the path, follows the template
  int tracking_iterations{6};
  double tracking_gain{0.6};
  // corrections are applied this many boundary points ahead of where the error was seen
  int tracking_lead{4};
};

/// (fractional boundary index, lateral fraction) for each trajectory state states[1..], where the
/// lateral fraction is 0 on the right edge and 1 on the left edge. States beyond the
/// boundary's last chord are skipped.
std::vector<std::pair<double, double>> realized_fractions(const Trajectory & traj, const Boundary & boundary);

/// Iteratively offsets `target` so that the pure-pursuit rollout's realized lateral fraction
/// approaches it. Returns the adjusted profile, clamped to [0, 1].
WeightProfile compensate_tracking(
  const Boundary & boundary, const WeightProfile & target, const AgentState & agent,
  const AccelProfile & accel, const PredictorConfig & config);

/// Weights that keep the path on the centerline of the lane the agent currently drives in.
WeightProfile centerline_tracking_weights(
  const LaneGraph & graph, const Boundary & boundary, const AgentState & agent);

WeightProfile template_weights(
  const ModeTemplate & mode, const LaneGraph & graph, const Boundary & boundary, const AgentState & agent);

/// Rolls out every mode template on every boundary and scores them with a softmax.
/// Throws Error(kNoPrediction) for an empty boundary set.
PredictionSet predict(
  const ScenarioRecord & scenario, const BoundarySet & set, const PredictorConfig & config = {});

/// Soft NMS: entries whose endpoint lies within `epsilon` of a higher-ranked surviving entry get
/// their likelihood multiplied by `penalty`; the result is renormalized.
PredictionSet nms_predictions(PredictionSet preds, double epsilon = 2.0, double penalty = 0.1);

/// Map-oblivious reference: constant speed and heading for the whole horizon.
PredictionSet constant_velocity_prediction(const AgentState & agent, const PursuitParams & params = {});

}  // namespace bgp

#endif  // BGP__PREDICTOR_HPP_
