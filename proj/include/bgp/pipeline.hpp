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

#ifndef BGP__PIPELINE_HPP_
#define BGP__PIPELINE_HPP_

#include "bgp/boundary_gen.hpp"
#include "bgp/metrics.hpp"
#include "bgp/predictor.hpp"
#include "bgp/scene_attack.hpp"
#include "bgp/scenario_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bgp
{

struct PipelineOptions
{
  BoundaryConfig boundary{};
  PredictorConfig predictor{};
  AttackParams attack{};
  double eps_nms{2.0};
  double miss_threshold{2.0};
  int k{6};
};

/// Boundary extraction, prediction and NMS for one scenario.
PredictionSet run_prediction(
  const ScenarioRecord & scenario, const PipelineOptions & options, BoundarySet * boundaries = nullptr);

struct FeasibilityTally
{
  std::size_t steps{0};
  std::size_t accel_steps{0};
  std::size_t curvature_steps{0};
  std::size_t any_steps{0};
  std::size_t trajectories{0};
  std::size_t accel_trajectories{0};
  std::size_t curvature_trajectories{0};
  std::size_t any_trajectories{0};

  void add(const FeasibilityReport & report);
  void add(const FeasibilityTally & other);
};

struct OffroadTally
{
  std::size_t points{0};
  std::size_t offroad_points{0};
  std::size_t trajectories{0};
  std::size_t offroad_trajectories{0};
  double worst_clearance{0.0};

  void add(const OffroadRates & rates);
  void add(const OffroadTally & other);
  double sor() const;
  double hor() const;
};

struct ScenarioEvaluation
{
  std::string name;
  std::optional<std::string> error;
  std::optional<DisplacementMetrics> top_k;
  std::optional<DisplacementMetrics> top_1;
  std::optional<Maneuver> maneuver;
  std::size_t boundaries{0};
  std::size_t predictions{0};
  FeasibilityTally feasibility;
  OffroadTally offroad;
  OffroadTally baseline_offroad;
};

/// Scores a prediction set: displacement metrics when the scenario has a ground-truth future,
/// feasibility and off-road rates always.
ScenarioEvaluation evaluate_predictions(
  const ScenarioRecord & scenario, const PredictionSet & preds, const PipelineOptions & options);

Json evaluation_to_json(const ScenarioEvaluation & eval);

struct AttackCell
{
  std::size_t variants{0};
  std::size_t degenerate_warps{0};
  std::size_t pipeline_failures{0};
  OffroadTally offroad;
  OffroadTally baseline_offroad;

  void add(const AttackCell & other);
};

struct AttackEvaluation
{
  // indexed by attack_grid() order
  std::vector<AttackCell> cells;
};

AttackEvaluation evaluate_attack_grid(const ScenarioRecord & scenario, const PipelineOptions & options);

struct BenchOptions
{
  PipelineOptions pipeline{};
  bool attack_grid{false};
  int jobs{1};
};

struct BenchResult
{
  std::vector<ScenarioEvaluation> scenarios;
  std::vector<AttackEvaluation> attacks;
  std::size_t failures{0};
};

/// Runs every scenario file (processed in sorted path order regardless of `jobs`).
BenchResult run_bench(std::vector<std::string> paths, const BenchOptions & options);

/// Same for in-memory scenarios, named by position.
BenchResult run_bench(const std::vector<ScenarioRecord> & scenarios, const BenchOptions & options);

/// Aggregate report shaped like the feasibility and attack tables. Deterministic byte-for-byte
/// for a given set of inputs.
Json bench_report(const BenchResult & result, const BenchOptions & options);

}  // namespace bgp

#endif  // BGP__PIPELINE_HPP_
