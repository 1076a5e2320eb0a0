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

#include "bgp/pipeline.hpp"

#include "bgp/error.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace bgp
{

PredictionSet run_prediction(
  const ScenarioRecord & scenario, const PipelineOptions & options, BoundarySet * boundaries)
{
  BoundarySet set = generate_boundary_set(scenario.map, scenario.focal_agent, options.boundary);
  PredictionSet preds = nms_predictions(predict(scenario, set, options.predictor), options.eps_nms);
  if (boundaries) {
    *boundaries = std::move(set);
  }
  return preds;
}

void FeasibilityTally::add(const FeasibilityReport & report)
{
  steps += report.steps;
  accel_steps += report.accel_steps;
  curvature_steps += report.curvature_steps;
  any_steps += report.any_steps;
  ++trajectories;
  accel_trajectories += report.accel_infeasible() ? 1 : 0;
  curvature_trajectories += report.curvature_infeasible() ? 1 : 0;
  any_trajectories += report.infeasible() ? 1 : 0;
}

void FeasibilityTally::add(const FeasibilityTally & o)
{
  steps += o.steps;
  accel_steps += o.accel_steps;
  curvature_steps += o.curvature_steps;
  any_steps += o.any_steps;
  trajectories += o.trajectories;
  accel_trajectories += o.accel_trajectories;
  curvature_trajectories += o.curvature_trajectories;
  any_trajectories += o.any_trajectories;
}

void OffroadTally::add(const OffroadRates & r)
{
  points += r.points;
  offroad_points += r.offroad_points;
  trajectories += r.trajectories;
  offroad_trajectories += r.offroad_trajectories;
  worst_clearance = std::min(worst_clearance, r.worst_clearance);
}

void OffroadTally::add(const OffroadTally & o)
{
  points += o.points;
  offroad_points += o.offroad_points;
  trajectories += o.trajectories;
  offroad_trajectories += o.offroad_trajectories;
  worst_clearance = std::min(worst_clearance, o.worst_clearance);
}

double OffroadTally::sor() const
{
  return points ? static_cast<double>(offroad_points) / static_cast<double>(points) : 0.0;
}

double OffroadTally::hor() const
{
  return trajectories ? static_cast<double>(offroad_trajectories) / static_cast<double>(trajectories) : 0.0;
}

void AttackCell::add(const AttackCell & o)
{
  variants += o.variants;
  degenerate_warps += o.degenerate_warps;
  pipeline_failures += o.pipeline_failures;
  offroad.add(o.offroad);
  baseline_offroad.add(o.baseline_offroad);
}

namespace
{

PredictionSet baseline(const ScenarioRecord & scenario, const PipelineOptions & options)
{
  return constant_velocity_prediction(scenario.focal_agent, options.predictor.pursuit);
}

Json tally_json(const FeasibilityTally & t)
{
  auto frac = [](std::size_t a, std::size_t b) { return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0; };
  return {
    {"steps", t.steps},
    {"trajectories", t.trajectories},
    {"infeasible_steps", {{"acceleration", frac(t.accel_steps, t.steps)}, {"curvature", frac(t.curvature_steps, t.steps)}, {"any", frac(t.any_steps, t.steps)}}},
    {"infeasible_trajectories",
     {{"acceleration", frac(t.accel_trajectories, t.trajectories)},
      {"curvature", frac(t.curvature_trajectories, t.trajectories)},
      {"any", frac(t.any_trajectories, t.trajectories)}}},
  };
}

Json tally_json(const OffroadTally & t)
{
  return {
    {"sor", t.sor()}, {"hor", t.hor()}, {"points", t.points}, {"trajectories", t.trajectories},
    {"worst_clearance", t.worst_clearance}};
}

Json metrics_json(const DisplacementMetrics & m)
{
  return {
    {"min_ade", m.min_ade}, {"min_fde", m.min_fde}, {"brier_min_ade", m.brier_min_ade},
    {"brier_min_fde", m.brier_min_fde}, {"miss", m.miss}};
}

Json cell_json(const AttackCell & c)
{
  return {
    {"variants", c.variants},
    {"degenerate_warps", c.degenerate_warps},
    {"pipeline_failures", c.pipeline_failures},
    {"boundary_guided", tally_json(c.offroad)},
    {"constant_velocity", tally_json(c.baseline_offroad)}};
}

}  // namespace

ScenarioEvaluation evaluate_predictions(
  const ScenarioRecord & scenario, const PredictionSet & preds, const PipelineOptions & options)
{
  ScenarioEvaluation eval;
  eval.predictions = preds.entries.size();
  std::set<int> sources;
  for (const auto & e : preds.entries) {
    if (e.boundary >= 0) sources.insert(e.boundary);
  }
  eval.boundaries = sources.size();
  if (scenario.ground_truth_future && !scenario.ground_truth_future->states.empty()) {
    const Trajectory gt = future_with_current(scenario);
    eval.top_k = displacement_metrics(preds, gt, options.k, options.miss_threshold);
    eval.top_1 = displacement_metrics(preds, gt, 1, options.miss_threshold);
    eval.maneuver = classify_maneuver(gt);
  }
  FeasibilityParams fp;
  fp.a_max = options.predictor.pursuit.a_max;
  fp.kappa_max = options.predictor.pursuit.kappa_max;
  for (const auto & e : preds.entries) {
    if (e.trajectory.size() >= 3) {
      eval.feasibility.add(feasibility_check(e.trajectory, fp));
    }
  }
  eval.offroad.add(offroad_rates(preds, scenario.map));
  eval.baseline_offroad.add(offroad_rates(baseline(scenario, options), scenario.map));
  return eval;
}

Json evaluation_to_json(const ScenarioEvaluation & eval)
{
  Json j;
  j["name"] = eval.name;
  if (eval.error) {
    j["error"] = *eval.error;
    return j;
  }
  j["boundaries"] = eval.boundaries;
  j["predictions"] = eval.predictions;
  if (eval.top_k) j["top_k"] = metrics_json(*eval.top_k);
  if (eval.top_1) j["top_1"] = metrics_json(*eval.top_1);
  if (eval.maneuver) j["maneuver"] = std::string(to_string(*eval.maneuver));
  j["feasibility"] = tally_json(eval.feasibility);
  j["offroad"] = tally_json(eval.offroad);
  j["constant_velocity_offroad"] = tally_json(eval.baseline_offroad);
  return j;
}

AttackEvaluation evaluate_attack_grid(const ScenarioRecord & scenario, const PipelineOptions & options)
{
  AttackEvaluation out;
  for (const auto & spec : attack_grid()) {
    AttackCell cell;
    cell.variants = 1;
    try {
      const ScenarioRecord warped = apply_attack(scenario, spec, options.attack);
      try {
        cell.offroad.add(offroad_rates(run_prediction(warped, options), warped.map));
      } catch (const Error &) {
        ++cell.pipeline_failures;
      }
      cell.baseline_offroad.add(offroad_rates(baseline(warped, options), warped.map));
    } catch (const Error & e) {
      if (e.code() != ErrorCode::kDegenerateWarp) throw;
      ++cell.degenerate_warps;
    }
    out.cells.push_back(cell);
  }
  return out;
}

namespace
{

BenchResult run_indexed(
  std::size_t count, const std::function<std::string(std::size_t)> & name_of,
  const std::function<ScenarioRecord(std::size_t)> & load, const BenchOptions & options)
{
  BenchResult result;
  result.scenarios.resize(count);
  if (options.attack_grid) {
    result.attacks.resize(count);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      ScenarioEvaluation & eval = result.scenarios[i];
      eval.name = name_of(i);
      try {
        const ScenarioRecord scenario = load(i);
        BoundarySet set;
        const PredictionSet preds = run_prediction(scenario, options.pipeline, &set);
        const std::string name = eval.name;
        eval = evaluate_predictions(scenario, preds, options.pipeline);
        eval.name = name;
        eval.boundaries = set.boundaries.size();
        if (options.attack_grid) {
          result.attacks[i] = evaluate_attack_grid(scenario, options.pipeline);
        }
      } catch (const std::exception & e) {
        eval.error = e.what();
        if (options.attack_grid) {
          result.attacks[i] = AttackEvaluation{};
        }
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto & t : pool) t.join();
  }
  for (const auto & eval : result.scenarios) {
    result.failures += eval.error ? 1 : 0;
  }
  return result;
}

}  // namespace

BenchResult run_bench(std::vector<std::string> paths, const BenchOptions & options)
{
  std::sort(paths.begin(), paths.end());
  return run_indexed(
    paths.size(), [&](std::size_t i) { return std::filesystem::path(paths[i]).filename().string(); },
    [&](std::size_t i) { return load_scenario_file(paths[i]); }, options);
}

BenchResult run_bench(const std::vector<ScenarioRecord> & scenarios, const BenchOptions & options)
{
  return run_indexed(
    scenarios.size(), [](std::size_t i) { return "scenario_" + std::to_string(i); },
    [&](std::size_t i) { return scenarios[i]; }, options);
}

Json bench_report(const BenchResult & result, const BenchOptions & options)
{
  const PipelineOptions & p = options.pipeline;
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["kind"] = "bench_report";
  report["config"] = {
    {"nb", p.boundary.max_boundaries}, {"modes", p.predictor.modes}, {"ld", p.predictor.pursuit.look_ahead},
    {"kappa_max", p.predictor.pursuit.kappa_max}, {"amax", p.predictor.pursuit.a_max}, {"eps_nms", p.eps_nms},
    {"miss_threshold", p.miss_threshold}, {"k", p.k}, {"attack_grid", options.attack_grid}};

  // reductions run in scenario order so the report does not depend on scheduling
  FeasibilityTally feasibility;
  OffroadTally offroad;
  OffroadTally baseline_offroad;
  std::size_t scored = 0;
  double sums[2][4] = {};
  std::size_t misses[2] = {0, 0};
  std::map<std::string, std::size_t> maneuvers;
  Json failures = Json::array();
  for (const auto & eval : result.scenarios) {
    if (eval.error) {
      failures.push_back({{"name", eval.name}, {"error", *eval.error}});
      continue;
    }
    feasibility.add(eval.feasibility);
    offroad.add(eval.offroad);
    baseline_offroad.add(eval.baseline_offroad);
    if (eval.top_k && eval.top_1) {
      ++scored;
      const DisplacementMetrics * m[2] = {&*eval.top_k, &*eval.top_1};
      for (int r = 0; r < 2; ++r) {
        sums[r][0] += m[r]->min_ade;
        sums[r][1] += m[r]->min_fde;
        sums[r][2] += m[r]->brier_min_ade;
        sums[r][3] += m[r]->brier_min_fde;
        misses[r] += m[r]->miss ? 1 : 0;
      }
    }
    if (eval.maneuver) {
      ++maneuvers[std::string(to_string(*eval.maneuver))];
    }
  }
  report["scenarios"] = result.scenarios.size();
  report["failures"] = failures;
  if (scored > 0) {
    const double n = static_cast<double>(scored);
    auto block = [&](int r) {
      return Json{
        {"min_ade", sums[r][0] / n}, {"min_fde", sums[r][1] / n}, {"brier_min_ade", sums[r][2] / n},
        {"brier_min_fde", sums[r][3] / n}, {"miss_rate", static_cast<double>(misses[r]) / n}};
    };
    report["displacement"] = {{"scored", scored}, {"top_k", block(0)}, {"top_1", block(1)}};
  }
  report["maneuvers"] = maneuvers;
  report["feasibility"] = tally_json(feasibility);
  report["offroad"] = {{"boundary_guided", tally_json(offroad)}, {"constant_velocity", tally_json(baseline_offroad)}};

  if (options.attack_grid) {
    const auto grid = attack_grid();
    std::vector<AttackCell> by_spec(grid.size());
    for (const auto & attack : result.attacks) {
      for (std::size_t c = 0; c < attack.cells.size(); ++c) by_spec[c].add(attack.cells[c]);
    }
    Json kinds = Json::object();
    Json by_power = Json::array();
    AttackCell all;
    for (const auto kind : {AttackKind::kSmoothTurn, AttackKind::kDoubleTurn, AttackKind::kRippleRoad}) {
      AttackCell sum;
      for (std::size_t c = 0; c < grid.size(); ++c) {
        if (grid[c].kind != kind) continue;
        sum.add(by_spec[c]);
        Json cell = cell_json(by_spec[c]);
        cell["kind"] = std::string(to_string(kind));
        cell["power_index"] = grid[c].power_index;
        by_power.push_back(std::move(cell));
      }
      kinds[std::string(to_string(kind))] = cell_json(sum);
      all.add(sum);
    }
    kinds["all"] = cell_json(all);
    report["attack"] = {{"by_kind", kinds}, {"by_power", by_power}};
  }

  Json per = Json::array();
  for (const auto & eval : result.scenarios) per.push_back(evaluation_to_json(eval));
  report["per_scenario"] = std::move(per);
  return report;
}

}  // namespace bgp
