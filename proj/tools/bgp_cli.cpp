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
#include "bgp/fitting.hpp"
#include "bgp/pipeline.hpp"
#include "bgp/render.hpp"
#include "bgp/scenario_synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace
{

namespace fs = std::filesystem;
using bgp::Error;
using bgp::ErrorCode;
using bgp::Json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPipeline = 3;
constexpr int kExitPartial = 4;

struct GlobalFlags
{
  int nb{6};
  int modes{6};
  double ld{10.0};
  double kappa_max{0.3};
  double amax{8.0};
  double eps_nms{2.0};
  double miss_threshold{2.0};
  int k{6};
  std::uint64_t seed{0};
  std::string config;
};

void emit(const std::string & path, const std::string & text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    bgp::write_text_file(path, text);
  }
}

// artifacts stay compact; reports are indented for reading
void emit_json(const std::string & path, const Json & doc) { emit(path, doc.dump() + "\n"); }

void emit_report(const std::string & path, const Json & doc) { emit(path, doc.dump(1) + "\n"); }

// Defaults, overridden by the config file, overridden by explicit flags.
bgp::PipelineOptions resolve_options(const CLI::App & app, const GlobalFlags & flags)
{
  GlobalFlags v = flags;
  std::string config_path = flags.config;
  if (config_path.empty()) {
    if (const char * env = std::getenv("BGP_CONFIG")) config_path = env;
  }
  if (!config_path.empty()) {
    const Json doc = bgp::read_json_file(config_path);
    if (!doc.is_object()) {
      throw Error(ErrorCode::kParse, config_path + ": expected an object");
    }
    auto take = [&](const char * key, const char * flag, auto & target) {
      if (doc.contains(key) && app.count(flag) == 0) {
        if (!doc.at(key).is_number()) {
          throw Error(ErrorCode::kParse, config_path + "." + key + ": expected a number");
        }
        target = doc.at(key).get<std::decay_t<decltype(target)>>();
      }
    };
    take("nb", "--nb", v.nb);
    take("modes", "--modes", v.modes);
    take("ld", "--ld", v.ld);
    take("kappa_max", "--kappa-max", v.kappa_max);
    take("amax", "--amax", v.amax);
    take("eps_nms", "--eps-nms", v.eps_nms);
    take("miss_threshold", "--miss-threshold", v.miss_threshold);
    take("k", "--k", v.k);
  }
  if (v.nb < 1 || v.modes < 1 || v.modes > bgp::kMaxModes || !(v.ld > 0.0) || !(v.kappa_max > 0.0) ||
      !(v.amax > 0.0) || !(v.eps_nms >= 0.0) || !(v.miss_threshold >= 0.0) || v.k < 1) {
    throw Error(ErrorCode::kParameter, "flag out of range");
  }
  bgp::PipelineOptions options;
  options.boundary.max_boundaries = v.nb;
  options.predictor.modes = v.modes;
  options.predictor.pursuit.look_ahead = v.ld;
  options.predictor.pursuit.kappa_max = v.kappa_max;
  options.predictor.pursuit.a_max = v.amax;
  options.eps_nms = v.eps_nms;
  options.miss_threshold = v.miss_threshold;
  options.k = v.k;
  return options;
}

std::vector<std::string> scenario_files(const std::string & dir)
{
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, dir + ": not a directory");
  }
  std::vector<std::string> out;
  for (const auto & entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      out.push_back(entry.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Json displacement_json(const bgp::DisplacementMetrics & m)
{
  return {
    {"min_ade", m.min_ade}, {"min_fde", m.min_fde}, {"brier_min_ade", m.brier_min_ade},
    {"brier_min_fde", m.brier_min_fde}, {"miss", m.miss}};
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Boundary-guided trajectory prediction toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--nb", flags.nb, "Maximum number of boundaries")->capture_default_str();
  app.add_option("--modes", flags.modes, "Modes per boundary (1-6)")->capture_default_str();
  app.add_option("--ld", flags.ld, "Pure-pursuit look-ahead distance [m]")->capture_default_str();
  app.add_option("--kappa-max", flags.kappa_max, "Curvature limit [1/m]")->capture_default_str();
  app.add_option("--amax", flags.amax, "Acceleration limit [m/s^2]")->capture_default_str();
  app.add_option("--eps-nms", flags.eps_nms, "Prediction NMS endpoint radius [m]")->capture_default_str();
  app.add_option("--miss-threshold", flags.miss_threshold, "Miss threshold [m]")->capture_default_str();
  app.add_option("--k", flags.k, "Top-k for displacement metrics")->capture_default_str();
  app.add_option("--seed", flags.seed, "Accepted for compatibility; every component is deterministic");
  app.add_option("--config", flags.config, "Config file (defaults to $BGP_CONFIG)");

  std::string scenario_path;
  std::string output;

  auto * extract = app.add_subcommand("extract", "Scenario -> boundary set");
  extract->add_option("scenario", scenario_path)->required();
  extract->add_option("-o,--output", output);

  int boundary_index = 0;
  std::string weights_path;
  std::string accels_path;
  std::string boundaries_path;
  auto * rollout = app.add_subcommand("rollout", "Boundary + weights + accelerations -> trajectory");
  rollout->add_option("scenario", scenario_path)->required();
  rollout->add_option("--boundary-index", boundary_index)->required();
  rollout->add_option("--weights", weights_path)->required();
  rollout->add_option("--accels", accels_path)->required();
  rollout->add_option("--boundaries", boundaries_path, "Boundary-set file (default: extract)");
  rollout->add_option("-o,--output", output);

  int iters = 30;
  auto * fit = app.add_subcommand("fit", "Lowest-ADE constrained fit of the ground truth");
  fit->add_option("scenario", scenario_path)->required();
  fit->add_option("--iters", iters)->capture_default_str();
  fit->add_option("-o,--output", output);

  bool skip_nms = false;
  auto * predict = app.add_subcommand("predict", "Scenario -> prediction set");
  predict->add_option("scenario", scenario_path)->required();
  predict->add_flag("--no-nms", skip_nms, "Keep the raw softmax likelihoods");
  predict->add_option("-o,--output", output);

  std::string kind_name;
  int power = 0;
  int sign = 1;
  bool grid = false;
  bool warp_others = false;
  std::string out_dir;
  auto * attack = app.add_subcommand("attack", "Warp the map ahead of the agent");
  attack->add_option("scenario", scenario_path)->required();
  attack->add_option("--kind", kind_name, "smooth_turn | double_turn | ripple_road");
  attack->add_option("--power", power, "Power index 0-17");
  attack->add_option("--sign", sign, "+1 or -1")->capture_default_str();
  attack->add_flag("--grid", grid, "All 54 kind/power variants");
  attack->add_flag("--warp-others", warp_others, "Move other agents with the map");
  attack->add_option("--out-dir", out_dir, "Directory for --grid output");
  attack->add_option("-o,--output", output);

  std::vector<std::string> eval_inputs;
  bool feasibility_only = false;
  auto * eval = app.add_subcommand("eval", "Score predictions: SCENARIO PREDICTIONS [SCENARIO PREDICTIONS ...]");
  eval->add_option("inputs", eval_inputs)->required();
  eval->add_flag("--feasibility", feasibility_only, "Feasibility and off-road only (no ground truth needed)");
  eval->add_option("-o,--output", output);

  std::string predictions_path;
  bool no_boundaries = false;
  auto * render = app.add_subcommand("render", "SVG of map, boundaries, predictions and ground truth");
  render->add_option("scenario", scenario_path)->required();
  render->add_option("predictions", predictions_path);
  render->add_option("--boundaries", boundaries_path, "Boundary-set file (default: extract)");
  render->add_flag("--no-boundaries", no_boundaries);
  render->add_option("-o,--output", output);

  std::string corpus_dir;
  std::string attack_mode = "none";
  int jobs = 1;
  auto * bench = app.add_subcommand("bench", "predict -> eval over a scenario directory");
  bench->add_option("corpus", corpus_dir)->required();
  bench->add_option("--attack", attack_mode, "none | grid")->capture_default_str()->check(CLI::IsMember({"none", "grid"}));
  bench->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("-o,--output", output);

  int count = 500;
  int first = 0;
  std::uint64_t corpus_seed = 7;
  auto * generate = app.add_subcommand("generate", "Write a synthetic scenario corpus");
  generate->add_option("out_dir", out_dir)->required();
  generate->add_option("--count", count)->capture_default_str()->check(CLI::NonNegativeNumber);
  generate->add_option("--first", first, "Index of the first scenario")->capture_default_str();
  generate->add_option("--corpus-seed", corpus_seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const bgp::PipelineOptions options = resolve_options(app, flags);

    if (*extract) {
      const auto scenario = bgp::load_scenario_file(scenario_path);
      const auto set = bgp::generate_boundary_set(scenario.map, scenario.focal_agent, options.boundary);
      emit_json(output, bgp::wrap_artifact("boundary_set", bgp::boundary_set_to_json(set)));
    } else if (*rollout) {
      const auto scenario = bgp::load_scenario_file(scenario_path);
      const auto set = boundaries_path.empty()
                         ? bgp::generate_boundary_set(scenario.map, scenario.focal_agent, options.boundary)
                         : bgp::load_boundary_set_file(boundaries_path);
      if (boundary_index < 0 || boundary_index >= static_cast<int>(set.boundaries.size())) {
        throw Error(ErrorCode::kParameter, "boundary index " + std::to_string(boundary_index) + " out of range");
      }
      const auto & boundary = set.boundaries[static_cast<std::size_t>(boundary_index)];
      const auto path = bgp::superimpose(boundary, bgp::load_weight_file(weights_path));
      const auto traj =
        bgp::rollout(scenario.focal_agent, path, bgp::load_accel_file(accels_path), options.predictor.pursuit);
      emit_json(output, bgp::wrap_artifact("trajectory", bgp::trajectory_to_json(traj)));
    } else if (*fit) {
      const auto scenario = bgp::load_scenario_file(scenario_path);
      const auto gt = bgp::future_with_current(scenario);
      const auto set = bgp::generate_boundary_set(scenario.map, scenario.focal_agent, options.boundary);
      bgp::PursuitParams params = options.predictor.pursuit;
      params.horizon = static_cast<int>(gt.size()) - 1;
      const auto best = bgp::best_fit(gt, set, iters, params);
      Json data{
        {"boundary_index", best.boundary_index},
        {"ade", best.result.ade},
        {"fde", best.result.fde},
        {"ade_history", best.result.ade_history},
        {"weights", best.result.weights.weights},
        {"accels", best.result.accels.accels},
        {"trajectory", bgp::trajectory_to_json(best.result.trajectory)}};
      emit_report(output, bgp::wrap_artifact("fit_report", data));
    } else if (*predict) {
      const auto scenario = bgp::load_scenario_file(scenario_path);
      bgp::PredictionSet preds;
      if (skip_nms) {
        const auto set = bgp::generate_boundary_set(scenario.map, scenario.focal_agent, options.boundary);
        preds = bgp::predict(scenario, set, options.predictor);
      } else {
        preds = bgp::run_prediction(scenario, options);
      }
      emit_json(output, bgp::wrap_artifact("prediction_set", bgp::prediction_set_to_json(preds)));
    } else if (*attack) {
      const auto scenario = bgp::load_scenario_file(scenario_path);
      bgp::AttackParams params = options.attack;
      params.warp_other_agents = warp_others;
      if (grid) {
        if (out_dir.empty()) {
          throw Error(ErrorCode::kParameter, "--grid needs --out-dir");
        }
        fs::create_directories(out_dir);
        const std::string stem = fs::path(scenario_path).stem().string();
        std::size_t degenerate = 0;
        for (const auto & spec : bgp::attack_grid()) {
          const std::string name = stem + "_" + std::string(bgp::to_string(spec.kind)) + "_" +
                                   (spec.power_index < 10 ? "0" : "") + std::to_string(spec.power_index) + ".json";
          try {
            bgp::save_scenario_file(bgp::apply_attack(scenario, spec, params), (fs::path(out_dir) / name).string());
          } catch (const Error & e) {
            if (e.code() != ErrorCode::kDegenerateWarp) throw;
            std::cerr << name << ": " << e.what() << "\n";
            ++degenerate;
          }
        }
        return degenerate > 0 ? kExitPartial : kExitOk;
      }
      const auto kind = bgp::attack_kind_from_string(kind_name);
      if (!kind) {
        throw Error(ErrorCode::kParameter, "unknown attack kind '" + kind_name + "'");
      }
      const auto warped = bgp::apply_attack(scenario, {*kind, power, sign}, params);
      emit_json(output, bgp::scenario_to_json(warped));
    } else if (*eval) {
      if (eval_inputs.size() % 2 != 0) {
        throw Error(ErrorCode::kParameter, "eval expects SCENARIO PREDICTIONS pairs");
      }
      Json reports = Json::array();
      bgp::FeasibilityTally feasibility;
      bgp::OffroadTally offroad;
      double sums[4] = {0.0, 0.0, 0.0, 0.0};
      std::size_t misses = 0;
      std::size_t scored = 0;
      for (std::size_t i = 0; i < eval_inputs.size(); i += 2) {
        const auto scenario = bgp::load_scenario_file(eval_inputs[i]);
        const auto preds = bgp::load_prediction_file(eval_inputs[i + 1]);
        if (preds.entries.empty()) {
          throw Error(ErrorCode::kNoPrediction, eval_inputs[i + 1] + ": no predictions");
        }
        bgp::ScenarioRecord scored_scenario = scenario;
        if (feasibility_only) scored_scenario.ground_truth_future.reset();
        auto result = bgp::evaluate_predictions(scored_scenario, preds, options);
        result.name = eval_inputs[i];
        Json report = bgp::evaluation_to_json(result);
        report.erase("constant_velocity_offroad");
        reports.push_back(report);
        feasibility.add(result.feasibility);
        offroad.add(result.offroad);
        if (result.top_k) {
          ++scored;
          sums[0] += result.top_k->min_ade;
          sums[1] += result.top_k->min_fde;
          sums[2] += result.top_k->brier_min_ade;
          sums[3] += result.top_k->brier_min_fde;
          misses += result.top_k->miss ? 1 : 0;
        }
      }
      Json aggregate;
      aggregate["scenarios"] = reports.size();
      aggregate["infeasible_steps"] = feasibility.any_steps;
      aggregate["infeasible_trajectories"] = feasibility.any_trajectories;
      aggregate["steps"] = feasibility.steps;
      aggregate["trajectories"] = feasibility.trajectories;
      aggregate["sor"] = offroad.sor();
      aggregate["hor"] = offroad.hor();
      if (scored > 0) {
        const double n = static_cast<double>(scored);
        bgp::DisplacementMetrics mean{sums[0] / n, sums[1] / n, sums[2] / n, sums[3] / n, false};
        Json d = displacement_json(mean);
        d.erase("miss");
        d["miss_rate"] = static_cast<double>(misses) / n;
        aggregate["displacement"] = d;
      }
      Json doc{{"schema_version", bgp::kSchemaVersion}, {"kind", "eval_report"}, {"k", options.k},
               {"miss_threshold", options.miss_threshold}, {"reports", reports}, {"aggregate", aggregate}};
      emit_report(output, doc);
    } else if (*render) {
      const auto scenario = bgp::load_scenario_file(scenario_path);
      std::optional<bgp::BoundarySet> set;
      if (!no_boundaries) {
        set = boundaries_path.empty()
                ? bgp::generate_boundary_set(scenario.map, scenario.focal_agent, options.boundary)
                : bgp::load_boundary_set_file(boundaries_path);
      }
      std::optional<bgp::PredictionSet> preds;
      if (!predictions_path.empty()) preds = bgp::load_prediction_file(predictions_path);
      emit(output, bgp::render_svg(scenario, set ? &*set : nullptr, preds ? &*preds : nullptr));
    } else if (*bench) {
      bgp::BenchOptions bench_options;
      bench_options.pipeline = options;
      bench_options.attack_grid = attack_mode == "grid";
      bench_options.jobs = jobs;
      const auto result = bgp::run_bench(scenario_files(corpus_dir), bench_options);
      emit_report(output, bgp::bench_report(result, bench_options));
      for (const auto & s : result.scenarios) {
        if (s.error) std::cerr << s.name << ": " << *s.error << "\n";
      }
      return result.failures > 0 ? kExitPartial : kExitOk;
    } else if (*generate) {
      fs::create_directories(out_dir);
      for (int i = first; i < first + count; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "scenario_%04d.json", i);
        bgp::save_scenario_file(bgp::generate_scenario(corpus_seed, i), (fs::path(out_dir) / name).string());
      }
    }
  } catch (const Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return bgp::is_input_error(e.code()) || e.code() == ErrorCode::kParameter ? kExitInput : kExitPipeline;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitOk;
}
