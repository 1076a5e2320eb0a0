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


// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 only when every line passes.

#include "bgp/boundary_gen.hpp"
#include "bgp/error.hpp"
#include "bgp/fitting.hpp"
#include "bgp/metrics.hpp"
#include "bgp/pipeline.hpp"
#include "bgp/predictor.hpp"
#include "bgp/pure_pursuit.hpp"
#include "bgp/scenario_synth.hpp"
#include "bgp/scene_attack.hpp"
#include "metric_fixtures.hpp"
#include "oracles.hpp"
#include "pursuit_checks.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace
{

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kCorpusSeed = 7;
constexpr int kCorpusSize = 500;
constexpr int kAttackScenarios = 100;

// pinned tolerances
constexpr double kMaxSor = 0.005;
constexpr double kMaxHor = 0.01;
constexpr double kMaxExcursion = 0.5;
constexpr double kMinBaselineHor = 0.5;
constexpr double kMaxCurvatureError = 0.10;
constexpr double kRoundTripAde = 0.05;
constexpr double kRoundTripShare = 0.95;
constexpr double kMetricTolerance = 1e-9;
constexpr double kFeasibilitySeconds = 120.0;
constexpr double kOnRoadSeconds = 600.0;

int failures = 0;

void report(int id, bool pass, const std::string & name, const std::string & detail)
{
  std::printf("criterion %d %s %s: %s\n", id, pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += pass ? 0 : 1;
}

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char * format, ...) __attribute__((format(printf, 1, 2)));

std::string fmt(const char * format, ...)
{
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

struct CorpusRun
{
  double seconds{0.0};
  std::size_t scenarios{0};
  std::size_t errors{0};
  bgp::FeasibilityTally feasibility;
  bgp::OffroadTally offroad;
};

// Boundary extraction, every mode on every boundary, then NMS; feasibility is checked on every
// trajectory and off-road rates on the final set.
CorpusRun run_corpus(const std::vector<bgp::ScenarioRecord> & corpus)
{
  CorpusRun run;
  const auto start = Clock::now();
  const bgp::PipelineOptions options;
  for (const auto & scenario : corpus) {
    ++run.scenarios;
    try {
      const auto preds = bgp::run_prediction(scenario, options);
      for (const auto & e : preds.entries) run.feasibility.add(bgp::feasibility_check(e.trajectory));
      run.offroad.add(bgp::offroad_rates(preds, scenario.map));
    } catch (const bgp::Error &) {
      ++run.errors;
    }
  }
  run.seconds = seconds_since(start);
  return run;
}

void criterion_feasibility(const CorpusRun & run)
{
  const auto & f = run.feasibility;
  const bool pass = f.any_steps == 0 && f.any_trajectories == 0 && f.trajectories > 0 && run.errors == 0 &&
                    run.seconds < kFeasibilitySeconds;
  report(
    1, pass, "feasibility",
    fmt(
      "%zu scenarios, %zu trajectories, %zu steps; infeasible steps %zu (accel %zu, curvature %zu), "
      "infeasible trajectories %zu; pipeline errors %zu; %.1f s (limit %.0f s)",
      run.scenarios, f.trajectories, f.steps, f.any_steps, f.accel_steps, f.curvature_steps, f.any_trajectories,
      run.errors, run.seconds, kFeasibilitySeconds));
}

void criterion_on_road(const std::vector<bgp::ScenarioRecord> & corpus, const CorpusRun & base)
{
  const auto start = Clock::now();
  const auto grid = bgp::attack_grid();
  std::vector<bgp::AttackCell> cells(grid.size());
  for (int i = 0; i < kAttackScenarios; ++i) {
    const auto eval = bgp::evaluate_attack_grid(corpus[static_cast<std::size_t>(i)], {});
    for (std::size_t c = 0; c < cells.size(); ++c) cells[c].add(eval.cells[c]);
  }
  const double seconds = base.seconds + seconds_since(start);

  bgp::AttackCell attacked;
  for (const auto & c : cells) attacked.add(c);
  bgp::OffroadTally all = base.offroad;
  all.add(attacked.offroad);

  std::size_t double_turn_max = grid.size();
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (grid[c].kind == bgp::AttackKind::kDoubleTurn && grid[c].power_index == bgp::kPowerLevels - 1) {
      double_turn_max = c;
    }
  }
  const double baseline_hor = cells.at(double_turn_max).baseline_offroad.hor();

  const bool pass = all.sor() <= kMaxSor && all.hor() <= kMaxHor && all.worst_clearance >= -kMaxExcursion &&
                    baseline_hor > kMinBaselineHor && seconds < kOnRoadSeconds;
  report(
    2, pass, "on-road",
    fmt(
      "SOR %.4f%% (limit %.1f%%), HOR %.4f%% (limit %.0f%%), worst excursion %.3f m (limit %.1f m) over %zu "
      "trajectories [base: SOR %.4f%% HOR %.4f%%; attack grid on %d scenarios: %zu variants, %zu degenerate "
      "warps, %zu pipeline failures, SOR %.4f%% HOR %.4f%%]; constant-velocity HOR on double_turn at max power "
      "%.1f%% (must exceed %.0f%%); %.1f s (limit %.0f s)",
      100.0 * all.sor(), 100.0 * kMaxSor, 100.0 * all.hor(), 100.0 * kMaxHor, -all.worst_clearance, kMaxExcursion,
      all.trajectories, 100.0 * base.offroad.sor(), 100.0 * base.offroad.hor(), kAttackScenarios,
      attacked.variants, attacked.degenerate_warps, attacked.pipeline_failures, 100.0 * attacked.offroad.sor(),
      100.0 * attacked.offroad.hor(), 100.0 * baseline_hor, 100.0 * kMinBaselineHor, seconds, kOnRoadSeconds));
}

void criterion_pursuit()
{
  const bgp::PursuitParams p;
  int hand_failures = 0;
  auto check = [&](double got, double want) { hand_failures += std::abs(got - want) <= 1e-12 ? 0 : 1; };
  check(bgp::clamp_accel(0.0), 0.0);
  check(bgp::clamp_accel(1e9), 8.0);
  check(bgp::clamp_accel(8.0 * std::atanh(0.5)), 4.0);
  check(bgp::curvature_from_lateral(0.0, p), 0.0);
  check(bgp::curvature_from_lateral(10.0, p), 0.2);
  check(bgp::curvature_from_lateral(-20.0, p), -0.3);

  std::string circles;
  bool circles_ok = true;
  for (const double r : {10.0, 20.0, 50.0}) {
    const double err = bgp::test::circle_tracking_error(r);
    circles_ok = circles_ok && err <= kMaxCurvatureError;
    circles += fmt(" R=%.0f: %.2f%%", r, 100.0 * err);
  }
  report(
    3, hand_failures == 0 && circles_ok, "pure-pursuit",
    fmt(
      "%d of 6 hand values wrong; relative curvature error after transient%s (limit %.0f%%)", hand_failures,
      circles.c_str(), 100.0 * kMaxCurvatureError));
}

void criterion_boundary_oracle()
{
  std::mt19937_64 rng(4242);
  int reach_mismatch = 0;
  int solvable = 0;
  int matched = 0;
  int unreachable_ok = 0;
  int unreachable_bad = 0;
  int skipped = 0;
  constexpr int graphs = 100;
  for (int trial = 0; trial < graphs; ++trial) {
    const bgp::LaneGraph g(bgp::oracle::random_fixture_lanes(rng));
    const bgp::LaneId start = g.lanes()[rng() % g.size()].id;
    const std::vector<bgp::LaneId> starts{start};
    const double budget = std::uniform_real_distribution<double>(20.0, 80.0)(rng);
    const auto reach = bgp::oracle::reachability(g, starts, budget);
    if (bgp::reachable_goal_lanes(g, starts, budget) != reach.goals) ++reach_mismatch;

    std::set<bgp::LaneId> allowed;
    for (const auto & [id, cost] : reach.entry) allowed.insert(id);
    for (const auto & cluster : bgp::oracle::clusters(g, reach.goals)) {
      if (cluster.leftmost.size() != 1 || cluster.rightmost.size() != 1) {
        ++skipped;
        continue;
      }
      const auto left = bgp::oracle::extreme_path(g, start, cluster.leftmost[0], true, allowed);
      const auto right = bgp::oracle::extreme_path(g, start, cluster.rightmost[0], false, allowed);
      if (left.exhausted || right.exhausted) {
        ++skipped;
        continue;
      }
      const bgp::GoalCluster gc{
        cluster.leftmost[0], cluster.rightmost[0], {cluster.members.begin(), cluster.members.end()}};
      if (!left.path || !right.path) {
        try {
          bgp::extract_boundary(g, start, gc, &allowed);
          ++unreachable_bad;
        } catch (const bgp::Error & e) {
          (e.code() == bgp::ErrorCode::kUnreachableGoal ? unreachable_ok : unreachable_bad) += 1;
        }
        continue;
      }
      ++solvable;
      try {
        const auto got = bgp::extract_boundary(g, start, gc, &allowed);
        matched += got.left == *left.path && got.right == *right.path ? 1 : 0;
      } catch (const bgp::Error &) {
      }
    }
  }
  const bool pass = reach_mismatch == 0 && solvable > 0 && matched == solvable && unreachable_bad == 0;
  report(
    4, pass, "boundary-oracle",
    fmt(
      "%d random graphs: reachable goals differ from brute force on %d; extract_boundary matches exhaustive "
      "enumeration on %d of %d solvable clusters; %d unsolvable clusters reported unreachable (%d wrong); "
      "%d clusters without a unique extreme lane or beyond the enumeration budget",
      graphs, reach_mismatch, matched, solvable, unreachable_ok, unreachable_bad, skipped));
}

void criterion_round_trip()
{
  std::mt19937_64 rng(2718);
  constexpr int draws = 200;
  int good = 0;
  int monotone = 0;
  double worst = 0.0;
  const auto start = Clock::now();
  for (int i = 0; i < draws; ++i) {
    const auto c = bgp::oracle::round_trip_case(rng, 5 * i);
    const auto r = bgp::fit(c.trajectory, c.boundary, 30);
    good += r.ade <= kRoundTripAde ? 1 : 0;
    worst = std::max(worst, r.ade);
    bool mono = true;
    for (std::size_t k = 1; k < r.ade_history.size(); ++k) mono = mono && r.ade_history[k] <= r.ade_history[k - 1];
    monotone += mono ? 1 : 0;
  }
  const double share = static_cast<double>(good) / draws;
  report(
    5, share >= kRoundTripShare && monotone == draws, "fitting-round-trip",
    fmt(
      "ADE <= %.2f m on %d of %d draws (%.1f%%, need %.0f%%), worst ADE %.3f m; non-increasing ADE history on %d "
      "of %d; %.1f s",
      kRoundTripAde, good, draws, 100.0 * share, 100.0 * kRoundTripShare, worst, monotone, draws,
      seconds_since(start)));
}

void criterion_metrics()
{
  int checked = 0;
  int wrong = 0;
  auto near = [&](double got, double want) { wrong += std::abs(got - want) <= kMetricTolerance ? 0 : 1; };
  for (const auto & f : bgp::test::metric_fixtures()) {
    const auto m = bgp::displacement_metrics(f.preds, bgp::test::metric_gt(), f.k);
    near(m.min_ade, f.min_ade);
    near(m.min_fde, f.min_fde);
    near(m.brier_min_ade, f.brier_min_ade);
    near(m.brier_min_fde, f.brier_min_fde);
    wrong += m.miss == f.miss ? 0 : 1;
    ++checked;
  }
  const auto g = bgp::test::offroad_map();
  for (const auto & f : bgp::test::offroad_fixtures()) {
    const auto r = bgp::offroad_rates(f.preds, g);
    near(r.sor, f.sor);
    near(r.hor, f.hor);
    near(r.worst_clearance, f.worst_clearance);
    ++checked;
  }
  bgp::PredictionSet at;
  at.entries = {bgp::test::lateral_entry(2.0, 1.0)};
  bgp::PredictionSet above;
  above.entries = {bgp::test::lateral_entry(2.0 + 1e-6, 1.0)};
  const bool miss_at = bgp::displacement_metrics(at, bgp::test::metric_gt(), 6, 2.0).miss;
  const bool miss_above = bgp::displacement_metrics(above, bgp::test::metric_gt(), 6, 2.0).miss;
  report(
    6, checked >= 10 && wrong == 0 && !miss_at && miss_above, "metrics",
    fmt(
      "%d fixtures, %d values off by more than %.0e; miss iff fde > 2.0: fde 2.0 -> %s, fde 2.0 + 1e-6 -> %s",
      checked, wrong, kMetricTolerance, miss_at ? "miss" : "no miss", miss_above ? "miss" : "no miss"));
}

int run_cli(const std::string & args)
{
  const std::string cmd = std::string(BGP_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_determinism(const std::vector<bgp::ScenarioRecord> & corpus)
{
  const fs::path dir = fs::temp_directory_path() / ("bgp_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir / "corpus");
  constexpr int plain = 100;
  constexpr int attacked = 4;
  for (int i = 0; i < plain; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "scenario_%04d.json", i);
    bgp::save_scenario_file(corpus[static_cast<std::size_t>(i)], (dir / "corpus" / name).string());
  }
  const std::string c = (dir / "corpus").string();
  const std::string out = dir.string();
  int status = 0;
  status |= run_cli("bench " + c + " --jobs 1 -o " + out + "/jobs1.json");
  status |= run_cli("bench " + c + " --jobs 4 -o " + out + "/jobs4.json");
  const bool plain_same =
    status == 0 && bgp::read_text_file(out + "/jobs1.json") == bgp::read_text_file(out + "/jobs4.json");

  // attack-grid reports through the library on a smaller slice
  std::vector<bgp::ScenarioRecord> slice(corpus.begin(), corpus.begin() + attacked);
  bgp::BenchOptions options;
  options.attack_grid = true;
  options.jobs = 1;
  const std::string serial = bgp::bench_report(bgp::run_bench(slice, options), options).dump();
  options.jobs = 3;
  const std::string parallel = bgp::bench_report(bgp::run_bench(slice, options), options).dump();
  const bool attack_same = serial == parallel;

  report(
    7, plain_same && attack_same, "determinism",
    fmt(
      "bench over %d scenarios with --jobs 1 vs --jobs 4: %s (exit status %d); attack-grid bench over %d scenarios "
      "with 1 vs 3 workers: %s",
      plain, plain_same ? "byte-identical" : "DIFFERENT", status, attacked,
      attack_same ? "byte-identical" : "DIFFERENT"));
}

}  // namespace

int main()
{
  const auto start = Clock::now();
  const auto corpus = bgp::generate_corpus(kCorpusSeed, kCorpusSize);
  const auto base = run_corpus(corpus);
  criterion_feasibility(base);
  criterion_on_road(corpus, base);
  criterion_pursuit();
  criterion_boundary_oracle();
  criterion_round_trip();
  criterion_metrics();
  criterion_determinism(corpus);
  std::printf("%d of 7 criteria failed; total %.1f s\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
