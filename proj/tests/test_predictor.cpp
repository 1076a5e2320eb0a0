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


#include "bgp/error.hpp"
#include "bgp/metrics.hpp"
#include "bgp/predictor.hpp"
#include "bgp/scene_attack.hpp"
#include "test_fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace bgp
{
namespace
{

using test::agent_at;
using test::straight_lane;

ScenarioRecord straight_scenario(double speed)
{
  ScenarioRecord s;
  s.map = LaneGraph({straight_lane("A", 0, 250, 0)});
  s.focal_agent = agent_at(20, 0, 0, speed);
  return s;
}

double total(const PredictionSet & p)
{
  return std::accumulate(p.entries.begin(), p.entries.end(), 0.0, [](double a, const auto & e) { return a + e.likelihood; });
}

PredictionEntry entry_ending_at(double x, double likelihood)
{
  PredictionEntry e;
  e.trajectory.states = {agent_at(0, 0, 0, 1), agent_at(x, 0, 0, 1)};
  e.likelihood = likelihood;
  return e;
}

TEST(ModeTemplates, TableShape)
{
  const auto & modes = mode_templates();
  ASSERT_EQ(modes.size(), 6u);
  std::vector<double> accels;
  for (const auto & m : modes) {
    accels.push_back(m.accel);
    EXPECT_GE(std::min(m.w_begin, m.w_end), 0.0);
    EXPECT_LE(std::max(m.w_begin, m.w_end), 1.0);
  }
  EXPECT_NE(std::find(accels.begin(), accels.end(), -2.0), accels.end());
  EXPECT_NE(std::find(accels.begin(), accels.end(), 0.0), accels.end());
  EXPECT_NE(std::find(accels.begin(), accels.end(), 2.0), accels.end());
}

TEST(Predict, StraightRoadSixModesSumToOne)
{
  const auto s = straight_scenario(8.0);
  const auto set = generate_boundary_set(s.map, s.focal_agent);
  ASSERT_EQ(set.boundaries.size(), 1u);
  const auto p = predict(s, set);
  ASSERT_EQ(p.entries.size(), 6u);
  EXPECT_NEAR(total(p), 1.0, 1e-12);
  for (const auto & e : p.entries) {
    EXPECT_EQ(e.trajectory.size(), 61u);
    EXPECT_GE(e.likelihood, 0.0);
  }
}

TEST(Predict, StationaryAgentHasStationaryMode)
{
  const auto s = straight_scenario(0.0);
  const auto p = predict(s, generate_boundary_set(s.map, s.focal_agent));
  const bool any = std::any_of(p.entries.begin(), p.entries.end(), [&](const PredictionEntry & e) {
    return std::all_of(e.trajectory.states.begin(), e.trajectory.states.end(), [&](const AgentState & st) {
      return st.pose.x == s.focal_agent.pose.x && st.pose.y == s.focal_agent.pose.y;
    });
  });
  EXPECT_TRUE(any);
}

TEST(Predict, IntersectionGivesEighteenBeforeNms)
{
  const auto s = generate_scenario(1, 1);
  const auto set = generate_boundary_set(s.map, s.focal_agent);
  ASSERT_EQ(set.boundaries.size(), 3u);
  const auto p = predict(s, set);
  EXPECT_EQ(p.entries.size(), 18u);
  EXPECT_NEAR(total(p), 1.0, 1e-12);
}

TEST(Predict, EmptySetAndBadModeCount)
{
  const auto s = straight_scenario(5.0);
  try {
    predict(s, BoundarySet{});
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoPrediction);
  }
  PredictorConfig config;
  config.modes = 7;
  try {
    predict(s, generate_boundary_set(s.map, s.focal_agent), config);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kParameter);
  }
}

TEST(Predict, InvariantToBoundaryOrder)
{
  const auto s = generate_scenario(2, 1);
  auto set = generate_boundary_set(s.map, s.focal_agent);
  const auto a = predict(s, set);
  std::reverse(set.boundaries.begin(), set.boundaries.end());
  const auto b = predict(s, set);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  auto key = [](const PredictionSet & p) {
    std::vector<std::pair<double, double>> out;
    for (const auto & e : p.entries) out.emplace_back(e.trajectory.states.back().pose.x, e.likelihood);
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto ka = key(a);
  const auto kb = key(b);
  for (std::size_t i = 0; i < ka.size(); ++i) {
    EXPECT_EQ(ka[i].first, kb[i].first);
    EXPECT_NEAR(ka[i].second, kb[i].second, 1e-12);
  }
}

TEST(Predict, FeasibleAndOnRoadOnCorpus)
{
  for (int i = 0; i < 24; ++i) {
    const auto s = generate_scenario(13, i);
    const auto p = predict(s, generate_boundary_set(s.map, s.focal_agent));
    for (const auto & e : p.entries) {
      EXPECT_FALSE(feasibility_check(e.trajectory).infeasible());
      for (std::size_t k = 1; k < e.trajectory.size(); ++k) {
        EXPECT_GE(s.map.on_road(e.trajectory.position(k)).clearance, -0.5);
      }
    }
  }
}

TEST(CompensateTracking, ClampedAndCloserToTemplate)
{
  const auto s = generate_scenario(6, 1);
  const auto set = generate_boundary_set(s.map, s.focal_agent);
  const auto & b = set.boundaries[0];
  const PredictorConfig config;
  const WeightProfile target{std::vector<double>(b.size(), 0.15)};
  const AccelProfile accel{std::vector<double>(60, 0.0)};
  const auto adjusted = compensate_tracking(b, target, s.focal_agent, accel, config);
  ASSERT_EQ(adjusted.weights.size(), b.size());
  for (const double w : adjusted.weights) {
    EXPECT_GE(w, 0.0);
    EXPECT_LE(w, 1.0);
  }
  // only overshoot past the template toward its own side counts as error
  auto worst = [&](const WeightProfile & w) {
    double out = 0.0;
    for (const auto & [idx, frac] : realized_fractions(rollout(s.focal_agent, superimpose(b, w), accel), b)) {
      (void)idx;
      out = std::max(out, 0.15 - frac);
    }
    return out;
  };
  EXPECT_LE(worst(adjusted), worst(target) + 1e-12);
}

TEST(CompensateTracking, NeverLeavesTheBoundaryFurtherThanTheTemplate)
{
  // fast drift mode through a sharply bent right-turn exit; correcting entry corner cutting used
  // to push the exit overshoot 0.7 m off the road
  const auto s = apply_attack(generate_scenario(7, 78), {AttackKind::kSmoothTurn, kPowerLevels - 1, 1});
  const auto set = generate_boundary_set(s.map, s.focal_agent);
  const auto & b = set.boundaries.at(0);
  const PredictorConfig config;
  const auto & mode = mode_templates()[5];
  const WeightProfile target = template_weights(mode, s.map, b, s.focal_agent);
  const AccelProfile accel{std::vector<double>(60, mode.accel)};
  const auto adjusted = compensate_tracking(b, target, s.focal_agent, accel, config);
  auto outside = [&](const WeightProfile & w) {
    double out = 0.0;
    for (const auto & [idx, frac] : realized_fractions(rollout(s.focal_agent, superimpose(b, w), accel), b)) {
      (void)idx;
      out = std::max({out, -frac, frac - 1.0});
    }
    return out;
  };
  EXPECT_LE(outside(adjusted), outside(target) + 1e-12);
  const auto traj = rollout(s.focal_agent, superimpose(b, adjusted), accel);
  for (std::size_t t = 1; t < traj.size(); ++t) EXPECT_GE(s.map.on_road(traj.position(t)).clearance, -0.5) << t;
}

TEST(Nms, CloseEndpointsPenalized)
{
  PredictionSet p;
  p.entries = {entry_ending_at(10, 0.6), entry_ending_at(11, 0.4)};
  const auto out = nms_predictions(p, 2.0);
  // 0.6 and 0.04, renormalized
  EXPECT_NEAR(out.entries[0].likelihood, 0.6 / 0.64, 1e-12);
  EXPECT_NEAR(out.entries[1].likelihood, 0.04 / 0.64, 1e-12);
}

TEST(Nms, FarEndpointsUnchanged)
{
  PredictionSet p;
  p.entries = {entry_ending_at(10, 0.6), entry_ending_at(13, 0.4)};
  const auto out = nms_predictions(p, 2.0);
  EXPECT_NEAR(out.entries[0].likelihood, 0.6, 1e-12);
  EXPECT_NEAR(out.entries[1].likelihood, 0.4, 1e-12);
}

TEST(Nms, SingleEntryAndSuppressedDoNotSuppress)
{
  PredictionSet one;
  one.entries = {entry_ending_at(10, 1.0)};
  EXPECT_EQ(nms_predictions(one).entries[0].likelihood, 1.0);

  // b is suppressed by a, so it does not in turn suppress c
  PredictionSet p;
  p.entries = {entry_ending_at(0, 0.5), entry_ending_at(1.5, 0.3), entry_ending_at(3.0, 0.2)};
  const auto out = nms_predictions(p, 2.0);
  const double z = 0.5 + 0.03 + 0.2;
  EXPECT_NEAR(out.entries[0].likelihood, 0.5 / z, 1e-12);
  EXPECT_NEAR(out.entries[1].likelihood, 0.03 / z, 1e-12);
  EXPECT_NEAR(out.entries[2].likelihood, 0.2 / z, 1e-12);
}

TEST(ConstantVelocity, StraightLine)
{
  const auto p = constant_velocity_prediction(agent_at(1, 2, M_PI / 2, 4));
  ASSERT_EQ(p.entries.size(), 1u);
  const auto & t = p.entries[0].trajectory;
  ASSERT_EQ(t.size(), 61u);
  EXPECT_NEAR(t.states.back().pose.x, 1.0, 1e-9);
  EXPECT_NEAR(t.states.back().pose.y, 2.0 + 24.0, 1e-9);
  EXPECT_EQ(p.entries[0].likelihood, 1.0);
}

}  // namespace
}  // namespace bgp
