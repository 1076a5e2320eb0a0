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


#include "bgp/boundary_gen.hpp"
#include "bgp/error.hpp"
#include "bgp/scene_attack.hpp"
#include "test_fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace bgp
{
namespace
{

using test::agent_at;
using test::straight_lane;

ScenarioRecord straight_scenario()
{
  ScenarioRecord s = generate_scenario(3, 0);
  s.map = LaneGraph({straight_lane("A", -50, 150, 0)});
  s.focal_agent = agent_at(0, 0, 0, 6);
  return s;
}

TEST(AttackOffset, SmoothTurnHandValue)
{
  AttackParams params;
  params.alpha_max = 0.01;
  EXPECT_NEAR(attack_offset(10.0, {AttackKind::kSmoothTurn, kPowerLevels - 1, 1}, params), 1.0, 1e-12);
  EXPECT_NEAR(attack_offset(10.0, {AttackKind::kSmoothTurn, kPowerLevels - 1, -1}, params), -1.0, 1e-12);
}

TEST(AttackOffset, ZeroPowerIsIdentity)
{
  for (const auto kind : {AttackKind::kSmoothTurn, AttackKind::kDoubleTurn, AttackKind::kRippleRoad}) {
    for (const double u : {0.0, 3.0, 25.0, 100.0}) EXPECT_EQ(attack_offset(u, {kind, 0, 1}), 0.0);
  }
}

TEST(AttackOffset, DoubleTurnReturnsToParallel)
{
  const AttackParams params;
  const AttackSpec spec{AttackKind::kDoubleTurn, kPowerLevels - 1, 1};
  const double alpha = params.alpha_max;
  EXPECT_NEAR(attack_offset(10.0, spec), alpha * 100.0, 1e-12);
  EXPECT_NEAR(attack_offset(20.0, spec), alpha * 400.0, 1e-12);
  // mirrored curvature: slope vanishes at 2 u_mid
  EXPECT_NEAR(attack_offset(40.0, spec), 2.0 * alpha * 400.0, 1e-12);
  EXPECT_NEAR(attack_offset(70.0, spec), 2.0 * alpha * 400.0, 1e-12);
  const double h = 1e-6;
  EXPECT_NEAR((attack_offset(40.0, spec) - attack_offset(40.0 - h, spec)) / h, 0.0, 1e-4);
  EXPECT_NEAR(
    (attack_offset(20.0 + h, spec) - attack_offset(20.0 - h, spec)) / (2 * h), 2.0 * alpha * 20.0, 1e-4);
}

TEST(AttackOffset, RippleAmplitude)
{
  const AttackSpec spec{AttackKind::kRippleRoad, kPowerLevels - 1, 1};
  EXPECT_NEAR(attack_offset(10.0, spec), 3.0, 1e-12);
  EXPECT_NEAR(attack_offset(30.0, spec), -3.0, 1e-12);
}

TEST(AttackOffset, MonotoneInPower)
{
  for (const auto kind : {AttackKind::kSmoothTurn, AttackKind::kDoubleTurn, AttackKind::kRippleRoad}) {
    for (const double u : {4.0, 13.0, 37.0, 80.0}) {
      double prev = 0.0;
      for (int p = 0; p < kPowerLevels; ++p) {
        const double mag = std::abs(attack_offset(u, {kind, p, 1}));
        EXPECT_GE(mag, prev - 1e-12);
        prev = mag;
      }
    }
  }
}

TEST(WarpPoint, ProtectedZoneAndContinuity)
{
  const Pose2 frame{10, 5, 0.7};
  const AttackSpec spec{AttackKind::kSmoothTurn, 10, 1};
  const Point2 ahead{10 + 2.5 * std::cos(0.7), 5 + 2.5 * std::sin(0.7)};
  const Point2 w = warp_point(ahead, frame, spec);
  EXPECT_EQ(w.x, ahead.x);
  EXPECT_EQ(w.y, ahead.y);
  const Point2 behind{0, 0};
  EXPECT_EQ(warp_point(behind, frame, spec).x, 0.0);
  for (double s = 4.9; s < 5.1; s += 0.01) {
    const Point2 p{10 + s * std::cos(0.7), 5 + s * std::sin(0.7)};
    EXPECT_LT(distance(warp_point(p, frame, spec), p), 1e-3);
  }
  // offset is lateral in the agent frame
  const Point2 far{10 + 15 * std::cos(0.7), 5 + 15 * std::sin(0.7)};
  const Point2 moved = warp_point(far, frame, spec);
  const Point2 d = moved - far;
  EXPECT_NEAR(d.x * std::cos(0.7) + d.y * std::sin(0.7), 0.0, 1e-12);
  EXPECT_NEAR(-d.x * std::sin(0.7) + d.y * std::cos(0.7), attack_offset(10.0, spec), 1e-12);
}

TEST(ApplyAttack, ZeroPowerKeepsGeometry)
{
  const auto s = straight_scenario();
  const auto out = apply_attack(s, {AttackKind::kDoubleTurn, 0, 1});
  ASSERT_EQ(out.map.size(), 1u);
  for (const auto & p : out.map.lane("A").centerline) EXPECT_NEAR(p.y, 0.0, 1e-12);
  EXPECT_FALSE(out.ground_truth_future.has_value());
}

TEST(ApplyAttack, SmoothTurnBendsAheadOnly)
{
  const auto s = straight_scenario();
  const auto out = apply_attack(s, {AttackKind::kSmoothTurn, kPowerLevels - 1, 1});
  double prev = 0.0;
  for (const auto & p : out.map.lane("A").centerline) {
    if (p.x <= 5.0) {
      EXPECT_NEAR(p.y, 0.0, 1e-12);
    } else {
      EXPECT_GE(p.y, prev);
      prev = p.y;
    }
  }
  EXPECT_GT(prev, 10.0);
  ASSERT_EQ(out.focal_history.size(), s.focal_history.size());
  for (std::size_t i = 0; i < s.focal_history.size(); ++i) {
    EXPECT_EQ(out.focal_history.states[i].pose.x, s.focal_history.states[i].pose.x);
    EXPECT_EQ(out.focal_history.states[i].pose.y, s.focal_history.states[i].pose.y);
  }
  EXPECT_EQ(out.focal_agent.pose.x, s.focal_agent.pose.x);
  EXPECT_EQ(out.map.lane("A").successors, s.map.lane("A").successors);
}

TEST(ApplyAttack, InvalidSpec)
{
  const auto s = straight_scenario();
  for (const AttackSpec spec : {AttackSpec{AttackKind::kSmoothTurn, 18, 1}, AttackSpec{AttackKind::kSmoothTurn, -1, 1},
                                AttackSpec{AttackKind::kSmoothTurn, 3, 0}}) {
    try {
      apply_attack(s, spec);
      FAIL();
    } catch (const Error & e) {
      EXPECT_EQ(e.code(), ErrorCode::kParameter);
    }
  }
}

TEST(ApplyAttack, DegenerateWarpReported)
{
  // The warp is a shear of the agent frame, so only a lane crossing it obliquely can fold once an
  // extreme short-wavelength ripple is sampled at the densify spacing.
  ScenarioRecord s = straight_scenario();
  Polyline diagonal;
  for (int i = 0; i <= 40; ++i) diagonal.push_back({-20.0 + 3.0 * i * std::cos(0.8), 3.0 * i * std::sin(0.8)});
  s.map = LaneGraph({straight_lane("A", -50, -1, 0), make_lane("B", diagonal, 3.5)});
  AttackParams params;
  params.amplitude_max = 40.0;
  params.ripple_wavelength = 6.0;
  try {
    apply_attack(s, {AttackKind::kRippleRoad, kPowerLevels - 1, 1}, params);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateWarp);
  }
}

TEST(AttackGrid, FiftyFourVariantsKindMajor)
{
  const auto grid = attack_grid();
  ASSERT_EQ(grid.size(), 54u);
  EXPECT_EQ(grid[0].kind, AttackKind::kSmoothTurn);
  EXPECT_EQ(grid[17].power_index, 17);
  EXPECT_EQ(grid[18].kind, AttackKind::kDoubleTurn);
  EXPECT_EQ(grid[53].kind, AttackKind::kRippleRoad);
  const auto s = generate_scenario(5, 2);
  int built = 0;
  for (const auto & spec : grid) {
    const auto out = apply_attack(s, spec);
    ++built;
    EXPECT_EQ(out.map.size(), s.map.size());
  }
  EXPECT_EQ(built, 54);
}

TEST(AttackGrid, BoundariesStayValidOnWarpedMaps)
{
  for (int i = 0; i < 4; ++i) {
    const auto s = generate_scenario(19, i);
    for (const auto & spec : attack_grid()) {
      if (spec.power_index % 6 != 5) continue;
      const auto warped = apply_attack(s, spec);
      for (const auto & b : generate_boundary_set(warped.map, warped.focal_agent).boundaries) {
        EXPECT_EQ(check_boundary(b), "");
      }
    }
  }
}

TEST(AttackKindNames, RoundTrip)
{
  for (const auto kind : {AttackKind::kSmoothTurn, AttackKind::kDoubleTurn, AttackKind::kRippleRoad}) {
    EXPECT_EQ(attack_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_FALSE(attack_kind_from_string("wobble").has_value());
}

}  // namespace
}  // namespace bgp
