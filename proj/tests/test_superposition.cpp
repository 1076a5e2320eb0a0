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
#include "bgp/superposition.hpp"
#include "test_fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

namespace bgp
{
namespace
{

Boundary wavy_boundary()
{
  Boundary b;
  for (int i = 0; i <= 40; ++i) {
    const double x = i;
    b.left.push_back({x, 3.0 + std::sin(0.1 * x)});
    b.right.push_back({x, -0.5 * std::cos(0.07 * x)});
  }
  return b;
}

TEST(Superimpose, EndpointWeightsGiveTheEdges)
{
  const auto b = wavy_boundary();
  EXPECT_EQ(superimpose(b, {std::vector<double>(b.size(), 1.0)}).points, b.left);
  EXPECT_EQ(superimpose(b, {std::vector<double>(b.size(), 0.0)}).points, b.right);
}

TEST(Superimpose, Midpoint)
{
  Boundary b;
  b.left = {{0, 2}, {1, 2}};
  b.right = {{0, 0}, {1, 0}};
  const auto path = superimpose(b, {{0.5, 0.5}});
  EXPECT_DOUBLE_EQ(path.points[0].x, 0.0);
  EXPECT_DOUBLE_EQ(path.points[0].y, 1.0);
  EXPECT_DOUBLE_EQ(path.length(), 1.0);
}

TEST(Superimpose, Errors)
{
  const auto b = wavy_boundary();
  try {
    superimpose(b, {{0.5, 0.5}});
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimension);
  }
  std::vector<double> w(b.size(), 0.5);
  w[3] = 1.2;
  try {
    superimpose(b, {w});
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kParameter);
  }
}

TEST(Superimpose, PointsLieOnChordsAndMoveLocally)
{
  const auto b = wavy_boundary();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> w(b.size());
    for (auto & x : w) x = u(rng);
    const auto path = superimpose(b, {w});
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_LT(point_segment_distance(path.points[i], b.right[i], b.left[i]), 1e-12);
    }
    const std::size_t k = rng() % b.size();
    const double eps = 0.01;
    auto w2 = w;
    w2[k] = std::clamp(w[k] + eps, 0.0, 1.0);
    const auto moved = superimpose(b, {w2});
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double d = distance(moved.points[i], path.points[i]);
      if (i == k) {
        EXPECT_LE(d, eps * distance(b.left[i], b.right[i]) + 1e-12);
      } else {
        EXPECT_EQ(d, 0.0);
      }
    }
  }
}

TEST(PointAtArclength, ClampsAndInterpolates)
{
  const auto path = make_super_path(test::line({0, 0}, {10, 0}, 4));
  EXPECT_EQ(point_at_arclength(path, 0.0).x, 0.0);
  EXPECT_NEAR(point_at_arclength(path, 2.5).x, 2.5, 1e-12);
  EXPECT_EQ(point_at_arclength(path, 1e6).x, 10.0);
  EXPECT_EQ(point_at_arclength(path, -3.0).x, 0.0);
}

TEST(PointAtArclength, MonotoneAlongPath)
{
  const auto b = wavy_boundary();
  const auto path = superimpose(b, {std::vector<double>(b.size(), 0.3)});
  double prev = -1.0;
  for (double s = 0.0; s <= path.length(); s += 0.37) {
    const auto proj = project_onto_polyline(path.points, point_at_arclength(path, s));
    EXPECT_NEAR(proj.arc_length, s, 1e-9);
    EXPECT_GT(proj.arc_length, prev);
    prev = proj.arc_length;
  }
}

}  // namespace
}  // namespace bgp
