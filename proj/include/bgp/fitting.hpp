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

#ifndef BGP__FITTING_HPP_
#define BGP__FITTING_HPP_

#include "bgp/boundary_gen.hpp"
#include "bgp/pure_pursuit.hpp"
#include "bgp/superposition.hpp"

#include <utility>
#include <vector>

namespace bgp
{

/// Mean distance over states[1..]; both trajectories must have the same length.
double average_displacement(const Trajectory & a, const Trajectory & b);
double final_displacement(const Trajectory & a, const Trajectory & b);

struct ProjectedProfiles
{
  WeightProfile weights;
  AccelProfile accels;
};

/// Initial guess in the constrained space: weights from where the ground truth crosses each
/// boundary chord, accelerations from finite speed differences. `gt` holds T + 1 states.
/// Throws Error(kNoOverlap) when no ground-truth point lies inside the boundary.
ProjectedProfiles project_gt(
  const Trajectory & gt, const Boundary & boundary, const PursuitParams & params = {});

struct FitResult
{
  WeightProfile weights;
  AccelProfile accels;
  Trajectory trajectory;
  double ade{0.0};
  double fde{0.0};
  // ADE after projection, then after every sweep
  std::vector<double> ade_history;
};

/// Coordinate descent on weights and accelerations minimizing ADE against `gt`.
FitResult fit(
  const Trajectory & gt, const Boundary & boundary, int iters, const PursuitParams & params = {});

struct BestFit
{
  std::size_t boundary_index{0};
  FitResult result;
};

/// Lowest-ADE fit over the set; boundaries without overlap are skipped.
/// Throws Error(kNoFit) when every boundary fails.
BestFit best_fit(
  const Trajectory & gt, const BoundarySet & set, int iters, const PursuitParams & params = {});

}  // namespace bgp

#endif  // BGP__FITTING_HPP_
