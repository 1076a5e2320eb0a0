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

#include "bgp/fitting.hpp"

#include "bgp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace bgp
{

double average_displacement(const Trajectory & a, const Trajectory & b)
{
  if (a.size() != b.size() || a.size() < 2) {
    throw Error(ErrorCode::kDimension, "trajectories must have equal length >= 2");
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    sum += distance(a.position(i), b.position(i));
  }
  return sum / static_cast<double>(a.size() - 1);
}

double final_displacement(const Trajectory & a, const Trajectory & b)
{
  if (a.size() != b.size() || a.size() < 2) {
    throw Error(ErrorCode::kDimension, "trajectories must have equal length >= 2");
  }
  return distance(a.position(a.size() - 1), b.position(b.size() - 1));
}

ProjectedProfiles project_gt(const Trajectory & gt, const Boundary & boundary, const PursuitParams & params)
{
  if (static_cast<int>(gt.size()) != params.horizon + 1) {
    throw Error(ErrorCode::kDimension, "ground truth needs horizon + 1 states");
  }
  const Polyline ring = boundary.polygon();
  const bool overlaps = std::any_of(gt.states.begin(), gt.states.end(), [&](const AgentState & s) {
    return point_in_polygon(ring, s.pose.position());
  });
  if (!overlaps) {
    throw Error(ErrorCode::kNoOverlap, "ground truth lies entirely outside the boundary");
  }

  const std::size_t n = boundary.size();
  std::vector<std::optional<double>> crossed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 r = boundary.right[i];
    const Point2 l = boundary.left[i];
    for (std::size_t t = 0; t + 1 < gt.size(); ++t) {
      // the chord parameter measured from the right point is the left weight
      if (const auto hit = intersect_segments(r, l, gt.position(t), gt.position(t + 1))) {
        crossed[i] = hit->t_first;
        break;
      }
    }
  }

  ProjectedProfiles out;
  out.weights.weights.assign(n, 0.5);
  const auto first = std::find_if(crossed.begin(), crossed.end(), [](const auto & c) { return c.has_value(); });
  if (first == crossed.end()) {
    // nothing crossed (e.g. stationary): project the closest ground-truth point onto each chord
    for (std::size_t i = 0; i < n; ++i) {
      double best_d = std::numeric_limits<double>::infinity();
      double best_w = 0.5;
      for (const auto & s : gt.states) {
        double t = 0.0;
        const double d = point_segment_distance(s.pose.position(), boundary.right[i], boundary.left[i], &t);
        if (d < best_d) {
          best_d = d;
          best_w = t;
        }
      }
      out.weights.weights[i] = std::clamp(best_w, 0.0, 1.0);
    }
  } else {
    // chords the ground truth never reaches inherit the nearest crossed weight
    double carry = **first;
    for (std::size_t i = 0; i < n; ++i) {
      if (crossed[i]) carry = *crossed[i];
      out.weights.weights[i] = std::clamp(carry, 0.0, 1.0);
    }
  }

  out.accels.accels.resize(static_cast<std::size_t>(params.horizon));
  for (int t = 0; t < params.horizon; ++t) {
    const double raw = (gt.states[t + 1].speed - gt.states[t].speed) / params.dt;
    out.accels.accels[static_cast<std::size_t>(t)] = std::clamp(raw, -params.a_max, params.a_max);
  }
  return out;
}

namespace
{

struct Evaluation
{
  Trajectory trajectory;
  double ade{std::numeric_limits<double>::infinity()};
};

Evaluation evaluate(
  const Trajectory & gt, const Boundary & boundary, const WeightProfile & w, const AccelProfile & a,
  const PursuitParams & params)
{
  Evaluation e;
  e.trajectory = rollout(gt.states.front(), superimpose(boundary, w), a, params);
  e.ade = average_displacement(e.trajectory, gt);
  return e;
}

// Weights beyond the furthest look-ahead goal cannot influence the rollout.
std::size_t active_weight_count(
  const Boundary & boundary, const WeightProfile & w, const Trajectory & traj, const PursuitParams & params)
{
  const SuperPath path = superimpose(boundary, w);
  double travelled = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    travelled += distance(traj.position(i - 1), traj.position(i));
  }
  const double reach = travelled + params.look_ahead + 2.0 * params.look_ahead + 3.0;
  std::size_t count = 0;
  while (count < path.cum_arc.size() && path.cum_arc[count] <= reach) {
    ++count;
  }
  return std::min(path.cum_arc.size(), count + 2);
}

}  // namespace

FitResult fit(const Trajectory & gt, const Boundary & boundary, int iters, const PursuitParams & params)
{
  ProjectedProfiles start = project_gt(gt, boundary, params);
  FitResult result;
  result.weights = std::move(start.weights);
  result.accels = std::move(start.accels);
  Evaluation best = evaluate(gt, boundary, result.weights, result.accels, params);
  result.ade_history.push_back(best.ade);

  double weight_step = 0.25;
  double accel_step = 2.0;
  constexpr double kMinWeightStep = 1e-4;
  constexpr double kImprovement = 1e-12;

  const auto try_move = [&](double & slot, double step, double lo, double hi) {
    const double original = slot;
    for (const double sign : {1.0, -1.0}) {
      const double candidate = std::clamp(original + sign * step, lo, hi);
      if (candidate == original) {
        continue;
      }
      slot = candidate;
      Evaluation e = evaluate(gt, boundary, result.weights, result.accels, params);
      if (e.ade < best.ade - kImprovement) {
        best = std::move(e);
        return true;
      }
      slot = original;
    }
    return false;
  };

  for (int sweep = 0; sweep < iters && best.ade > 1e-9; ++sweep) {
    bool improved = false;
    const std::size_t active = active_weight_count(boundary, result.weights, best.trajectory, params);
    for (std::size_t i = 0; i < active; ++i) {
      improved |= try_move(result.weights.weights[i], weight_step, 0.0, 1.0);
    }
    for (auto & a : result.accels.accels) {
      improved |= try_move(a, accel_step, -params.a_max, params.a_max);
    }
    result.ade_history.push_back(best.ade);
    if (!improved) {
      weight_step *= 0.5;
      accel_step *= 0.5;
      if (weight_step < kMinWeightStep) {
        break;
      }
    }
  }

  result.trajectory = std::move(best.trajectory);
  result.ade = best.ade;
  result.fde = final_displacement(result.trajectory, gt);
  return result;
}

BestFit best_fit(const Trajectory & gt, const BoundarySet & set, int iters, const PursuitParams & params)
{
  if (set.boundaries.empty()) {
    throw Error(ErrorCode::kNoFit, "boundary set is empty");
  }
  std::optional<BestFit> best;
  for (std::size_t i = 0; i < set.boundaries.size(); ++i) {
    try {
      FitResult r = fit(gt, set.boundaries[i], iters, params);
      if (!best || r.ade < best->result.ade) {
        best = BestFit{i, std::move(r)};
      }
    } catch (const Error & e) {
      if (e.code() != ErrorCode::kNoOverlap) throw;
    }
  }
  if (!best) {
    throw Error(ErrorCode::kNoFit, "no boundary overlaps the ground truth");
  }
  return std::move(*best);
}

}  // namespace bgp
