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

#include "bgp/predictor.hpp"

#include "bgp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bgp
{

const std::vector<ModeTemplate> & mode_templates()
{
  static const std::vector<ModeTemplate> kTemplates{
    {"own_lane", WeightTemplate::kCenterline, 0.0, 0.0, 0.0},
    {"center_braking", WeightTemplate::kConstant, 0.5, 0.5, -2.0},
    {"left_side", WeightTemplate::kConstant, 0.85, 0.85, 0.0},
    {"right_side", WeightTemplate::kConstant, 0.15, 0.15, 0.0},
    {"drift_left", WeightTemplate::kRamp, 0.15, 0.85, 2.0},
    {"drift_right", WeightTemplate::kRamp, 0.85, 0.15, 2.0},
  };
  return kTemplates;
}

WeightProfile centerline_tracking_weights(
  const LaneGraph & graph, const Boundary & boundary, const AgentState & agent)
{
  std::vector<LaneId> lanes = boundary.left_path;
  lanes.insert(lanes.end(), boundary.right_path.begin(), boundary.right_path.end());
  std::sort(lanes.begin(), lanes.end());
  lanes.erase(std::unique(lanes.begin(), lanes.end()), lanes.end());

  const std::size_t n = boundary.size();
  WeightProfile out;
  out.weights.resize(n);

  // start from the agent's own lateral position on the first chord
  double t0 = 0.5;
  point_segment_distance(agent.pose.position(), boundary.right[0], boundary.left[0], &t0);
  double previous = t0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 r = boundary.right[i];
    const Point2 l = boundary.left[i];
    double chosen = previous;
    double best_jump = std::numeric_limits<double>::infinity();
    for (const auto & id : lanes) {
      const auto & center = graph.lane(id).centerline;
      for (std::size_t k = 0; k + 1 < center.size(); ++k) {
        if (const auto hit = intersect_segments(r, l, center[k], center[k + 1])) {
          const double jump = std::abs(hit->t_first - previous);
          if (jump < best_jump) {
            best_jump = jump;
            chosen = hit->t_first;
          }
        }
      }
    }
    out.weights[i] = std::clamp(chosen, 0.0, 1.0);
    previous = out.weights[i];
  }
  return out;
}

WeightProfile template_weights(
  const ModeTemplate & mode, const LaneGraph & graph, const Boundary & boundary, const AgentState & agent)
{
  const std::size_t n = boundary.size();
  WeightProfile out;
  switch (mode.shape) {
    case WeightTemplate::kConstant:
      out.weights.assign(n, mode.w_begin);
      break;
    case WeightTemplate::kRamp:
      out.weights.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double f = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        out.weights[i] = mode.w_begin + f * (mode.w_end - mode.w_begin);
      }
      break;
    case WeightTemplate::kCenterline:
      out = centerline_tracking_weights(graph, boundary, agent);
      break;
  }
  return out;
}

namespace
{

struct WindowedProjection
{
  double at{0.0};
  // positive on the left of the polyline
  double signed_distance{0.0};
};

// Nearest point among the segments starting at `from` and at most `window` segments later.
WindowedProjection project_windowed(const Polyline & line, Point2 p, std::size_t from, std::size_t window)
{
  WindowedProjection out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = from; i + 1 < line.size() && i <= from + window; ++i) {
    double t = 0.0;
    const double d = point_segment_distance(p, line[i], line[i + 1], &t);
    if (d < best) {
      best = d;
      out.at = static_cast<double>(i) + t;
      out.signed_distance = cross(line[i + 1] - line[i], p - line[i]) >= 0.0 ? d : -d;
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<double, double>> realized_fractions(const Trajectory & traj, const Boundary & boundary)
{
  std::vector<std::pair<double, double>> out;
  const std::size_t n = boundary.size();
  if (n < 2) {
    return out;
  }
  // monotone search so a boundary that folds back on itself is not matched out of order
  constexpr std::size_t kWindow = 30;
  std::size_t from_left = 0;
  std::size_t from_right = 0;
  const double last = static_cast<double>(n - 1);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const Point2 p = traj.position(k);
    const WindowedProjection l = project_windowed(boundary.left, p, from_left, kWindow);
    const WindowedProjection r = project_windowed(boundary.right, p, from_right, kWindow);
    from_left = static_cast<std::size_t>(l.at);
    from_right = static_cast<std::size_t>(r.at);
    if (l.at >= last || r.at >= last) {
      continue;
    }
    const double to_right = r.signed_distance;
    const double to_left = -l.signed_distance;
    const double width = to_right + to_left;
    if (width <= 1e-6) {
      continue;
    }
    out.emplace_back(0.5 * (l.at + r.at), to_right / width);
  }
  return out;
}

WeightProfile compensate_tracking(
  const Boundary & boundary, const WeightProfile & target, const AgentState & agent,
  const AccelProfile & accel, const PredictorConfig & config)
{
  const std::size_t n = boundary.size();
  WeightProfile w = target;
  WeightProfile best = target;
  double best_error = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter <= config.tracking_iterations; ++iter) {
    const Trajectory traj = rollout(agent, superimpose(boundary, w), accel, config.pursuit);
    const auto samples = realized_fractions(traj, boundary);
    if (samples.empty()) {
      break;
    }
    std::vector<double> sum(n, 0.0);
    std::vector<int> count(n, 0);
    double worst = 0.0;
    double outside = 0.0;
    for (const auto & [at, u] : samples) {
      const auto i = std::min(n - 1, static_cast<std::size_t>(std::lround(at)));
      // only overshoot toward the edge the template leans to is corrected; the approach from the
      // agent's current lateral position is left alone
      const double lean = target.weights[i] - 0.5;
      double err = target.weights[i] - u;
      if (lean * err > 0.0) {
        err = 0.0;
      }
      worst = std::max(worst, std::abs(err));
      // a rollout that leaves the boundary scores by how far it gets out
      outside = std::max({outside, -u, u - 1.0});
      const std::size_t j = std::min(n - 1, i + static_cast<std::size_t>(config.tracking_lead));
      sum[j] += err;
      ++count[j];
    }
    if (std::max(worst, outside) < best_error) {
      best_error = std::max(worst, outside);
      best = w;
    }
    if (iter == config.tracking_iterations || worst < 0.01) {
      break;
    }
    // spread the per-index corrections: interpolate between measured indices, hold at the ends
    std::vector<std::size_t> measured;
    for (std::size_t i = 0; i < n; ++i) {
      if (count[i] > 0) {
        sum[i] /= count[i];
        measured.push_back(i);
      }
    }
    std::vector<double> corr(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto hi = std::lower_bound(measured.begin(), measured.end(), i);
      if (hi == measured.end()) {
        corr[i] = sum[measured.back()];
      } else if (*hi == i || hi == measured.begin()) {
        corr[i] = sum[*hi];
      } else {
        const std::size_t a = *(hi - 1);
        const std::size_t b = *hi;
        const double f = static_cast<double>(i - a) / static_cast<double>(b - a);
        corr[i] = sum[a] + f * (sum[b] - sum[a]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      w.weights[i] = std::clamp(w.weights[i] + config.tracking_gain * corr[i], 0.0, 1.0);
    }
  }
  return best;
}

namespace
{

// Higher is more plausible: little steering effort and little change in speed.
double heuristic_score(const Trajectory & traj)
{
  double heading_change = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    heading_change += std::abs(normalize_angle(traj.states[i].pose.heading - traj.states[i - 1].pose.heading));
  }
  const double speed_change = std::abs(traj.states.back().speed - traj.states.front().speed);
  return -heading_change - 0.5 * speed_change;
}

void normalize(PredictionSet & preds)
{
  double total = 0.0;
  for (const auto & e : preds.entries) total += e.likelihood;
  if (total <= 0.0) {
    for (auto & e : preds.entries) e.likelihood = 1.0 / static_cast<double>(preds.entries.size());
    return;
  }
  for (auto & e : preds.entries) e.likelihood /= total;
}

}  // namespace

PredictionSet predict(const ScenarioRecord & scenario, const BoundarySet & set, const PredictorConfig & config)
{
  if (set.boundaries.empty()) {
    throw Error(ErrorCode::kNoPrediction, "boundary set is empty");
  }
  if (config.modes < 1 || config.modes > kMaxModes) {
    throw Error(ErrorCode::kParameter, "modes must be within [1, 6]");
  }
  const auto & templates = mode_templates();
  PredictionSet preds;
  std::vector<double> scores;
  for (std::size_t b = 0; b < set.boundaries.size(); ++b) {
    const Boundary & boundary = set.boundaries[b];
    for (int m = 0; m < config.modes; ++m) {
      const ModeTemplate & mode = templates[static_cast<std::size_t>(m)];
      const WeightProfile target = template_weights(mode, scenario.map, boundary, scenario.focal_agent);
      const double a = std::clamp(mode.accel, -config.pursuit.a_max, config.pursuit.a_max);
      const AccelProfile accel{std::vector<double>(static_cast<std::size_t>(config.pursuit.horizon), a)};
      const WeightProfile w = compensate_tracking(boundary, target, scenario.focal_agent, accel, config);
      PredictionEntry entry;
      entry.trajectory = rollout(scenario.focal_agent, superimpose(boundary, w), accel, config.pursuit);
      entry.boundary = static_cast<int>(b);
      entry.mode = m;
      scores.push_back(heuristic_score(entry.trajectory));
      preds.entries.push_back(std::move(entry));
    }
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    preds.entries[i].likelihood = std::exp(scores[i] - top);
  }
  normalize(preds);
  return preds;
}

PredictionSet nms_predictions(PredictionSet preds, double epsilon, double penalty)
{
  const std::size_t n = preds.entries.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return preds.entries[a].likelihood > preds.entries[b].likelihood;
  });
  std::vector<bool> suppressed(n, false);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = order[r];
    if (suppressed[i]) {
      continue;
    }
    const auto & ti = preds.entries[i].trajectory;
    const Point2 end_i = ti.position(ti.size() - 1);
    for (std::size_t q = r + 1; q < n; ++q) {
      const std::size_t j = order[q];
      if (suppressed[j]) {
        continue;
      }
      const auto & tj = preds.entries[j].trajectory;
      if (distance(end_i, tj.position(tj.size() - 1)) <= epsilon) {
        preds.entries[j].likelihood *= penalty;
        suppressed[j] = true;
      }
    }
  }
  normalize(preds);
  return preds;
}

PredictionSet constant_velocity_prediction(const AgentState & agent, const PursuitParams & params)
{
  PredictionEntry entry;
  entry.likelihood = 1.0;
  entry.trajectory.dt = params.dt;
  AgentState s = agent;
  entry.trajectory.states.push_back(s);
  for (int t = 0; t < params.horizon; ++t) {
    s.pose.x += s.speed * std::cos(s.pose.heading) * params.dt;
    s.pose.y += s.speed * std::sin(s.pose.heading) * params.dt;
    entry.trajectory.states.push_back(s);
  }
  PredictionSet preds;
  preds.entries.push_back(std::move(entry));
  return preds;
}

}  // namespace bgp
