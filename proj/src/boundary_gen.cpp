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

#include <Eigen/Sparse>
#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

namespace bgp
{

namespace bg = boost::geometry;

Polyline Boundary::polygon() const
{
  Polyline ring = left;
  ring.insert(ring.end(), right.rbegin(), right.rend());
  return ring;
}

double Boundary::area() const { return std::abs(signed_area(polygon())); }

// ---------------------------------------------------------------------------
// reachability and clustering

namespace
{

std::optional<LaneId> same_direction_neighbor(
  const LaneGraph & graph, const LaneSegment & lane, Side side)
{
  const auto & nb = side == Side::kLeft ? lane.left_neighbor : lane.right_neighbor;
  if (nb && graph.same_direction(lane.id, *nb)) {
    return nb;
  }
  return std::nullopt;
}

}  // namespace

Reachability analyze_reachability(
  const LaneGraph & graph, std::span<const LaneId> start_lanes, double max_arc_length)
{
  if (start_lanes.empty()) {
    throw Error(ErrorCode::kParameter, "reachability needs at least one start lane");
  }
  using Item = std::pair<double, LaneId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  Reachability result;
  const auto relax = [&](const LaneId & id, double cost) {
    const auto it = result.entry.find(id);
    if (it == result.entry.end() || cost < it->second) {
      result.entry[id] = cost;
      open.emplace(cost, id);
    }
  };
  for (const auto & s : start_lanes) {
    graph.index_of(s);
    relax(s, 0.0);
  }
  while (!open.empty()) {
    const auto [cost, id] = open.top();
    open.pop();
    if (cost > result.entry.at(id)) {
      continue;
    }
    const auto & lane = graph.lane(id);
    const double exit = cost + graph.centerline_length(id);
    if (exit < max_arc_length) {
      for (const auto & succ : lane.successors) {
        relax(succ, exit);
      }
    }
    for (const Side side : {Side::kLeft, Side::kRight}) {
      if (const auto nb = same_direction_neighbor(graph, lane, side)) {
        relax(*nb, cost);
      }
    }
  }
  for (const auto & [id, cost] : result.entry) {
    const auto & lane = graph.lane(id);
    if (lane.successors.empty() || cost + graph.centerline_length(id) >= max_arc_length) {
      result.goals.insert(id);
    }
  }
  return result;
}

std::set<LaneId> reachable_goal_lanes(
  const LaneGraph & graph, std::span<const LaneId> start_lanes, double max_arc_length)
{
  return analyze_reachability(graph, start_lanes, max_arc_length).goals;
}

namespace
{

// Neighbor relation restricted to `members`, symmetrized so that a relation stated by either side
// counts.
bool has_member_on_side(
  const LaneGraph & graph, const LaneId & id, Side side, const std::set<LaneId> & members)
{
  const auto & lane = graph.lane(id);
  if (const auto nb = same_direction_neighbor(graph, lane, side); nb && members.count(*nb)) {
    return true;
  }
  const Side opposite = side == Side::kLeft ? Side::kRight : Side::kLeft;
  for (const auto & other : members) {
    if (const auto nb = same_direction_neighbor(graph, graph.lane(other), opposite);
        nb && *nb == id) {
      return true;
    }
  }
  return false;
}

std::vector<std::set<LaneId>> goal_components(const LaneGraph & graph, const std::set<LaneId> & goals)
{
  std::map<LaneId, std::vector<LaneId>> adjacency;
  for (const auto & id : goals) {
    adjacency[id];
    const auto & lane = graph.lane(id);
    for (const Side side : {Side::kLeft, Side::kRight}) {
      if (const auto nb = same_direction_neighbor(graph, lane, side); nb && goals.count(*nb)) {
        adjacency[id].push_back(*nb);
        adjacency[*nb].push_back(id);
      }
    }
  }
  std::vector<std::set<LaneId>> components;
  std::set<LaneId> visited;
  for (const auto & id : goals) {
    if (visited.count(id)) {
      continue;
    }
    std::set<LaneId> component;
    std::deque<LaneId> queue{id};
    visited.insert(id);
    while (!queue.empty()) {
      const LaneId cur = queue.front();
      queue.pop_front();
      component.insert(cur);
      for (const auto & nb : adjacency[cur]) {
        if (visited.insert(nb).second) {
          queue.push_back(nb);
        }
      }
    }
    components.push_back(std::move(component));
  }
  return components;
}

GoalCluster resolve_extremes(const LaneGraph & graph, const std::set<LaneId> & component)
{
  GoalCluster cluster;
  cluster.members.assign(component.begin(), component.end());
  std::vector<LaneId> leftmost;
  std::vector<LaneId> rightmost;
  for (const auto & id : component) {
    if (!has_member_on_side(graph, id, Side::kLeft, component)) leftmost.push_back(id);
    if (!has_member_on_side(graph, id, Side::kRight, component)) rightmost.push_back(id);
  }
  if (leftmost.size() != 1 || rightmost.size() != 1) {
    throw Error(
      ErrorCode::kDegenerateCluster,
      "goal cluster containing " + cluster.members.front() + " has no unique leftmost/rightmost lane");
  }
  cluster.leftmost = leftmost.front();
  cluster.rightmost = rightmost.front();
  return cluster;
}

}  // namespace

std::vector<GoalCluster> cluster_goals(const LaneGraph & graph, const std::set<LaneId> & goals)
{
  std::vector<GoalCluster> clusters;
  for (const auto & component : goal_components(graph, goals)) {
    clusters.push_back(resolve_extremes(graph, component));
  }
  std::sort(clusters.begin(), clusters.end(), [](const GoalCluster & a, const GoalCluster & b) {
    return std::tie(a.leftmost, a.rightmost) < std::tie(b.leftmost, b.rightmost);
  });
  return clusters;
}

// ---------------------------------------------------------------------------
// boundary search

std::vector<LaneId> expansion_order(const LaneGraph & graph, const LaneId & id, Side side)
{
  const auto & lane = graph.lane(id);
  std::vector<LaneId> order;
  if (const auto nb = same_direction_neighbor(graph, lane, side)) {
    order.push_back(*nb);
  }
  std::vector<LaneId> successors = lane.successors;
  std::sort(successors.begin(), successors.end());
  successors.erase(std::unique(successors.begin(), successors.end()), successors.end());
  order.insert(order.end(), successors.begin(), successors.end());
  const Side opposite = side == Side::kLeft ? Side::kRight : Side::kLeft;
  if (const auto nb = same_direction_neighbor(graph, lane, opposite)) {
    order.push_back(*nb);
  }
  return order;
}

namespace
{

std::vector<LaneId> side_search(
  const LaneGraph & graph, const LaneId & start, const LaneId & target, Side side,
  const std::set<LaneId> * allowed)
{
  const auto permitted = [&](const LaneId & id) { return allowed == nullptr || allowed->count(id) > 0; };
  if (!permitted(start) || !permitted(target)) {
    throw Error(ErrorCode::kUnreachableGoal, "lane " + target + " is outside the searchable set");
  }

  // lanes that can reach the target at all; anything else is pruned from the search
  std::map<LaneId, std::vector<LaneId>> reverse;
  std::vector<LaneId> universe;
  if (allowed != nullptr) {
    universe.assign(allowed->begin(), allowed->end());
  } else {
    for (const auto & lane : graph.lanes()) universe.push_back(lane.id);
  }
  for (const auto & id : universe) {
    for (const auto & next : expansion_order(graph, id, side)) {
      if (permitted(next)) reverse[next].push_back(id);
    }
  }
  std::set<LaneId> reaches_target{target};
  std::deque<LaneId> queue{target};
  while (!queue.empty()) {
    const LaneId cur = queue.front();
    queue.pop_front();
    for (const auto & prev : reverse[cur]) {
      if (reaches_target.insert(prev).second) queue.push_back(prev);
    }
  }
  if (!reaches_target.count(start)) {
    throw Error(ErrorCode::kUnreachableGoal, "no path from " + start + " to " + target);
  }

  constexpr std::size_t kMaxExpansions = 1000000;
  std::size_t expansions = 0;
  std::vector<LaneId> path{start};
  std::set<LaneId> on_path{start};
  std::function<bool(const LaneId &)> dfs = [&](const LaneId & cur) -> bool {
    if (cur == target) {
      return true;
    }
    if (++expansions > kMaxExpansions) {
      throw Error(ErrorCode::kUnreachableGoal, "search budget exhausted towards " + target);
    }
    for (const auto & next : expansion_order(graph, cur, side)) {
      if (!permitted(next) || on_path.count(next) || !reaches_target.count(next)) {
        continue;
      }
      path.push_back(next);
      on_path.insert(next);
      if (dfs(next)) {
        return true;
      }
      on_path.erase(next);
      path.pop_back();
    }
    return false;
  };
  if (!dfs(start)) {
    throw Error(ErrorCode::kUnreachableGoal, "no simple path from " + start + " to " + target);
  }
  return path;
}

}  // namespace

LanePaths extract_boundary(
  const LaneGraph & graph, const LaneId & start, const GoalCluster & cluster,
  const std::set<LaneId> * allowed)
{
  LanePaths paths;
  paths.left = side_search(graph, start, cluster.leftmost, Side::kLeft, allowed);
  paths.right = side_search(graph, start, cluster.rightmost, Side::kRight, allowed);
  return paths;
}

Polyline path_edge_geometry(const LaneGraph & graph, std::span<const LaneId> path, Side side)
{
  Polyline out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto & lane = graph.lane(path[i]);
    if (i + 1 < path.size()) {
      const auto & succ = lane.successors;
      const bool longitudinal = std::find(succ.begin(), succ.end(), path[i + 1]) != succ.end();
      if (!longitudinal) {
        continue;
      }
    }
    const auto & edge = side == Side::kLeft ? lane.left_edge : lane.right_edge;
    out.insert(out.end(), edge.begin(), edge.end());
  }
  return dedupe(out, 1e-6);
}

// ---------------------------------------------------------------------------
// sampling and smoothing

namespace
{

// Natural cubic smoothing spline in value/second-derivative form.
struct SmoothingSpline
{
  std::vector<double> knots;
  std::vector<double> gx, gy;
  std::vector<double> cx, cy;  // second derivatives, zero at both ends

  static double eval(
    const std::vector<double> & t, const std::vector<double> & g, const std::vector<double> & c,
    std::size_t i, double u)
  {
    const double h = t[i + 1] - t[i];
    const double a = u - t[i];
    const double b = t[i + 1] - u;
    return (a * g[i + 1] + b * g[i]) / h -
           a * b / 6.0 * ((1.0 + a / h) * c[i + 1] + (1.0 + b / h) * c[i]);
  }

  Point2 at(std::size_t i, double u) const
  {
    return {eval(knots, gx, cx, i, u), eval(knots, gy, cy, i, u)};
  }
};

SmoothingSpline fit_smoothing_spline(const Polyline & pts, const std::vector<double> & t, double lambda)
{
  const std::size_t n = pts.size();
  SmoothingSpline s;
  s.knots = t;
  s.gx.resize(n);
  s.gy.resize(n);
  s.cx.assign(n, 0.0);
  s.cy.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s.gx[i] = pts[i].x;
    s.gy[i] = pts[i].y;
  }
  if (n < 3) {
    return s;
  }
  const std::size_t m = n - 2;
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = t[i + 1] - t[i];

  // Q is n x m with column j touching rows j, j+1, j+2; R is m x m tridiagonal.
  Eigen::SparseMatrix<double> Q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  Eigen::SparseMatrix<double> R(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  std::vector<Eigen::Triplet<double>> qt;
  std::vector<Eigen::Triplet<double>> rt;
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    qt.emplace_back(static_cast<Eigen::Index>(j), col, 1.0 / h[j]);
    qt.emplace_back(static_cast<Eigen::Index>(j + 1), col, -1.0 / h[j] - 1.0 / h[j + 1]);
    qt.emplace_back(static_cast<Eigen::Index>(j + 2), col, 1.0 / h[j + 1]);
    rt.emplace_back(col, col, (h[j] + h[j + 1]) / 3.0);
    if (j + 1 < m) {
      rt.emplace_back(col, col + 1, h[j + 1] / 6.0);
      rt.emplace_back(col + 1, col, h[j + 1] / 6.0);
    }
  }
  Q.setFromTriplets(qt.begin(), qt.end());
  R.setFromTriplets(rt.begin(), rt.end());
  const Eigen::SparseMatrix<double> Qt = Q.transpose();
  Eigen::SparseMatrix<double> A = R + lambda * (Qt * Q);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success) {
    return s;
  }
  for (int axis = 0; axis < 2; ++axis) {
    auto & g = axis == 0 ? s.gx : s.gy;
    auto & c = axis == 0 ? s.cx : s.cy;
    const Eigen::Map<const Eigen::VectorXd> y(g.data(), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd y_copy = y;
    const Eigen::VectorXd gamma = solver.solve(Qt * y_copy);
    const Eigen::VectorXd fitted = y_copy - lambda * (Q * gamma);
    for (std::size_t i = 0; i < n; ++i) g[i] = fitted(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < m; ++j) c[j + 1] = gamma(static_cast<Eigen::Index>(j));
  }
  return s;
}

}  // namespace

Polyline sample_and_smooth(const Polyline & raw, const SmoothingParams & params)
{
  const Polyline clean = dedupe(raw);
  if (clean.size() < 2 || polyline_length(clean) < 2.0) {
    throw Error(ErrorCode::kTooShort, "boundary polyline shorter than 2 m");
  }
  const Polyline knots_pts = densify(clean, 1.0);
  const std::vector<double> t = cumulative_arc_length(knots_pts);

  // Back off the smoothing until the knots stay within the deviation cap. The margin absorbs the
  // difference between knot residuals and the distance to the raw polyline between knots.
  const double knot_cap = 0.8 * params.tolerance;
  double lambda = params.lambda;
  SmoothingSpline spline = fit_smoothing_spline(knots_pts, t, lambda);
  for (int attempt = 0; attempt < 40; ++attempt) {
    double worst = 0.0;
    for (std::size_t i = 0; i < knots_pts.size(); ++i) {
      worst = std::max(worst, distance(knots_pts[i], {spline.gx[i], spline.gy[i]}));
    }
    if (worst <= knot_cap) {
      break;
    }
    lambda = attempt < 38 ? lambda * 0.25 : 0.0;
    spline = fit_smoothing_spline(knots_pts, t, lambda);
  }

  // dense evaluation, then exact 1 m arc-length resampling of the dense curve
  constexpr double kDenseStep = 0.05;
  Polyline dense;
  dense.push_back({spline.gx.front(), spline.gy.front()});
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double h = t[i + 1] - t[i];
    const int pieces = std::max(1, static_cast<int>(std::ceil(h / kDenseStep)));
    for (int k = 1; k <= pieces; ++k) {
      dense.push_back(spline.at(i, t[i] + h * static_cast<double>(k) / pieces));
    }
  }
  dense = dedupe(dense);
  const auto cum = cumulative_arc_length(dense);
  const double limit = std::min(cum.back(), static_cast<double>(params.max_points - 1));
  const auto whole = static_cast<int>(std::floor(limit + 1e-6));
  Polyline out;
  for (int k = 0; k <= whole; ++k) {
    out.push_back(point_at_arc(dense, cum, std::min(static_cast<double>(k), limit)));
  }
  constexpr double kMinTail = 0.2;
  if (limit - whole >= kMinTail && static_cast<int>(out.size()) < params.max_points) {
    out.push_back(point_at_arc(dense, cum, limit));
  }
  return out;
}

std::pair<Polyline, Polyline> align_pair(const Polyline & left, const Polyline & right)
{
  if (left.size() < 2 || right.size() < 2) {
    throw Error(ErrorCode::kAlignment, "both polylines need at least 2 points");
  }
  const std::size_t n = std::min(left.size(), right.size());
  const auto resample = [n](const Polyline & line) {
    if (line.size() == n) {
      return line;
    }
    const auto cum = cumulative_arc_length(line);
    Polyline out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
      out.push_back(point_at_arc(line, cum, frac * cum.back()));
    }
    return out;
  };
  return {resample(left), resample(right)};
}

// ---------------------------------------------------------------------------
// selection

namespace
{

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint>;
using BgMulti = bg::model::multi_polygon<BgPolygon>;

BgPolygon to_bg(const Polyline & ring)
{
  BgPolygon poly;
  for (const auto & p : ring) {
    bg::append(poly.outer(), BgPoint(p.x, p.y));
  }
  bg::correct(poly);
  return poly;
}

// Fallback for inputs the clipper rejects: point sampling on a regular lattice.
double lattice_iou(const Polyline & a, const Polyline & b)
{
  const auto ba = bounding_box(a);
  const auto bb = bounding_box(b);
  const double min_x = std::min(ba.min_x, bb.min_x);
  const double min_y = std::min(ba.min_y, bb.min_y);
  const double max_x = std::max(ba.max_x, bb.max_x);
  const double max_y = std::max(ba.max_y, bb.max_y);
  constexpr double kStep = 0.25;
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (double x = min_x + 0.5 * kStep; x < max_x; x += kStep) {
    for (double y = min_y + 0.5 * kStep; y < max_y; y += kStep) {
      const bool ia = point_in_polygon(a, {x, y});
      const bool ib = point_in_polygon(b, {x, y});
      inter += (ia && ib) ? 1 : 0;
      uni += (ia || ib) ? 1 : 0;
    }
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

double boundary_iou(const Boundary & a, const Boundary & b)
{
  const Polyline ra = a.polygon();
  const Polyline rb = b.polygon();
  const auto box_a = bounding_box(ra);
  const auto box_b = bounding_box(rb);
  if (box_a.max_x < box_b.min_x || box_b.max_x < box_a.min_x || box_a.max_y < box_b.min_y ||
      box_b.max_y < box_a.min_y) {
    return 0.0;
  }
  try {
    const BgPolygon pa = to_bg(ra);
    const BgPolygon pb = to_bg(rb);
    if (!bg::is_valid(pa) || !bg::is_valid(pb)) {
      return lattice_iou(ra, rb);
    }
    BgMulti inter;
    bg::intersection(pa, pb, inter);
    const double i = bg::area(inter);
    const double u = bg::area(pa) + bg::area(pb) - i;
    return u > 0.0 ? i / u : 0.0;
  } catch (const bg::exception &) {
    return lattice_iou(ra, rb);
  }
}

BoundarySet select_boundaries(
  std::vector<Boundary> candidates, int n_b, double iou_threshold, std::span<const double> relevance)
{
  std::vector<double> score(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    score[i] = relevance.empty() ? candidates[i].area() : relevance[i];
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return score[a] > score[b];
  });
  BoundarySet set;
  for (const auto idx : order) {
    if (static_cast<int>(set.boundaries.size()) >= n_b) {
      break;
    }
    bool suppressed = false;
    for (const auto & kept : set.boundaries) {
      if (boundary_iou(kept, candidates[idx]) > iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) {
      set.boundaries.push_back(std::move(candidates[idx]));
    }
  }
  return set;
}

// ---------------------------------------------------------------------------
// validation and the full pipeline

std::string check_boundary(const Boundary & b)
{
  const std::size_t n = b.left.size();
  if (n < 2 || b.right.size() != n) {
    return "left and right must have the same point count (>= 2)";
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = i == 0 ? 0 : i - 1;
    const std::size_t next = std::min(i + 1, n - 1);
    const Point2 dir = 0.5 * (b.left[next] + b.right[next]) - 0.5 * (b.left[prev] + b.right[prev]);
    if (cross(dir, b.left[i] - b.right[i]) <= 0.0) {
      return "left point " + std::to_string(i) + " is not left of the travel direction";
    }
  }
  const Polyline ring = b.polygon();
  if (!is_simple_polygon(ring)) {
    return "left and right polylines cross";
  }
  if (std::abs(signed_area(ring)) <= 0.0) {
    return "boundary polygon has no area";
  }
  return {};
}

double chord_excursion(const LaneGraph & graph, const Boundary & b)
{
  double worst = 0.0;
  const auto probe = [&](Point2 p) {
    if (!graph.contains(p)) {
      worst = std::max(worst, -graph.on_road(p).clearance);
    }
  };
  constexpr std::array<double, 5> kFractions{0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (const double f : kFractions) {
      probe(lerp(b.right[i], b.left[i], f));
    }
    if (i + 1 < b.size()) {
      probe(0.25 * (b.left[i] + b.left[i + 1] + b.right[i] + b.right[i + 1]));
    }
  }
  return worst;
}

namespace
{

std::optional<Boundary> build_candidate(
  const LaneGraph & graph, const AgentState & agent, const LanePaths & paths,
  const BoundaryConfig & config)
{
  const Point2 p = agent.pose.position();
  Polyline left = path_edge_geometry(graph, paths.left, Side::kLeft);
  Polyline right = path_edge_geometry(graph, paths.right, Side::kRight);
  left = trim_polyline(left, project_onto_polyline(left, p).arc_length, polyline_length(left));
  right = trim_polyline(right, project_onto_polyline(right, p).arc_length, polyline_length(right));

  // truncate both sides at the same arc fraction so they cover the same stretch of road
  const double cap = static_cast<double>(config.max_points - 1);
  const double len_l = polyline_length(left);
  const double len_r = polyline_length(right);
  const double longest = std::max(len_l, len_r);
  if (longest > cap) {
    const double frac = cap / longest;
    left = trim_polyline(left, 0.0, frac * len_l);
    right = trim_polyline(right, 0.0, frac * len_r);
  }

  const SmoothingParams smoothing{config.max_points, config.smoothing_tolerance, config.smoothing_lambda};
  Boundary b;
  try {
    auto [l, r] = align_pair(sample_and_smooth(left, smoothing), sample_and_smooth(right, smoothing));
    b.left = std::move(l);
    b.right = std::move(r);
  } catch (const Error &) {
    return std::nullopt;
  }
  b.left_path = paths.left;
  b.right_path = paths.right;
  if (!check_boundary(b).empty()) {
    return std::nullopt;
  }
  if (chord_excursion(graph, b) > config.smoothing_tolerance) {
    return std::nullopt;
  }
  return b;
}

}  // namespace

BoundarySet generate_boundary_set(
  const LaneGraph & graph, const AgentState & agent, const BoundaryConfig & config)
{
  const auto starts = find_start_lanes(graph, agent, config.start);

  // the horizon is measured from the agent, not from the start of its lane
  double offset = 0.0;
  for (const auto & id : starts) {
    offset = std::max(
      offset, project_onto_polyline(graph.lane(id).centerline, agent.pose.position()).arc_length);
  }
  const Reachability reach = analyze_reachability(graph, starts, config.max_arc_length + offset);
  std::set<LaneId> reachable;
  for (const auto & [id, cost] : reach.entry) reachable.insert(id);

  std::vector<GoalCluster> clusters;
  for (const auto & component : goal_components(graph, reach.goals)) {
    try {
      clusters.push_back(resolve_extremes(graph, component));
    } catch (const Error &) {
      // degenerate clusters are dropped; the remaining directions are still usable
    }
  }
  std::sort(clusters.begin(), clusters.end(), [](const GoalCluster & a, const GoalCluster & b) {
    return std::tie(a.leftmost, a.rightmost) < std::tie(b.leftmost, b.rightmost);
  });

  std::vector<Boundary> candidates;
  for (const auto & cluster : clusters) {
    for (const auto & start : starts) {
      try {
        const LanePaths paths = extract_boundary(graph, start, cluster, &reachable);
        if (auto b = build_candidate(graph, agent, paths, config)) {
          candidates.push_back(std::move(*b));
          break;
        }
      } catch (const Error & e) {
        if (e.code() != ErrorCode::kUnreachableGoal) throw;
      }
    }
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyBoundarySet, "no goal cluster produced a valid boundary");
  }

  std::vector<double> relevance;
  if (config.heading_weighted_relevance) {
    const Point2 heading{std::cos(agent.pose.heading), std::sin(agent.pose.heading)};
    for (const auto & b : candidates) {
      const Point2 mid0 = 0.5 * (b.left[0] + b.right[0]);
      const Point2 mid1 = 0.5 * (b.left[1] + b.right[1]);
      const Point2 d = mid1 - mid0;
      const double n = norm(d);
      const double alignment = n > 0.0 ? std::max(0.0, dot(heading, d) / n) : 0.0;
      relevance.push_back(b.area() * alignment);
    }
  }
  return select_boundaries(std::move(candidates), config.max_boundaries, config.iou_threshold, relevance);
}

}  // namespace bgp
