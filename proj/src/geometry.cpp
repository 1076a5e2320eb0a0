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

#include "bgp/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace bgp
{

double normalize_angle(double angle)
{
  constexpr double kTwoPi = 2.0 * M_PI;
  double wrapped = std::fmod(angle, kTwoPi);
  if (wrapped <= -M_PI) {
    wrapped += kTwoPi;
  } else if (wrapped > M_PI) {
    wrapped -= kTwoPi;
  }
  return wrapped;
}

BoundingBox bounding_box(std::span<const Point2> points)
{
  BoundingBox box{
    std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
    -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto & p : points) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

std::vector<double> cumulative_arc_length(std::span<const Point2> points)
{
  std::vector<double> cum(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) {
    cum[i] = cum[i - 1] + distance(points[i - 1], points[i]);
  }
  return cum;
}

double polyline_length(std::span<const Point2> points)
{
  double length = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    length += distance(points[i - 1], points[i]);
  }
  return length;
}

namespace
{
// Index of the segment [i, i+1] that contains arc length s.
std::size_t segment_at_arc(std::span<const double> cum_arc, double s)
{
  const auto it = std::upper_bound(cum_arc.begin(), cum_arc.end(), s);
  std::size_t idx = static_cast<std::size_t>(std::distance(cum_arc.begin(), it));
  idx = idx == 0 ? 0 : idx - 1;
  return std::min(idx, cum_arc.size() - 2);
}
}  // namespace

Point2 point_at_arc(std::span<const Point2> points, std::span<const double> cum_arc, double s)
{
  if (points.empty()) {
    return {};
  }
  if (points.size() == 1 || s <= 0.0) {
    return points.front();
  }
  if (s >= cum_arc.back()) {
    return points.back();
  }
  const std::size_t i = segment_at_arc(cum_arc, s);
  const double seg = cum_arc[i + 1] - cum_arc[i];
  if (seg <= 0.0) {
    return points[i + 1];
  }
  return lerp(points[i], points[i + 1], (s - cum_arc[i]) / seg);
}

Point2 tangent_at_arc(std::span<const Point2> points, std::span<const double> cum_arc, double s)
{
  if (points.size() < 2) {
    return {1.0, 0.0};
  }
  std::size_t i = segment_at_arc(cum_arc, std::clamp(s, 0.0, cum_arc.back()));
  // skip zero-length segments
  while (i + 2 < points.size() && distance(points[i], points[i + 1]) == 0.0) {
    ++i;
  }
  const Point2 d = points[i + 1] - points[i];
  const double n = norm(d);
  return n > 0.0 ? (1.0 / n) * d : Point2{1.0, 0.0};
}

double point_segment_distance(Point2 p, Point2 a, Point2 b, double * t)
{
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  double u = 0.0;
  if (len2 > 0.0) {
    u = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  }
  if (t != nullptr) {
    *t = u;
  }
  return distance(p, a + u * ab);
}

PolylineProjection project_onto_polyline(std::span<const Point2> points, Point2 p)
{
  PolylineProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  if (points.empty()) {
    return best;
  }
  if (points.size() == 1) {
    best.distance = distance(points[0], p);
    best.foot = points[0];
    return best;
  }
  double arc = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    double t = 0.0;
    const double d = point_segment_distance(p, points[i], points[i + 1], &t);
    const double seg = distance(points[i], points[i + 1]);
    if (d < best.distance) {
      best.distance = d;
      best.segment = i;
      best.arc_length = arc + t * seg;
      best.foot = lerp(points[i], points[i + 1], t);
      const double side = cross(points[i + 1] - points[i], p - points[i]);
      best.signed_lateral = side >= 0.0 ? d : -d;
    }
    arc += seg;
  }
  return best;
}

bool point_on_segment(Point2 p, Point2 a, Point2 b, double eps)
{
  return point_segment_distance(p, a, b) <= eps;
}

std::optional<SegmentIntersection> intersect_segments(Point2 a, Point2 b, Point2 c, Point2 d)
{
  const Point2 r = b - a;
  const Point2 s = d - c;
  const double denom = cross(r, s);
  const double scale = norm(r) * norm(s);
  if (scale == 0.0 || std::abs(denom) <= 1e-12 * scale) {
    return std::nullopt;
  }
  const Point2 ca = c - a;
  const double t = cross(ca, s) / denom;
  const double u = cross(ca, r) / denom;
  constexpr double kTol = 1e-12;
  if (t < -kTol || t > 1.0 + kTol || u < -kTol || u > 1.0 + kTol) {
    return std::nullopt;
  }
  SegmentIntersection hit;
  hit.t_first = std::clamp(t, 0.0, 1.0);
  hit.t_second = std::clamp(u, 0.0, 1.0);
  hit.point = a + hit.t_first * r;
  return hit;
}

bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d)
{
  if (intersect_segments(a, b, c, d)) {
    return true;
  }
  // parallel or degenerate: touching only through an endpoint lying on the other segment
  constexpr double kEps = 1e-9;
  return point_on_segment(a, c, d, kEps) || point_on_segment(b, c, d, kEps) ||
         point_on_segment(c, a, b, kEps) || point_on_segment(d, a, b, kEps);
}

bool point_in_polygon(std::span<const Point2> polygon, Point2 p, double eps)
{
  const std::size_t n = polygon.size();
  if (n < 3) {
    return false;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 & a = polygon[i];
    const Point2 & b = polygon[j];
    const bool near_edge = p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
                           p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
    if (near_edge && point_on_segment(p, a, b, eps)) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

double signed_area(std::span<const Point2> polygon)
{
  const std::size_t n = polygon.size();
  if (n < 3) {
    return 0.0;
  }
  double twice = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    twice += cross(polygon[j], polygon[i]);
  }
  return 0.5 * twice;
}

bool is_simple_polygon(std::span<const Point2> polygon)
{
  std::vector<Point2> ring(polygon.begin(), polygon.end());
  if (ring.size() > 1 && ring.front() == ring.back()) {
    ring.pop_back();
  }
  const std::size_t n = ring.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(ring[i], ring[(i + 1) % n]) <= 1e-12) {
      return false;
    }
  }
  // adjacent edges may only share their common vertex; a reversal folds the ring onto itself
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = ring[(i + n - 1) % n];
    const Point2 v = ring[i];
    const Point2 b = ring[(i + 1) % n];
    const Point2 e1 = a - v;
    const Point2 e2 = b - v;
    if (std::abs(cross(e1, e2)) <= 1e-12 * norm(e1) * norm(e2) && dot(e1, e2) > 0.0) {
      return false;
    }
  }
  if (n == 3) {
    return true;
  }

  struct Edge
  {
    double min_x;
    double max_x;
    std::size_t index;
  };
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = ring[i];
    const Point2 b = ring[(i + 1) % n];
    edges.push_back({std::min(a.x, b.x), std::max(a.x, b.x), i});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge & l, const Edge & r) {
    return l.min_x < r.min_x || (l.min_x == r.min_x && l.index < r.index);
  });

  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::size_t i = edges[k].index;
    const Point2 a = ring[i];
    const Point2 b = ring[(i + 1) % n];
    for (std::size_t m = k + 1; m < edges.size() && edges[m].min_x <= edges[k].max_x + 1e-12; ++m) {
      const std::size_t j = edges[m].index;
      const bool adjacent = (j == (i + 1) % n) || (i == (j + 1) % n);
      if (adjacent) {
        continue;
      }
      const Point2 c = ring[j];
      const Point2 d = ring[(j + 1) % n];
      if (std::max(c.y, d.y) < std::min(a.y, b.y) - 1e-12 ||
          std::min(c.y, d.y) > std::max(a.y, b.y) + 1e-12) {
        continue;
      }
      if (segments_touch(a, b, c, d)) {
        return false;
      }
    }
  }
  return true;
}

Polyline densify(std::span<const Point2> points, double max_step)
{
  Polyline out;
  if (points.empty()) {
    return out;
  }
  out.push_back(points.front());
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Point2 a = points[i - 1];
    const Point2 b = points[i];
    const double len = distance(a, b);
    const auto pieces = static_cast<int>(std::ceil(len / max_step - 1e-9));
    for (int k = 1; k < pieces; ++k) {
      out.push_back(lerp(a, b, static_cast<double>(k) / pieces));
    }
    out.push_back(b);
  }
  return dedupe(out);
}

Polyline trim_polyline(std::span<const Point2> points, double s_begin, double s_end)
{
  Polyline out;
  if (points.size() < 2) {
    out.assign(points.begin(), points.end());
    return out;
  }
  const auto cum = cumulative_arc_length(points);
  s_begin = std::clamp(s_begin, 0.0, cum.back());
  s_end = std::clamp(s_end, s_begin, cum.back());
  out.push_back(point_at_arc(points, cum, s_begin));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (cum[i] > s_begin && cum[i] < s_end) {
      out.push_back(points[i]);
    }
  }
  out.push_back(point_at_arc(points, cum, s_end));
  return dedupe(out);
}

Polyline dedupe(std::span<const Point2> points, double eps)
{
  Polyline out;
  out.reserve(points.size());
  for (const auto & p : points) {
    if (out.empty() || distance(out.back(), p) > eps) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace bgp
