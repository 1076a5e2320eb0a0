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

#ifndef BGP__GEOMETRY_HPP_
#define BGP__GEOMETRY_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bgp
{

struct Point2
{
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point2 &, const Point2 &) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 lerp(Point2 a, Point2 b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

struct Pose2
{
  double x{0.0};
  double y{0.0};
  double heading{0.0};

  Point2 position() const { return {x, y}; }
};

/// Ordered 2D points in meters. Valid polylines have >= 2 points and no repeated consecutive points.
using Polyline = std::vector<Point2>;

struct BoundingBox
{
  double min_x{0.0};
  double min_y{0.0};
  double max_x{0.0};
  double max_y{0.0};
};

BoundingBox bounding_box(std::span<const Point2> points);

std::vector<double> cumulative_arc_length(std::span<const Point2> points);
double polyline_length(std::span<const Point2> points);

/// Linear interpolation at arc length `s` given the cumulative table; clamps to the ends.
Point2 point_at_arc(std::span<const Point2> points, std::span<const double> cum_arc, double s);

/// Unit tangent of the segment containing arc length `s`.
Point2 tangent_at_arc(std::span<const Point2> points, std::span<const double> cum_arc, double s);

struct PolylineProjection
{
  double arc_length{0.0};
  double distance{0.0};
  // positive when the point is left of the travel direction
  double signed_lateral{0.0};
  std::size_t segment{0};
  Point2 foot{};
};

PolylineProjection project_onto_polyline(std::span<const Point2> points, Point2 p);

/// Distance from `p` to segment ab; `t` receives the clamped segment parameter.
double point_segment_distance(Point2 p, Point2 a, Point2 b, double * t = nullptr);

bool point_on_segment(Point2 p, Point2 a, Point2 b, double eps = 1e-9);

struct SegmentIntersection
{
  double t_first{0.0};
  double t_second{0.0};
  Point2 point{};
};

/// Proper or touching intersection of two segments. Collinear overlaps report no single point.
std::optional<SegmentIntersection> intersect_segments(Point2 a, Point2 b, Point2 c, Point2 d);

bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d);

/// Even-odd rule, boundary counts as inside.
bool point_in_polygon(std::span<const Point2> polygon, Point2 p, double eps = 1e-9);

/// Shoelace formula; positive for counter-clockwise rings.
double signed_area(std::span<const Point2> polygon);

/// True when no two non-adjacent edges of the closed ring touch.
bool is_simple_polygon(std::span<const Point2> polygon);

/// Linear resampling at a fixed step; the final point is always kept.
Polyline densify(std::span<const Point2> points, double max_step);

/// Sub-polyline between arc lengths [s_begin, s_end] (clamped).
Polyline trim_polyline(std::span<const Point2> points, double s_begin, double s_end);

/// Removes consecutive points closer than `eps`.
Polyline dedupe(std::span<const Point2> points, double eps = 1e-9);

}  // namespace bgp

#endif  // BGP__GEOMETRY_HPP_
