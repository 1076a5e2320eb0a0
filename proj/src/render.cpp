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

#include "bgp/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bgp
{

namespace
{

constexpr std::array<const char *, 6> kBoundaryColors{
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

class Canvas
{
public:
  Canvas(const BoundingBox & box, const RenderOptions & options)
  : box_(box), options_(options)
  {
  }

  double width() const { return (box_.max_x - box_.min_x) * options_.scale + 2.0 * options_.margin; }
  double height() const { return (box_.max_y - box_.min_y) * options_.scale + 2.0 * options_.margin; }

  // y flips so north is up
  std::string point(Point2 p) const
  {
    const double x = (p.x - box_.min_x) * options_.scale + options_.margin;
    const double y = (box_.max_y - p.y) * options_.scale + options_.margin;
    return fmt(x) + "," + fmt(y);
  }

  std::string points(const Polyline & line) const
  {
    std::string out;
    for (const auto & p : line) {
      if (!out.empty()) out += ' ';
      out += point(p);
    }
    return out;
  }

  std::string path(const Polyline & line) const
  {
    std::string out;
    for (std::size_t i = 0; i < line.size(); ++i) {
      out += (i == 0 ? "M" : " L") + point(line[i]);
    }
    return out;
  }

private:
  BoundingBox box_;
  RenderOptions options_;
};

Polyline positions(const Trajectory & traj, std::size_t from = 0)
{
  Polyline out;
  for (std::size_t i = from; i < traj.size(); ++i) out.push_back(traj.position(i));
  return out;
}

}  // namespace

std::string render_svg(
  const ScenarioRecord & scenario, const BoundarySet * boundaries, const PredictionSet * predictions,
  const RenderOptions & options)
{
  Polyline extent_points{scenario.focal_agent.pose.position()};
  for (std::size_t i = 0; i < scenario.map.size(); ++i) {
    const auto & poly = scenario.map.polygon(i);
    extent_points.insert(extent_points.end(), poly.begin(), poly.end());
  }
  const Canvas canvas(bounding_box(extent_points), options);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(canvas.width()) << "\" height=\""
      << fmt(canvas.height()) << "\" viewBox=\"0 0 " << fmt(canvas.width()) << ' ' << fmt(canvas.height())
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  svg << "<g id=\"lanes\">\n";
  for (std::size_t i = 0; i < scenario.map.size(); ++i) {
    svg << "<polygon points=\"" << canvas.points(scenario.map.polygon(i))
        << "\" fill=\"#d9d9d9\" stroke=\"#a0a0a0\" stroke-width=\"0.5\"/>\n";
  }
  for (const auto & lane : scenario.map.lanes()) {
    svg << "<path d=\"" << canvas.path(lane.centerline)
        << "\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"0.6\" stroke-dasharray=\"4 4\"/>\n";
  }
  svg << "</g>\n";

  if (boundaries) {
    svg << "<g id=\"boundaries\">\n";
    for (std::size_t b = 0; b < boundaries->boundaries.size(); ++b) {
      const auto & boundary = boundaries->boundaries[b];
      const char * color = kBoundaryColors[b % kBoundaryColors.size()];
      svg << "<polyline class=\"boundary-left\" points=\"" << canvas.points(boundary.left)
          << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
      svg << "<polyline class=\"boundary-right\" points=\"" << canvas.points(boundary.right)
          << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
    }
    svg << "</g>\n";
  }

  if (predictions) {
    double top = 0.0;
    for (const auto & e : predictions->entries) top = std::max(top, e.likelihood);
    svg << "<g id=\"predictions\">\n";
    for (const auto & e : predictions->entries) {
      const double opacity = top > 0.0 ? 0.25 + 0.75 * e.likelihood / top : 1.0;
      const char * color = e.boundary >= 0 ? kBoundaryColors[static_cast<std::size_t>(e.boundary) % kBoundaryColors.size()] : "#e377c2";
      svg << "<polyline class=\"prediction\" points=\"" << canvas.points(positions(e.trajectory))
          << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" stroke-opacity=\"" << fmt(opacity)
          << "\"/>\n";
    }
    svg << "</g>\n";
  }

  svg << "<g id=\"agent\">\n";
  if (scenario.focal_history.size() >= 2) {
    svg << "<path class=\"history\" d=\"" << canvas.path(positions(scenario.focal_history))
        << "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"2\"/>\n";
  }
  if (scenario.ground_truth_future && scenario.ground_truth_future->size() >= 1) {
    Polyline gt{scenario.focal_agent.pose.position()};
    const auto rest = positions(*scenario.ground_truth_future);
    gt.insert(gt.end(), rest.begin(), rest.end());
    svg << "<path class=\"ground-truth\" d=\"" << canvas.path(gt)
        << "\" fill=\"none\" stroke=\"#17becf\" stroke-width=\"2\" stroke-dasharray=\"3 2\"/>\n";
  }
  for (const auto & other : scenario.other_agents) {
    const Point2 p = other.state.pose.position();
    svg << "<path class=\"other-agent\" d=\"" << canvas.path({p, p + Point2{std::cos(other.state.pose.heading), std::sin(other.state.pose.heading)}})
        << "\" stroke=\"#7f7f7f\" stroke-width=\"4\"/>\n";
  }
  {
    const Pose2 & pose = scenario.focal_agent.pose;
    const Point2 p = pose.position();
    const Point2 f{std::cos(pose.heading), std::sin(pose.heading)};
    const Point2 l{-f.y, f.x};
    const Polyline tri{p + 2.5 * f, p - 1.5 * f + 1.2 * l, p - 1.5 * f - 1.2 * l};
    svg << "<polygon class=\"focal-agent\" points=\"" << canvas.points(tri) << "\" fill=\"#d62728\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace bgp
