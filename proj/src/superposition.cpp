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

#include "bgp/superposition.hpp"

#include "bgp/error.hpp"

namespace bgp
{

SuperPath make_super_path(Polyline points)
{
  SuperPath path;
  path.cum_arc = cumulative_arc_length(points);
  path.points = std::move(points);
  return path;
}

SuperPath superimpose(const Boundary & boundary, const WeightProfile & weights)
{
  const std::size_t n = boundary.size();
  if (weights.weights.size() != n || boundary.right.size() != n) {
    throw Error(
      ErrorCode::kDimension, "weight profile has " + std::to_string(weights.weights.size()) +
                               " entries, boundary has " + std::to_string(n) + " point pairs");
  }
  Polyline points(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights.weights[i];
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::kParameter, "weight " + std::to_string(i) + " outside [0, 1]");
    }
    points[i] = w * boundary.left[i] + (1.0 - w) * boundary.right[i];
  }
  return make_super_path(std::move(points));
}

Point2 point_at_arclength(const SuperPath & path, double s)
{
  return point_at_arc(path.points, path.cum_arc, s);
}

}  // namespace bgp
