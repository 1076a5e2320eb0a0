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

#ifndef BGP__SUPERPOSITION_HPP_
#define BGP__SUPERPOSITION_HPP_

#include "bgp/boundary_gen.hpp"
#include "bgp/geometry.hpp"

#include <vector>

namespace bgp
{

/// Left weight per boundary point pair, each in [0, 1]; the right weight is 1 - w.
struct WeightProfile
{
  std::vector<double> weights;
};

struct SuperPath
{
  Polyline points;
  std::vector<double> cum_arc;

  double length() const { return cum_arc.empty() ? 0.0 : cum_arc.back(); }
};

SuperPath make_super_path(Polyline points);

/// point_i = w_i * left_i + (1 - w_i) * right_i. Throws Error(kDimension) on a length mismatch and
/// Error(kParameter) for weights outside [0, 1].
SuperPath superimpose(const Boundary & boundary, const WeightProfile & weights);

/// Linear interpolation at arc length `s`, clamped to the path ends.
Point2 point_at_arclength(const SuperPath & path, double s);

}  // namespace bgp

#endif  // BGP__SUPERPOSITION_HPP_
