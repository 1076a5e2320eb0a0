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

#ifndef BGP__RENDER_HPP_
#define BGP__RENDER_HPP_

#include "bgp/boundary_gen.hpp"
#include "bgp/map_graph.hpp"
#include "bgp/predictor.hpp"

#include <string>

namespace bgp
{

struct RenderOptions
{
  // pixels per meter
  double scale{4.0};
  double margin{10.0};
};

/// SVG of lanes, boundaries, predictions, history and ground truth. Each boundary edge and each
/// prediction is one <polyline>; every other element uses <path> or <polygon>.
std::string render_svg(
  const ScenarioRecord & scenario, const BoundarySet * boundaries, const PredictionSet * predictions,
  const RenderOptions & options = {});

}  // namespace bgp

#endif  // BGP__RENDER_HPP_
