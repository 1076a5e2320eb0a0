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

#ifndef BGP__SPATIAL_GRID_HPP_
#define BGP__SPATIAL_GRID_HPP_

#include "bgp/geometry.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace bgp
{

/// Uniform bucket grid mapping cells to item ids whose bounding boxes overlap the cell.
class UniformGrid
{
public:
  explicit UniformGrid(double cell_size = 10.0) : cell_size_(cell_size) {}

  double cell_size() const { return cell_size_; }

  void insert(const BoundingBox & box, std::uint32_t id)
  {
    const auto [x0, y0] = cell_of({box.min_x, box.min_y});
    const auto [x1, y1] = cell_of({box.max_x, box.max_y});
    for (std::int64_t ix = x0; ix <= x1; ++ix) {
      for (std::int64_t iy = y0; iy <= y1; ++iy) {
        cells_[key(ix, iy)].push_back(id);
      }
    }
    if (empty_) {
      extent_ = box;
      empty_ = false;
    } else {
      extent_.min_x = std::min(extent_.min_x, box.min_x);
      extent_.min_y = std::min(extent_.min_y, box.min_y);
      extent_.max_x = std::max(extent_.max_x, box.max_x);
      extent_.max_y = std::max(extent_.max_y, box.max_y);
    }
  }

  std::span<const std::uint32_t> at(Point2 p) const
  {
    const auto [ix, iy] = cell_of(p);
    return cell(ix, iy);
  }

  std::span<const std::uint32_t> cell(std::int64_t ix, std::int64_t iy) const
  {
    const auto it = cells_.find(key(ix, iy));
    if (it == cells_.end()) {
      return {};
    }
    return it->second;
  }

  std::pair<std::int64_t, std::int64_t> cell_of(Point2 p) const
  {
    return {
      static_cast<std::int64_t>(std::floor(p.x / cell_size_)),
      static_cast<std::int64_t>(std::floor(p.y / cell_size_))};
  }

  bool empty() const { return empty_; }
  const BoundingBox & extent() const { return extent_; }

  /// Chebyshev ring count needed from `p` to cover every occupied cell.
  std::int64_t rings_to_cover(Point2 p) const
  {
    const auto [ix, iy] = cell_of(p);
    const auto [x0, y0] = cell_of({extent_.min_x, extent_.min_y});
    const auto [x1, y1] = cell_of({extent_.max_x, extent_.max_y});
    const std::int64_t dx = std::max(std::abs(ix - x0), std::abs(ix - x1));
    const std::int64_t dy = std::max(std::abs(iy - y0), std::abs(iy - y1));
    return std::max(dx, dy);
  }

  /// Visits every cell on Chebyshev ring `r` around the cell of `p`.
  template <typename Visitor>
  void visit_ring(Point2 p, std::int64_t r, Visitor && visit) const
  {
    const auto [cx, cy] = cell_of(p);
    if (r == 0) {
      visit(cell(cx, cy));
      return;
    }
    for (std::int64_t ix = cx - r; ix <= cx + r; ++ix) {
      visit(cell(ix, cy - r));
      visit(cell(ix, cy + r));
    }
    for (std::int64_t iy = cy - r + 1; iy <= cy + r - 1; ++iy) {
      visit(cell(cx - r, iy));
      visit(cell(cx + r, iy));
    }
  }

private:
  static std::int64_t key(std::int64_t ix, std::int64_t iy)
  {
    return (ix << 32) ^ (iy & 0xffffffffLL);
  }

  double cell_size_;
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells_;
  BoundingBox extent_{};
  bool empty_{true};
};

}  // namespace bgp

#endif  // BGP__SPATIAL_GRID_HPP_
