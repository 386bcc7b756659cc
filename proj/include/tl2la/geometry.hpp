// Copyright 2026 The TL2LA Authors
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

#ifndef TL2LA_GEOMETRY_HPP_
#define TL2LA_GEOMETRY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "tl2la/core.hpp"

namespace tl2la {

/// Result of matching one vehicle sample onto the map. lane_id is absent iff
/// the position lies in no lane polygon.
struct LaneMatch {
  std::string vehicle_id;
  double timestamp{0.0};
  std::optional<std::string> lane_id;
};

/// Lane centerline: pointwise mean of the paired boundary points.
std::vector<Vec2> lane_centerline(const Lane & lane);

/// Closed lane polygon: left boundary followed by the reversed right boundary.
std::vector<Vec2> lane_polygon(const Lane & lane);

/// Even-odd containment test; points on a boundary edge count as inside.
bool polygon_contains(const std::vector<Vec2> & polygon, Vec2 point);

/// Precomputed match structures for one map. Lanes are assumed immutable for
/// the matcher's lifetime.
class LaneMatcher {
public:
  explicit LaneMatcher(const RoadMap & map);

  /// Returns the id of the unique lane polygon containing the point, or
  /// nullopt if none does. Throws AmbiguousMatch when several contain it.
  std::optional<std::string> locate(Vec2 position) const;

  /// Arc length along the lane centerline from the projection of the position
  /// to the entry end. Nonnegative; 0 at the entry.
  double distance_to_entry(Vec2 position, const std::string & lane_id) const;

  double lane_length(const std::string & lane_id) const;

private:
  struct Entry {
    std::string id;
    std::vector<Vec2> polygon;
    std::vector<Vec2> centerline;
    std::vector<double> cumulative;  // arc length at each centerline vertex
    double min_x, min_y, max_x, max_y;
  };

  const Entry & entry_for(const std::string & lane_id) const;

  std::vector<Entry> entries_;
};

std::optional<std::string> locate(Vec2 position, const RoadMap & map);

double distance_to_entry(Vec2 position, const Lane & lane);

/// True iff no other located vehicle on the same lane at the same timestamp is
/// strictly closer to the entry. Exact ties report true for all tied vehicles.
bool is_lead(
  const std::string & vehicle_id, double timestamp, const Scene & scene, const RoadMap & map);

}  // namespace tl2la

#endif  // TL2LA_GEOMETRY_HPP_
