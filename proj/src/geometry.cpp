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

#include "tl2la/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tl2la/errors.hpp"

namespace tl2la {

namespace {

constexpr double kOnEdgeTolerance = 1e-9;

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 <= 0.0) {
    return norm(p - a);
  }
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return norm(p - (a + d * t));
}

}  // namespace

std::vector<Vec2> lane_centerline(const Lane & lane)
{
  std::vector<Vec2> center;
  center.reserve(lane.left_boundary.size());
  for (std::size_t i = 0; i < lane.left_boundary.size(); ++i) {
    center.push_back((lane.left_boundary[i] + lane.right_boundary[i]) * 0.5);
  }
  return center;
}

std::vector<Vec2> lane_polygon(const Lane & lane)
{
  std::vector<Vec2> poly;
  poly.reserve(lane.left_boundary.size() + lane.right_boundary.size());
  poly.insert(poly.end(), lane.left_boundary.begin(), lane.left_boundary.end());
  poly.insert(poly.end(), lane.right_boundary.rbegin(), lane.right_boundary.rend());
  return poly;
}

bool polygon_contains(const std::vector<Vec2> & polygon, Vec2 point)
{
  const std::size_t n = polygon.size();
  if (n < 3) {
    return false;
  }
  // Boundary points count as inside; keeps matches alive at lane seams.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    if (point_segment_distance(point, a, b) <= kOnEdgeTolerance) {
      return true;
    }
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[j];
    if ((a.y > point.y) != (b.y > point.y)) {
      const double x_cross = a.x + (point.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (point.x < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

LaneMatcher::LaneMatcher(const RoadMap & map)
{
  entries_.reserve(map.lanes.size());
  for (const auto & lane : map.lanes) {
    Entry e;
    e.id = lane.id;
    e.polygon = lane_polygon(lane);
    e.centerline = lane_centerline(lane);
    e.cumulative.resize(e.centerline.size(), 0.0);
    for (std::size_t i = 1; i < e.centerline.size(); ++i) {
      e.cumulative[i] = e.cumulative[i - 1] + norm(e.centerline[i] - e.centerline[i - 1]);
    }
    e.min_x = e.min_y = std::numeric_limits<double>::infinity();
    e.max_x = e.max_y = -std::numeric_limits<double>::infinity();
    for (const auto & p : e.polygon) {
      e.min_x = std::min(e.min_x, p.x);
      e.min_y = std::min(e.min_y, p.y);
      e.max_x = std::max(e.max_x, p.x);
      e.max_y = std::max(e.max_y, p.y);
    }
    entries_.push_back(std::move(e));
  }
}

std::optional<std::string> LaneMatcher::locate(Vec2 p) const
{
  const std::string * found = nullptr;
  for (const auto & e : entries_) {
    if (p.x < e.min_x - kOnEdgeTolerance || p.x > e.max_x + kOnEdgeTolerance ||
        p.y < e.min_y - kOnEdgeTolerance || p.y > e.max_y + kOnEdgeTolerance) {
      continue;
    }
    if (polygon_contains(e.polygon, p)) {
      if (found != nullptr) {
        throw AmbiguousMatch(
          "position inside lanes " + *found + " and " + e.id +
          "; run lane preparation to collapse overlaps");
      }
      found = &e.id;
    }
  }
  if (found == nullptr) {
    return std::nullopt;
  }
  return *found;
}

const LaneMatcher::Entry & LaneMatcher::entry_for(const std::string & lane_id) const
{
  for (const auto & e : entries_) {
    if (e.id == lane_id) {
      return e;
    }
  }
  throw DomainError("unknown lane " + lane_id);
}

double LaneMatcher::lane_length(const std::string & lane_id) const
{
  return entry_for(lane_id).cumulative.back();
}

double LaneMatcher::distance_to_entry(Vec2 position, const std::string & lane_id) const
{
  const Entry & e = entry_for(lane_id);
  const auto & c = e.centerline;
  double best_d2 = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const Vec2 d = c[i + 1] - c[i];
    const double len2 = dot(d, d);
    double t = 0.0;
    if (len2 > 0.0) {
      t = std::clamp(dot(position - c[i], d) / len2, 0.0, 1.0);
    }
    const Vec2 q = c[i] + d * t;
    const Vec2 diff = position - q;
    const double d2 = dot(diff, diff);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_s = e.cumulative[i] + std::sqrt(len2) * t;
    }
  }
  return std::max(0.0, e.cumulative.back() - best_s);
}

std::optional<std::string> locate(Vec2 position, const RoadMap & map)
{
  return LaneMatcher(map).locate(position);
}

double distance_to_entry(Vec2 position, const Lane & lane)
{
  RoadMap one;
  one.lanes.push_back(lane);
  return LaneMatcher(one).distance_to_entry(position, lane.id);
}

bool is_lead(
  const std::string & vehicle_id, double timestamp, const Scene & scene, const RoadMap & map)
{
  const LaneMatcher matcher(map);

  const auto sample_at = [&](const VehicleTrack & track) -> std::optional<Vec2> {
    for (const auto & s : track.samples) {
      if (std::abs(s.timestamp - timestamp) <= kSamplePeriodTolerance) {
        return s.position;
      }
    }
    return std::nullopt;
  };

  std::optional<std::string> own_lane;
  double own_distance = 0.0;
  for (const auto & track : scene.tracks) {
    if (track.vehicle_id != vehicle_id) {
      continue;
    }
    if (const auto pos = sample_at(track)) {
      own_lane = matcher.locate(*pos);
      if (own_lane) {
        own_distance = matcher.distance_to_entry(*pos, *own_lane);
      }
    }
  }
  if (!own_lane) {
    throw NotLocated("vehicle " + vehicle_id + " is on no lane at t=" + std::to_string(timestamp));
  }

  for (const auto & track : scene.tracks) {
    if (track.vehicle_id == vehicle_id) {
      continue;
    }
    const auto pos = sample_at(track);
    if (!pos) {
      continue;
    }
    const auto lane = matcher.locate(*pos);
    if (lane != own_lane) {
      continue;
    }
    if (matcher.distance_to_entry(*pos, *lane) < own_distance) {
      return false;
    }
  }
  return true;
}

}  // namespace tl2la
