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

#include <cmath>

#include <doctest.h>

#include "support/fixtures.hpp"
#include "tl2la/errors.hpp"
#include "tl2la/geometry.hpp"
#include "tl2la/rng.hpp"

using namespace tl2la;
using namespace tl2la::testing;

TEST_CASE("locate picks the containing lane among disjoint lanes")
{
  RoadMap map;
  map.lanes.push_back(straight_lane("a", 30.0, 0.0, 0.0));
  map.lanes.push_back(straight_lane("b", 30.0, 0.0, 10.0));
  CHECK(locate({15.0, 0.0}, map) == std::optional<std::string>{"a"});
  CHECK(locate({15.0, 10.0}, map) == std::optional<std::string>{"b"});
}

TEST_CASE("locate returns nothing far from every lane")
{
  RoadMap map;
  map.lanes.push_back(straight_lane("a", 30.0));
  CHECK(!locate({130.0, 0.0}, map).has_value());
}

TEST_CASE("locate raises AmbiguousMatch on overlapping lanes")
{
  RoadMap map;
  map.lanes.push_back(straight_lane("a", 30.0, 0.0, 0.0));
  map.lanes.push_back(straight_lane("b", 30.0, 5.0, 1.0));
  CHECK_THROWS_AS((void)locate({15.0, 0.5}, map), AmbiguousMatch);
}

TEST_CASE("boundary points count as inside")
{
  const Lane lane = straight_lane("a", 30.0);
  const auto polygon = lane_polygon(lane);
  CHECK(polygon_contains(polygon, {15.0, 1.75}));   // on the left edge
  CHECK(polygon_contains(polygon, {30.0, 0.0}));    // on the entry edge
  CHECK(!polygon_contains(polygon, {15.0, 1.7501}));
}

TEST_CASE("distance_to_entry is zero at the entry point")
{
  const Lane lane = straight_lane("a", 20.0);
  CHECK(distance_to_entry(lane.entry_point, lane) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("distance_to_entry measures a straight 20 m lane")
{
  const Lane lane = straight_lane("a", 20.0);
  CHECK(distance_to_entry({0.0, 0.0}, lane) == doctest::Approx(20.0).epsilon(0.0005));
}

TEST_CASE("distance_to_entry matches the quarter-circle arc length")
{
  // Radius 10 quarter circle: analytic arc length 5*pi to the entry.
  const Lane lane = arc_lane("arc", 10.0);
  const double d = distance_to_entry({0.0, 10.0}, lane);
  CHECK(std::abs(d - 5.0 * M_PI) < 0.05);
}

TEST_CASE("is_lead for a single vehicle")
{
  const RoadMap map = one_lane_map(straight_lane("a", 30.0));
  Scene scene = empty_scene();
  scene.tracks.push_back(stationary_track("v1", {25.0, 0.0}, 3));
  CHECK(is_lead("v1", 0.1, scene, map));
}

TEST_CASE("is_lead is false for the farther of two vehicles")
{
  const RoadMap map = one_lane_map(straight_lane("a", 30.0));
  Scene scene = empty_scene();
  scene.tracks.push_back(stationary_track("near", {27.0, 0.0}, 3));
  scene.tracks.push_back(stationary_track("far", {20.0, 0.0}, 3));
  CHECK(is_lead("near", 0.1, scene, map));
  CHECK(!is_lead("far", 0.1, scene, map));
}

TEST_CASE("exact distance ties report both vehicles as lead")
{
  const RoadMap map = one_lane_map(straight_lane("a", 30.0));
  Scene scene = empty_scene();
  scene.tracks.push_back(stationary_track("v1", {25.0, 0.5}, 3));
  scene.tracks.push_back(stationary_track("v2", {25.0, -0.5}, 3));
  CHECK(is_lead("v1", 0.0, scene, map));
  CHECK(is_lead("v2", 0.0, scene, map));
}

TEST_CASE("is_lead throws NotLocated off the map")
{
  const RoadMap map = one_lane_map(straight_lane("a", 30.0));
  Scene scene = empty_scene();
  scene.tracks.push_back(stationary_track("v1", {200.0, 50.0}, 3));
  CHECK_THROWS_AS((void)is_lead("v1", 0.0, scene, map), NotLocated);
}

TEST_CASE("locate is translation-equivariant")
{
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    RoadMap map;
    map.lanes.push_back(straight_lane("a", 30.0, 0.0, 0.0));
    map.lanes.push_back(straight_lane("b", 25.0, 2.0, 8.0));
    const Vec2 point{rng.uniform(-5.0, 40.0), rng.uniform(-5.0, 15.0)};
    const Vec2 shift{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};

    RoadMap moved = map;
    for (auto & lane : moved.lanes) {
      for (auto & p : lane.left_boundary) p = p + shift;
      for (auto & p : lane.right_boundary) p = p + shift;
      lane.entry_point = lane.entry_point + shift;
    }
    CHECK(locate(point, map) == locate(point + shift, moved));
  }
}

TEST_CASE("distance_to_entry decreases monotonically toward the entry")
{
  const Lane lane = straight_lane("a", 40.0);
  const LaneMatcher matcher(one_lane_map(lane));
  double previous = matcher.distance_to_entry({0.0, 0.3}, "a");
  for (double x = 2.0; x <= 40.0; x += 2.0) {
    const double d = matcher.distance_to_entry({x, 0.3}, "a");
    CHECK(d < previous);
    previous = d;
  }
}

TEST_CASE("the lead set is exactly the set of minimal-distance vehicles")
{
  const RoadMap map = one_lane_map(straight_lane("a", 40.0));
  const LaneMatcher matcher(map);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Scene scene = empty_scene();
    const int n = 2 + static_cast<int>(rng.below(4));
    for (int i = 0; i < n; ++i) {
      scene.tracks.push_back(
        stationary_track("v" + std::to_string(i), {rng.uniform(0.0, 39.0), 0.0}, 2));
    }
    double min_distance = 1e18;
    for (const auto & track : scene.tracks) {
      min_distance = std::min(
        min_distance, matcher.distance_to_entry(track.samples[0].position, "a"));
    }
    for (const auto & track : scene.tracks) {
      const double d = matcher.distance_to_entry(track.samples[0].position, "a");
      CHECK(is_lead(track.vehicle_id, 0.0, scene, map) == (d <= min_distance));
    }
  }
}
