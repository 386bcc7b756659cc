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

#ifndef TL2LA_TESTS_SUPPORT_FIXTURES_HPP_
#define TL2LA_TESTS_SUPPORT_FIXTURES_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "tl2la/core.hpp"

namespace tl2la::testing {

/// Straight lane along +x from x0 to x0+length, centered on y = y_center.
/// The entry sits at the +x end.
inline Lane straight_lane(
  const std::string & id, double length, double x0 = 0.0, double y_center = 0.0,
  double width = 3.5, int points = 5, TurnType turn = TurnType::Straight)
{
  Lane lane;
  lane.id = id;
  lane.turn_type = turn;
  for (int i = 0; i < points; ++i) {
    const double x = x0 + length * i / (points - 1);
    lane.left_boundary.push_back({x, y_center + width / 2.0});
    lane.right_boundary.push_back({x, y_center - width / 2.0});
  }
  lane.entry_point = {x0 + length, y_center};
  return lane;
}

/// Quarter-circle lane whose centerline has the given radius, running from
/// angle 90 degrees down to 0; the entry sits at the arc end (radius, 0).
inline Lane arc_lane(const std::string & id, double radius, double width = 2.0, int points = 101)
{
  Lane lane;
  lane.id = id;
  for (int i = 0; i < points; ++i) {
    const double angle = (M_PI / 2.0) * (1.0 - static_cast<double>(i) / (points - 1));
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    lane.left_boundary.push_back({(radius + width / 2.0) * c, (radius + width / 2.0) * s});
    lane.right_boundary.push_back({(radius - width / 2.0) * c, (radius - width / 2.0) * s});
  }
  lane.entry_point = {radius, 0.0};
  return lane;
}

inline RoadMap one_lane_map(const Lane & lane, const std::string & light_id = "tl0")
{
  RoadMap map;
  map.lanes.push_back(lane);
  map.lights.push_back(TrafficLight{light_id, "ix0"});
  return map;
}

/// Track sitting at one position for `frames` samples.
inline VehicleTrack stationary_track(
  const std::string & id, Vec2 position, int frames, double period = 0.1, double t0 = 0.0)
{
  VehicleTrack track;
  track.vehicle_id = id;
  for (int i = 0; i < frames; ++i) {
    track.samples.push_back({t0 + i * period, position});
  }
  return track;
}

/// Track moving along +x at constant speed.
inline VehicleTrack moving_track(
  const std::string & id, Vec2 start, double speed, int frames, double period = 0.1,
  double t0 = 0.0)
{
  VehicleTrack track;
  track.vehicle_id = id;
  for (int i = 0; i < frames; ++i) {
    track.samples.push_back({t0 + i * period, Vec2{start.x + speed * i * period, start.y}});
  }
  return track;
}

inline VehicleTrack ego_observer(int frames, double period = 0.1, Vec2 where = {0.0, 100.0})
{
  VehicleTrack track = stationary_track("ego", where, frames, period);
  track.is_ego = true;
  return track;
}

/// Constant-state observations for one light, one per frame.
inline void observe(
  Scene & scene, const std::string & light_id, LightState state, int frames,
  double period = 0.1, double t0 = 0.0)
{
  for (int i = 0; i < frames; ++i) {
    scene.light_observations.push_back({light_id, t0 + i * period, state});
  }
}

inline Scene empty_scene(const std::string & id = "s0", double period = 0.1)
{
  Scene scene;
  scene.scene_id = id;
  scene.sample_period = period;
  return scene;
}

}  // namespace tl2la::testing

#endif  // TL2LA_TESTS_SUPPORT_FIXTURES_HPP_
