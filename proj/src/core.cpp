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

#include "tl2la/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tl2la {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

namespace {

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

const Lane * RoadMap::find_lane(const std::string & id) const
{
  for (const auto & lane : lanes) {
    if (lane.id == id) {
      return &lane;
    }
  }
  return nullptr;
}

const TrafficLight * RoadMap::find_light(const std::string & id) const
{
  for (const auto & light : lights) {
    if (light.id == id) {
      return &light;
    }
  }
  return nullptr;
}

std::vector<std::string> validate_map(const RoadMap & map)
{
  std::vector<std::string> violations;
  std::unordered_set<std::string> lane_ids;
  std::unordered_set<std::string> light_ids;

  for (const auto & lane : map.lanes) {
    if (!lane_ids.insert(lane.id).second) {
      violations.push_back("lane " + lane.id + ": duplicate id");
    }
    if (lane.left_boundary.size() != lane.right_boundary.size()) {
      violations.push_back(
        "lane " + lane.id + ": boundary point counts differ (" +
        std::to_string(lane.left_boundary.size()) + " vs " +
        std::to_string(lane.right_boundary.size()) + ")");
      continue;
    }
    if (lane.left_boundary.size() < 2) {
      violations.push_back("lane " + lane.id + ": boundaries need at least 2 points");
      continue;
    }
    const double gap = point_segment_distance(
      lane.entry_point, lane.left_boundary.back(), lane.right_boundary.back());
    if (gap > 1.0) {
      violations.push_back(
        "lane " + lane.id + ": entry_point lies " + std::to_string(gap) +
        " m from the final boundary segment (limit 1 m)");
    }
  }
  for (const auto & light : map.lights) {
    if (!light_ids.insert(light.id).second) {
      violations.push_back("light " + light.id + ": duplicate id");
    }
  }
  for (const auto & lane : map.lanes) {
    for (const auto & succ : lane.successor_ids) {
      if (lane_ids.count(succ) == 0) {
        violations.push_back("lane " + lane.id + ": unknown successor " + succ);
      }
    }
  }
  for (const auto & [pair, value] : map.ground_truth) {
    if (light_ids.count(pair.light_id) == 0 || lane_ids.count(pair.lane_id) == 0) {
      violations.push_back(
        "ground_truth (" + pair.light_id + ", " + pair.lane_id + "): unknown id");
    }
    if (value != 0 && value != 1) {
      violations.push_back(
        "ground_truth (" + pair.light_id + ", " + pair.lane_id + "): value " +
        std::to_string(value) + " outside {0,1}");
    }
  }
  return violations;
}

std::vector<std::string> validate_scene(const Scene & scene, const RoadMap & map)
{
  std::vector<std::string> violations;

  if (scene.sample_period <= 0.0) {
    violations.push_back("scene " + scene.scene_id + ": sample_period must be positive");
  }

  int ego_count = 0;
  double t_min = std::numeric_limits<double>::infinity();
  double t_max = -std::numeric_limits<double>::infinity();
  for (const auto & track : scene.tracks) {
    if (track.is_ego) {
      ++ego_count;
    }
    if (track.samples.empty()) {
      violations.push_back("track " + track.vehicle_id + ": no samples");
      continue;
    }
    t_min = std::min(t_min, track.samples.front().timestamp);
    t_max = std::max(t_max, track.samples.back().timestamp);
    for (std::size_t i = 1; i < track.samples.size(); ++i) {
      const double dt = track.samples[i].timestamp - track.samples[i - 1].timestamp;
      if (dt <= 0.0) {
        violations.push_back("track " + track.vehicle_id + ": timestamps not strictly increasing");
        break;
      }
      if (std::abs(dt - scene.sample_period) > kSamplePeriodTolerance) {
        violations.push_back(
          "track " + track.vehicle_id + ": sample period " + std::to_string(dt) +
          " deviates from scene period " + std::to_string(scene.sample_period));
        break;
      }
    }
  }
  if (ego_count != 1) {
    violations.push_back(
      "scene " + scene.scene_id + ": expected exactly one ego track, found " +
      std::to_string(ego_count));
  }

  std::set<std::pair<std::string, double>> seen;
  for (const auto & obs : scene.light_observations) {
    if (map.find_light(obs.light_id) == nullptr) {
      violations.push_back("observation of unknown light " + obs.light_id);
    }
    if (!seen.insert({obs.light_id, obs.timestamp}).second) {
      violations.push_back(
        "light " + obs.light_id + ": duplicate observation at t=" +
        std::to_string(obs.timestamp));
    }
    if (!scene.tracks.empty() && (obs.timestamp < t_min - kSamplePeriodTolerance ||
                                  obs.timestamp > t_max + kSamplePeriodTolerance)) {
      violations.push_back(
        "light " + obs.light_id + ": observation at t=" + std::to_string(obs.timestamp) +
        " outside track time range");
    }
  }
  return violations;
}

const char * to_string(LightState s)
{
  return s == LightState::Red ? "red" : "green";
}

const char * to_string(TurnType t)
{
  switch (t) {
    case TurnType::LeftTurn:
      return "left_turn";
    case TurnType::RightTurn:
      return "right_turn";
    default:
      return "straight";
  }
}

std::optional<LightState> light_state_from_string(const std::string & s)
{
  if (s == "red") return LightState::Red;
  if (s == "green") return LightState::Green;
  return std::nullopt;
}

std::optional<TurnType> turn_type_from_string(const std::string & s)
{
  if (s == "left_turn") return TurnType::LeftTurn;
  if (s == "right_turn") return TurnType::RightTurn;
  if (s == "straight") return TurnType::Straight;
  return std::nullopt;
}

}  // namespace tl2la
