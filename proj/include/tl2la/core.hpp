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

#ifndef TL2LA_CORE_HPP_
#define TL2LA_CORE_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tl2la {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);

/// Traffic lights take exactly two states; an unknown or occluded light is
/// represented by the absence of an observation at that timestamp.
enum class LightState : std::uint8_t { Red, Green };

enum class TurnType : std::uint8_t { LeftTurn, RightTurn, Straight };

/// One drivable lane segment. Boundaries are paired point sequences of equal
/// length; the entry point marks where the lane meets the intersection.
struct Lane {
  std::string id;
  std::vector<Vec2> left_boundary;
  std::vector<Vec2> right_boundary;
  TurnType turn_type{TurnType::Straight};
  std::vector<std::string> successor_ids;
  Vec2 entry_point;

  friend bool operator==(const Lane &, const Lane &) = default;
};

/// Geometry is deliberately absent; the methods never consume light poses.
struct TrafficLight {
  std::string id;
  std::string intersection_id;

  friend bool operator==(const TrafficLight &, const TrafficLight &) = default;
};

/// Identifies one (traffic light, lane) pair across all modules.
struct PairKey {
  std::string light_id;
  std::string lane_id;

  auto operator<=>(const PairKey &) const = default;
};

struct RoadMap {
  std::vector<Lane> lanes;
  std::vector<TrafficLight> lights;
  std::map<PairKey, int> ground_truth;

  const Lane * find_lane(const std::string & id) const;
  const TrafficLight * find_light(const std::string & id) const;
};

struct TrackSample {
  double timestamp{0.0};
  Vec2 position;

  friend bool operator==(const TrackSample &, const TrackSample &) = default;
};

struct VehicleTrack {
  std::string vehicle_id;
  std::vector<TrackSample> samples;
  bool is_ego{false};

  friend bool operator==(const VehicleTrack &, const VehicleTrack &) = default;
};

struct LightObservation {
  std::string light_id;
  double timestamp{0.0};
  LightState state{LightState::Red};

  friend bool operator==(const LightObservation &, const LightObservation &) = default;
};

/// One fixed-rate recording: vehicle tracks plus light state detections.
struct Scene {
  std::string scene_id;
  double sample_period{0.1};
  std::vector<VehicleTrack> tracks;
  std::vector<LightObservation> light_observations;

  friend bool operator==(const Scene &, const Scene &) = default;
};

/// Timestamp jitter tolerated when checking the uniform sample period.
inline constexpr double kSamplePeriodTolerance = 1e-6;

/// Returns an empty list iff all RoadMap and Lane invariants hold. Violations
/// are data, not failures; each one names the offending entity.
std::vector<std::string> validate_map(const RoadMap & map);

/// Returns an empty list iff Scene invariants hold and every observed light
/// exists in the map.
std::vector<std::string> validate_scene(const Scene & scene, const RoadMap & map);

const char * to_string(LightState s);
const char * to_string(TurnType t);
std::optional<LightState> light_state_from_string(const std::string & s);
std::optional<TurnType> turn_type_from_string(const std::string & s);

}  // namespace tl2la

#endif  // TL2LA_CORE_HPP_
