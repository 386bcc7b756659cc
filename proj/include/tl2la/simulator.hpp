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

#ifndef TL2LA_SIMULATOR_HPP_
#define TL2LA_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tl2la/core.hpp"

namespace tl2la {

/// Periodic two-state schedule; green occupies [offset, offset + green_s)
/// within each cycle of length green_s + red_s.
struct SignalPhase {
  double green_s{30.0};
  double red_s{20.0};
  double offset_s{0.0};
};

struct LaneSpec {
  TurnType turn{TurnType::Straight};
};

struct BranchSpec {
  std::vector<LaneSpec> lanes;  // index 0 is the innermost (leftmost) lane
};

/// One signal head: its schedule and the approach lanes it governs. The
/// governed set becomes the ground truth and drives the traffic behavior.
struct LightSpec {
  std::string id;
  int branch{0};
  std::vector<int> governed_lanes;
  SignalPhase phase;
};

struct ScenarioConfig {
  std::uint64_t seed{1};
  std::vector<BranchSpec> branches;
  std::vector<LightSpec> lights;
  double arrival_rate_vpm{6.0};          // vehicles per minute per lane
  double compliance_rate{1.0};           // probability a driver obeys signals
  double right_turn_on_red_rate{0.0};    // right-turning drivers proceeding on red
  double detection_noise{0.0};           // per-frame drop-or-flip probability
  double cross_branch_track_rate{0.0};   // visibility of vehicles on other branches
  double scene_duration_s{25.0};
  double sample_period_s{0.1};
  int scene_count{1};
  bool ego_driver{false};                // ego drives instead of observing roadside

  int branch_count() const { return static_cast<int>(branches.size()); }
};

enum class Preset : std::uint8_t {
  Basic4Way,
  ProtectedLeft,
  RightTurnOnRed,
  SynchronizedLights,
  RedRunners,
};

const char * to_string(Preset p);
std::optional<Preset> preset_from_string(const std::string & name);
std::vector<Preset> all_presets();

/// Documented configuration exhibiting the named phenomenon.
ScenarioConfig preset(Preset name);

void validate(const ScenarioConfig & config);

struct GeneratedCorpus {
  RoadMap map;  // carries the ground truth used to drive behavior
  std::vector<Scene> scenes;
};

/// Deterministic in the seed; scene i derives its random substream from
/// (seed, i), so any parallel schedule produces identical output.
GeneratedCorpus generate(const ScenarioConfig & config, int workers = 1);

/// Map only (no scenes); same geometry and ground truth as generate().
RoadMap build_map(const ScenarioConfig & config);

/// Single scene by index, for incremental or parallel generation.
Scene generate_scene(const ScenarioConfig & config, const RoadMap & map, int scene_index);

}  // namespace tl2la

#endif  // TL2LA_SIMULATOR_HPP_
