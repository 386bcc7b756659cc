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

#include "tl2la/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <thread>

#include "tl2la/errors.hpp"
#include "tl2la/rng.hpp"

namespace tl2la {

namespace {

// Intersection layout constants (meters).
constexpr double kEntryRadius = 18.0;
constexpr double kApproachLength = 72.0;
constexpr double kSegmentLength = 12.0;
constexpr double kBoundaryPointSpacing = 4.0;
constexpr double kLaneWidth = 3.5;

// Longitudinal driver model.
constexpr double kCruiseSpeed = 40.0 / 3.6;   // m/s
constexpr double kComfortDecel = 3.0;         // m/s^2
constexpr double kHardDecel = 3.5;            // clamp, stays under the 4 m/s^2 budget
constexpr double kCarLength = 4.5;
constexpr double kMinGap = 2.0;
constexpr double kSpawnClearance = 18.0;
constexpr double kCreepSpeed = 5.0;           // right turn on red roll-through, 18 km/h
constexpr double kDespawnBeyondEntry = 25.0;
constexpr double kClearanceMargin = 0.25;     // entry must be cleared this early (s)

int segments_per_lane() { return static_cast<int>(kApproachLength / kSegmentLength); }

struct BranchFrame {
  Vec2 dir;    // unit vector from intersection center toward the branch
  Vec2 right;  // right-hand normal of the inbound travel direction
};

BranchFrame branch_frame(int branch, int branch_count)
{
  const double angle = 2.0 * M_PI * static_cast<double>(branch) / branch_count;
  const Vec2 dir{std::cos(angle), std::sin(angle)};
  const Vec2 inbound{-dir.x, -dir.y};
  return BranchFrame{dir, Vec2{inbound.y, -inbound.x}};
}

// World position for arc position s (0 = far end, kApproachLength = entry)
// at the given lateral offset.
Vec2 world_position(const BranchFrame & frame, double s, double lateral)
{
  const double radial = kEntryRadius + kApproachLength - s;
  return frame.dir * radial + frame.right * lateral;
}

double lane_center_offset(int lane_index)
{
  return (static_cast<double>(lane_index) + 0.5) * kLaneWidth;
}

std::string segment_id(int branch, int lane, int segment)
{
  return "b" + std::to_string(branch) + "_l" + std::to_string(lane) + "_s" +
         std::to_string(segment);
}

std::string entry_lane_id(int branch, int lane)
{
  return segment_id(branch, lane, segments_per_lane() - 1);
}

bool phase_green(const SignalPhase & phase, double t)
{
  const double cycle = phase.green_s + phase.red_s;
  double u = std::fmod(t + phase.offset_s, cycle);
  if (u < 0.0) {
    u += cycle;
  }
  return u < phase.green_s;
}

// Start of the current green interval; only valid while green.
double green_onset(const SignalPhase & phase, double t)
{
  const double cycle = phase.green_s + phase.red_s;
  double u = std::fmod(t + phase.offset_s, cycle);
  if (u < 0.0) {
    u += cycle;
  }
  return t - u;
}

struct DriverState {
  double spawn_time{0.0};
  double s{0.0};
  double v{kCruiseSpeed};
  double accel_limit{2.0};
  double stop_offset{4.0};   // halt this far before the entry
  double reaction_delay{2.0};
  bool compliant{true};
  bool rtor_selected{false};
  bool creeping{false};
  bool waiting{false};
  double waiting_since{0.0};
  std::optional<double> release_time;
  bool visible{true};
  std::vector<std::pair<int, double>> emitted;  // (frame, arc position)
};

struct LaneRuntime {
  const std::vector<const LightSpec *> * assigned{nullptr};
  TurnType turn{TurnType::Straight};
  std::deque<DriverState> vehicles;  // front of the deque is closest to entry
  double next_arrival{0.0};
  std::vector<DriverState> finished;
};

bool any_assigned_red(const std::vector<const LightSpec *> & lights, double t)
{
  for (const LightSpec * light : lights) {
    if (!phase_green(light->phase, t)) {
      return true;
    }
  }
  return false;
}

// Latest green onset among the assigned lights; only valid when none is red.
double all_green_onset(const std::vector<const LightSpec *> & lights, double t)
{
  double onset = -1e18;
  for (const LightSpec * light : lights) {
    onset = std::max(onset, green_onset(light->phase, t));
  }
  return onset;
}

}  // namespace

const char * to_string(Preset p)
{
  switch (p) {
    case Preset::Basic4Way:
      return "Basic4Way";
    case Preset::ProtectedLeft:
      return "ProtectedLeft";
    case Preset::RightTurnOnRed:
      return "RightTurnOnRed";
    case Preset::SynchronizedLights:
      return "SynchronizedLights";
    default:
      return "RedRunners";
  }
}

std::optional<Preset> preset_from_string(const std::string & name)
{
  for (const Preset p : all_presets()) {
    if (name == to_string(p)) {
      return p;
    }
  }
  return std::nullopt;
}

std::vector<Preset> all_presets()
{
  return {Preset::Basic4Way, Preset::ProtectedLeft, Preset::RightTurnOnRed,
          Preset::SynchronizedLights, Preset::RedRunners};
}

ScenarioConfig preset(Preset name)
{
  // Shared plan: the main head runs green [0,30) / red [30,50); the left
  // arrow gets the [30,40) window inside the main red, so left-lane traffic
  // moves exactly while the main holds and the ground truth stays consistent
  // with the generated behavior.
  const SignalPhase main_phase{30.0, 20.0, 0.0};
  const SignalPhase arrow_phase{10.0, 40.0, 20.0};

  ScenarioConfig cfg;
  cfg.scene_count = 300;

  const auto add_branch_with_arrow = [&](int b, double extra_offset) {
    cfg.branches.push_back(
      BranchSpec{{LaneSpec{TurnType::LeftTurn}, LaneSpec{TurnType::Straight}}});
    SignalPhase main_b = main_phase;
    SignalPhase arrow_b = arrow_phase;
    main_b.offset_s += extra_offset;
    arrow_b.offset_s += extra_offset;
    const std::string prefix = "b" + std::to_string(b);
    cfg.lights.push_back(LightSpec{prefix + "_arrow", b, {0}, arrow_b});
    cfg.lights.push_back(LightSpec{prefix + "_main", b, {1}, main_b});
  };

  switch (name) {
    case Preset::Basic4Way:
      for (int b = 0; b < 4; ++b) {
        add_branch_with_arrow(b, 12.5 * b);
      }
      break;
    case Preset::ProtectedLeft:
      add_branch_with_arrow(0, 0.0);
      break;
    case Preset::RightTurnOnRed:
      cfg.branches.push_back(
        BranchSpec{{LaneSpec{TurnType::Straight}, LaneSpec{TurnType::RightTurn}}});
      cfg.lights.push_back(LightSpec{"b0_main0", 0, {0, 1}, main_phase});
      cfg.right_turn_on_red_rate = 0.7;
      break;
    case Preset::SynchronizedLights:
      cfg.branches.push_back(
        BranchSpec{{LaneSpec{TurnType::Straight}, LaneSpec{TurnType::Straight}}});
      cfg.lights.push_back(LightSpec{"b0_head0", 0, {0}, main_phase});
      cfg.lights.push_back(LightSpec{"b0_head1", 0, {1}, main_phase});
      break;
    case Preset::RedRunners:
      for (int b = 0; b < 4; ++b) {
        add_branch_with_arrow(b, 12.5 * b);
      }
      cfg.compliance_rate = 0.98;
      break;
  }
  return cfg;
}

void validate(const ScenarioConfig & config)
{
  if (config.branches.empty()) {
    throw ConfigError("scenario needs at least one branch");
  }
  for (const auto & branch : config.branches) {
    if (branch.lanes.empty()) {
      throw ConfigError("every branch needs at least one lane");
    }
  }
  const auto probability = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!probability(config.compliance_rate) || !probability(config.right_turn_on_red_rate) ||
      !probability(config.detection_noise) || !probability(config.cross_branch_track_rate)) {
    throw ConfigError("rates and probabilities must lie in [0,1]");
  }
  if (config.scene_duration_s <= 0.0 || config.sample_period_s <= 0.0) {
    throw ConfigError("scene duration and sample period must be positive");
  }
  if (config.arrival_rate_vpm <= 0.0) {
    throw ConfigError("arrival rate must be positive");
  }
  if (config.scene_count < 0) {
    throw ConfigError("scene count must be nonnegative");
  }
  std::vector<std::string> ids;
  for (const auto & light : config.lights) {
    if (light.phase.green_s <= 0.0 || light.phase.red_s <= 0.0) {
      throw ConfigError("light " + light.id + ": phase durations must be positive");
    }
    if (light.branch < 0 || light.branch >= config.branch_count()) {
      throw ConfigError("light " + light.id + ": branch index out of range");
    }
    for (const int lane : light.governed_lanes) {
      if (lane < 0 ||
          lane >= static_cast<int>(config.branches[light.branch].lanes.size())) {
        throw ConfigError("light " + light.id + ": lane index out of range");
      }
    }
    if (std::find(ids.begin(), ids.end(), light.id) != ids.end()) {
      throw ConfigError("duplicate light id " + light.id);
    }
    ids.push_back(light.id);
  }
}

RoadMap build_map(const ScenarioConfig & config)
{
  validate(config);
  RoadMap map;
  const int n_seg = segments_per_lane();
  const int pts = static_cast<int>(kSegmentLength / kBoundaryPointSpacing) + 1;

  for (int b = 0; b < config.branch_count(); ++b) {
    const BranchFrame frame = branch_frame(b, config.branch_count());
    for (int j = 0; j < static_cast<int>(config.branches[b].lanes.size()); ++j) {
      const double center = lane_center_offset(j);
      for (int si = 0; si < n_seg; ++si) {
        Lane lane;
        lane.id = segment_id(b, j, si);
        lane.turn_type = config.branches[b].lanes[j].turn;
        const double s0 = si * kSegmentLength;
        for (int pi = 0; pi < pts; ++pi) {
          const double s = s0 + pi * kBoundaryPointSpacing;
          lane.left_boundary.push_back(world_position(frame, s, center - kLaneWidth / 2.0));
          lane.right_boundary.push_back(world_position(frame, s, center + kLaneWidth / 2.0));
        }
        lane.entry_point = world_position(frame, s0 + kSegmentLength, center);
        if (si + 1 < n_seg) {
          lane.successor_ids.push_back(segment_id(b, j, si + 1));
        }
        map.lanes.push_back(std::move(lane));
      }
    }
  }

  for (const auto & spec : config.lights) {
    map.lights.push_back(TrafficLight{spec.id, "ix0"});
  }

  // Ground truth covers every (light, entry lane) pair so any co-observed
  // subset is labeled.
  for (const auto & spec : config.lights) {
    for (int b = 0; b < config.branch_count(); ++b) {
      for (int j = 0; j < static_cast<int>(config.branches[b].lanes.size()); ++j) {
        const bool governed =
          spec.branch == b &&
          std::find(spec.governed_lanes.begin(), spec.governed_lanes.end(), j) !=
            spec.governed_lanes.end();
        map.ground_truth[PairKey{spec.id, entry_lane_id(b, j)}] = governed ? 1 : 0;
      }
    }
  }
  return map;
}

Scene generate_scene(const ScenarioConfig & config, const RoadMap & map, int scene_index)
{
  (void)map;
  const double dt = config.sample_period_s;
  const int n_frames = static_cast<int>(std::llround(config.scene_duration_s / dt));

  double max_cycle = 60.0;
  for (const auto & light : config.lights) {
    max_cycle = std::max(max_cycle, light.phase.green_s + light.phase.red_s);
  }
  const double warmup = 1.2 * max_cycle;
  const int warmup_steps = static_cast<int>(std::ceil(warmup / dt));

  Rng globals = Rng::substream(config.seed, static_cast<std::uint64_t>(scene_index), 0);
  const int observer_branch = static_cast<int>(globals.below(config.branch_count()));
  const double phase_origin = globals.uniform(0.0, 3600.0);

  Scene scene;
  scene.scene_id = "s" + std::to_string(scene_index);
  scene.sample_period = dt;

  // Per-lane precomputed assignments.
  std::vector<std::vector<std::vector<const LightSpec *>>> assigned(config.branch_count());
  for (int b = 0; b < config.branch_count(); ++b) {
    assigned[b].resize(config.branches[b].lanes.size());
  }
  for (const auto & light : config.lights) {
    for (const int lane : light.governed_lanes) {
      assigned[light.branch][lane].push_back(&light);
    }
  }

  const double arrival_rate = config.arrival_rate_vpm / 60.0;
  const bool emit_cross = config.cross_branch_track_rate > 0.0;

  for (int b = 0; b < config.branch_count(); ++b) {
    if (b != observer_branch && !emit_cross) {
      continue;
    }
    const BranchFrame frame = branch_frame(b, config.branch_count());
    const int lane_count = static_cast<int>(config.branches[b].lanes.size());

    for (int j = 0; j < lane_count; ++j) {
      Rng rng = Rng::substream(
        config.seed, static_cast<std::uint64_t>(scene_index),
        1000 + static_cast<std::uint64_t>(b) * 100 + static_cast<std::uint64_t>(j));

      LaneRuntime lane;
      lane.assigned = &assigned[b][j];
      lane.turn = config.branches[b].lanes[j].turn;
      lane.next_arrival = -warmup + rng.exponential(arrival_rate);

      const auto spawn_driver = [&](double now) {
        DriverState d;
        d.spawn_time = now;
        d.s = 0.0;
        d.v = kCruiseSpeed;
        d.accel_limit = rng.uniform(1.6, 2.4);
        d.stop_offset = rng.uniform(2.0, 8.0);
        d.reaction_delay = rng.uniform(1.0, 3.0);
        d.compliant = rng.bernoulli(config.compliance_rate);
        d.rtor_selected = lane.turn == TurnType::RightTurn &&
                          rng.bernoulli(config.right_turn_on_red_rate);
        d.visible = b == observer_branch || rng.bernoulli(config.cross_branch_track_rate);
        return d;
      };

      for (int k = 0; k <= warmup_steps + n_frames; ++k) {
        const double t_local = (k - warmup_steps) * dt;
        const double t_abs = phase_origin + t_local;

        // Admit pending arrivals while the rear of the lane is clear.
        while (lane.next_arrival <= t_local) {
          const bool clear =
            lane.vehicles.empty() || lane.vehicles.back().s >= kSpawnClearance;
          if (!clear) {
            break;
          }
          lane.vehicles.push_back(spawn_driver(t_local));
          lane.next_arrival += rng.exponential(arrival_rate);
        }

        const int frame = k - warmup_steps;
        if (frame >= 0 && frame < n_frames) {
          for (auto & veh : lane.vehicles) {
            veh.emitted.emplace_back(frame, veh.s);
          }
        }
        if (k == warmup_steps + n_frames) {
          break;
        }

        // Longitudinal update, front of the lane first.
        const double stop_line = kApproachLength;  // entry
        double leader_s = std::numeric_limits<double>::infinity();
        for (auto & veh : lane.vehicles) {
          double cap = veh.creeping ? kCreepSpeed : kCruiseSpeed;

          if (std::isfinite(leader_s)) {
            const double free = leader_s - kCarLength - kMinGap - veh.s;
            cap = std::min(cap, std::sqrt(2.0 * kComfortDecel * std::max(0.0, free)));
            cap = std::min(cap, std::max(0.0, free) / dt);
          }

          const double halt_at = stop_line - veh.stop_offset;
          const bool committed = veh.s > halt_at + 0.2;
          bool hold = false;
          if (veh.compliant && !veh.creeping && !committed) {
            const bool red_now = any_assigned_red(*lane.assigned, t_abs);
            if (red_now) {
              hold = true;
              veh.release_time.reset();
            } else if (veh.waiting && veh.v < 0.1) {
              if (!veh.release_time) {
                veh.release_time = all_green_onset(*lane.assigned, t_abs) + veh.reaction_delay;
              }
              // Depart only when the whole crossing fits into the green.
              const double crossing =
                std::sqrt(2.0 * std::max(0.0, stop_line - veh.s) / veh.accel_limit) +
                kClearanceMargin;
              hold = t_abs < *veh.release_time ||
                     any_assigned_red(*lane.assigned, t_abs + crossing);
            } else {
              // Anticipate the next red: brake early enough that any halt
              // happens at the stop line, and keep rolling only when the
              // entry is cleared with margin before the state changes.
              double t_halt = 0.0;
              double t_entry = 0.0;
              if (veh.v > 0.0) {
                const double brake_dist = veh.v * veh.v / (2.0 * kComfortDecel);
                const double to_curve = (halt_at - veh.s) - brake_dist;
                t_halt = veh.v / kComfortDecel + std::max(0.0, to_curve) / veh.v;
                t_entry = (stop_line - veh.s) / std::max(veh.v, 0.5);
              }
              hold = any_assigned_red(*lane.assigned, t_abs + t_halt) ||
                     any_assigned_red(*lane.assigned, t_abs + t_entry + kClearanceMargin);
            }
          }

          if (hold) {
            if (veh.v < 0.05 && !veh.waiting) {
              veh.waiting = true;
              veh.waiting_since = t_local;
            }
            if (veh.rtor_selected && veh.waiting && t_local - veh.waiting_since >= 1.0 &&
                halt_at - veh.s < 1.5 && any_assigned_red(*lane.assigned, t_abs)) {
              veh.creeping = true;
              hold = false;
            }
          }
          if (!hold && veh.v >= 0.1) {
            veh.waiting = false;
          }

          if (hold) {
            const double d = std::max(0.0, halt_at - veh.s);
            cap = std::min(cap, std::sqrt(2.0 * kComfortDecel * d));
            cap = std::min(cap, d / dt);
          }

          double v_next = std::min(veh.v + veh.accel_limit * dt, cap);
          if (v_next < veh.v) {
            v_next = std::max(v_next, veh.v - kHardDecel * dt);
          }
          if (v_next < veh.v && veh.v <= kHardDecel * dt && cap <= kHardDecel * dt) {
            v_next = 0.0;
          }
          veh.s += v_next * dt;
          veh.v = v_next;
          leader_s = veh.s;
        }

        while (!lane.vehicles.empty() &&
               lane.vehicles.front().s > kApproachLength + kDespawnBeyondEntry) {
          lane.finished.push_back(std::move(lane.vehicles.front()));
          lane.vehicles.pop_front();
        }
      }

      // Emit tracks.
      for (auto & veh : lane.vehicles) {
        lane.finished.push_back(std::move(veh));
      }
      int veh_index = 0;
      std::sort(lane.finished.begin(), lane.finished.end(), [](const auto & a, const auto & c) {
        return a.spawn_time < c.spawn_time;
      });
      const double center = lane_center_offset(j);
      for (const auto & veh : lane.finished) {
        ++veh_index;
        if (!veh.visible || veh.emitted.empty()) {
          continue;
        }
        VehicleTrack track;
        track.vehicle_id = "b" + std::to_string(b) + "l" + std::to_string(j) + "v" +
                           std::to_string(veh_index);
        track.samples.reserve(veh.emitted.size());
        for (const auto & [f, s] : veh.emitted) {
          track.samples.push_back(TrackSample{f * dt, world_position(frame, s, center)});
        }
        scene.tracks.push_back(std::move(track));
      }
    }
  }

  // Roadside observation post beside the observer branch; it doubles as the
  // ego unless an ego driver is requested and available.
  bool ego_assigned = false;
  if (config.ego_driver) {
    for (auto & track : scene.tracks) {
      if (track.vehicle_id.rfind("b" + std::to_string(observer_branch) + "l", 0) == 0 &&
          track.samples.size() >= 3) {
        track.is_ego = true;
        ego_assigned = true;
        break;
      }
    }
  }
  {
    const BranchFrame frame = branch_frame(observer_branch, config.branch_count());
    const double lateral =
      static_cast<double>(config.branches[observer_branch].lanes.size()) * kLaneWidth + 4.0;
    const Vec2 post = world_position(frame, kApproachLength - 2.0, lateral);
    VehicleTrack observer;
    observer.vehicle_id = "observer";
    observer.is_ego = !ego_assigned;
    observer.samples.reserve(n_frames);
    for (int f = 0; f < n_frames; ++f) {
      observer.samples.push_back(TrackSample{f * dt, post});
    }
    scene.tracks.push_back(std::move(observer));
  }

  // The observer detects every light of its facing branch each frame,
  // subject to detection noise (half drops, half flips).
  Rng obs_rng = Rng::substream(config.seed, static_cast<std::uint64_t>(scene_index), 2);
  for (int f = 0; f < n_frames; ++f) {
    const double t_local = f * dt;
    const double t_abs = phase_origin + t_local;
    for (const auto & light : config.lights) {
      if (light.branch != observer_branch) {
        continue;
      }
      LightState state =
        phase_green(light.phase, t_abs) ? LightState::Green : LightState::Red;
      if (config.detection_noise > 0.0) {
        const double u = obs_rng.uniform();
        if (u < config.detection_noise / 2.0) {
          continue;  // dropped detection
        }
        if (u < config.detection_noise) {
          state = state == LightState::Red ? LightState::Green : LightState::Red;
        }
      }
      scene.light_observations.push_back(LightObservation{light.id, t_local, state});
    }
  }
  return scene;
}

GeneratedCorpus generate(const ScenarioConfig & config, int workers)
{
  validate(config);
  GeneratedCorpus corpus;
  corpus.map = build_map(config);
  corpus.scenes.resize(config.scene_count);

  const auto run = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      corpus.scenes[i] = generate_scene(config, corpus.map, i);
    }
  };

  if (workers <= 1 || config.scene_count < 2) {
    run(0, config.scene_count);
  } else {
    const int used = std::min(workers, config.scene_count);
    std::vector<std::thread> pool;
    pool.reserve(used);
    const int chunk = (config.scene_count + used - 1) / used;
    for (int w = 0; w < used; ++w) {
      const int begin = w * chunk;
      const int end = std::min(config.scene_count, begin + chunk);
      if (begin < end) {
        pool.emplace_back(run, begin, end);
      }
    }
    for (auto & t : pool) {
      t.join();
    }
  }
  return corpus;
}

}  // namespace tl2la
