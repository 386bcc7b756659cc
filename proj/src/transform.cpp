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

#include "tl2la/transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "tl2la/errors.hpp"
#include "tl2la/geometry.hpp"

namespace tl2la {

VehicleTrack merge_trajectory_splits(const SplitTrajectory & split)
{
  if (!split.past.empty() && !split.future.empty() &&
      split.future.front().timestamp <= split.past.back().timestamp) {
    throw OverlapError(
      "trajectory halves of " + split.vehicle_id + " overlap: past ends at " +
      std::to_string(split.past.back().timestamp) + ", future starts at " +
      std::to_string(split.future.front().timestamp));
  }
  VehicleTrack track;
  track.vehicle_id = split.vehicle_id;
  track.is_ego = split.is_ego;
  track.samples.reserve(split.past.size() + split.future.size());
  track.samples.insert(track.samples.end(), split.past.begin(), split.past.end());
  track.samples.insert(track.samples.end(), split.future.begin(), split.future.end());
  return track;
}

std::set<PairKey> co_observed_pairs(const std::vector<Scene> & scenes, const RoadMap & map)
{
  const LaneMatcher matcher(map);
  std::set<PairKey> pairs;
  for (const auto & scene : scenes) {
    // Lights observed per frame, then lanes carrying a located vehicle at
    // the same frame.
    std::map<std::int64_t, std::vector<const LightObservation *>> obs_by_frame;
    const auto frame_of = [&](double t) {
      return static_cast<std::int64_t>(std::llround(t / scene.sample_period));
    };
    for (const auto & obs : scene.light_observations) {
      obs_by_frame[frame_of(obs.timestamp)].push_back(&obs);
    }
    for (const auto & track : scene.tracks) {
      for (const auto & sample : track.samples) {
        const auto it = obs_by_frame.find(frame_of(sample.timestamp));
        if (it == obs_by_frame.end()) {
          continue;
        }
        bool same_instant = false;
        for (const auto * obs : it->second) {
          if (std::abs(obs->timestamp - sample.timestamp) <= kSamplePeriodTolerance) {
            same_instant = true;
            break;
          }
        }
        if (!same_instant) {
          continue;
        }
        const auto lane_id = matcher.locate(sample.position);
        if (!lane_id) {
          continue;
        }
        for (const auto * obs : it->second) {
          if (std::abs(obs->timestamp - sample.timestamp) <= kSamplePeriodTolerance) {
            pairs.insert(PairKey{obs->light_id, *lane_id});
          }
        }
      }
    }
  }
  return pairs;
}

namespace {

double centerline_length(const Lane & lane)
{
  const auto center = lane_centerline(lane);
  double length = 0.0;
  for (std::size_t i = 1; i < center.size(); ++i) {
    length += norm(center[i] - center[i - 1]);
  }
  return length;
}

// Prepends the predecessor's geometry to the lane's.
Lane concatenate(const Lane & predecessor, const Lane & lane)
{
  Lane merged = lane;
  merged.left_boundary = predecessor.left_boundary;
  merged.right_boundary = predecessor.right_boundary;
  // Skip the shared seam point when the boundaries touch.
  const auto append = [](std::vector<Vec2> & dst, const std::vector<Vec2> & src) {
    std::size_t begin = 0;
    if (!dst.empty() && !src.empty() && norm(dst.back() - src.front()) < 1e-9) {
      begin = 1;
    }
    dst.insert(dst.end(), src.begin() + begin, src.end());
  };
  append(merged.left_boundary, lane.left_boundary);
  append(merged.right_boundary, lane.right_boundary);
  if (merged.left_boundary.size() != merged.right_boundary.size()) {
    throw TopologyError(
      "lanes " + predecessor.id + " and " + lane.id + " cannot merge: boundary counts differ");
  }
  return merged;
}

}  // namespace

RoadMap build_lane_sequences(const RoadMap & map, double depth_m)
{
  std::unordered_map<std::string, const Lane *> by_id;
  std::unordered_map<std::string, std::vector<const Lane *>> predecessors;
  for (const auto & lane : map.lanes) {
    by_id[lane.id] = &lane;
  }
  for (const auto & lane : map.lanes) {
    for (const auto & succ : lane.successor_ids) {
      predecessors[succ].push_back(&lane);
    }
  }

  RoadMap prepared;
  prepared.lights = map.lights;
  std::unordered_set<std::string> consumed;

  for (const auto & lane : map.lanes) {
    if (!lane.successor_ids.empty()) {
      continue;  // not an intersection-entry lane
    }
    Lane sequence = lane;
    double covered = centerline_length(lane);
    std::unordered_set<std::string> visited{lane.id};
    const Lane * current = &lane;
    while (covered < depth_m) {
      const auto it = predecessors.find(current->id);
      if (it == predecessors.end() || it->second.empty()) {
        break;  // chain ends before reaching the depth; keep what exists
      }
      const Lane * pred = it->second.front();
      if (it->second.size() > 1) {
        // Deterministic pick: geometric continuation closest to our start.
        double best = std::numeric_limits<double>::infinity();
        for (const Lane * candidate : it->second) {
          const double gap = norm(candidate->left_boundary.back() - current->left_boundary.front());
          if (gap < best) {
            best = gap;
            pred = candidate;
          }
        }
      }
      if (!visited.insert(pred->id).second) {
        throw TopologyError(
          "cyclic predecessor chain at lane " + pred->id + " within the sequence depth");
      }
      if (consumed.count(pred->id) != 0) {
        break;  // already claimed by another sequence; avoid overlap
      }
      consumed.insert(pred->id);
      sequence = concatenate(*pred, sequence);
      covered += centerline_length(*pred);
      current = pred;
    }
    sequence.id = lane.id;
    sequence.turn_type = lane.turn_type;
    sequence.entry_point = lane.entry_point;
    sequence.successor_ids.clear();
    prepared.lanes.push_back(std::move(sequence));
  }

  std::unordered_set<std::string> kept;
  for (const auto & lane : prepared.lanes) {
    kept.insert(lane.id);
  }
  for (const auto & [pair, value] : map.ground_truth) {
    if (kept.count(pair.lane_id) != 0) {
      prepared.ground_truth[pair] = value;
    }
  }
  return prepared;
}

CorpusStats corpus_stats(std::int64_t scene_count, double scene_duration_s, double roadway_km)
{
  if (scene_count <= 0 || scene_duration_s <= 0.0 || roadway_km <= 0.0) {
    throw DomainError("corpus stats need positive scene count, duration and roadway length");
  }
  CorpusStats stats;
  stats.scene_count = scene_count;
  stats.scene_duration_s = scene_duration_s;
  stats.unique_roadway_km = roadway_km;
  stats.density_s_per_km = static_cast<double>(scene_count) * scene_duration_s / roadway_km;
  stats.total_time_h = static_cast<double>(scene_count) * scene_duration_s / 3600.0;
  return stats;
}

double unique_roadway_km(const RoadMap & map)
{
  double meters = 0.0;
  for (const auto & lane : map.lanes) {
    meters += centerline_length(lane);
  }
  return meters / 1000.0;
}

Scene proximity_filter(const Scene & scene, const RoadMap & map, double max_distance_m)
{
  const LaneMatcher matcher(map);
  Scene filtered;
  filtered.scene_id = scene.scene_id;
  filtered.sample_period = scene.sample_period;
  filtered.light_observations = scene.light_observations;

  for (const auto & track : scene.tracks) {
    if (track.is_ego) {
      filtered.tracks.push_back(track);  // observation anchor stays intact
      continue;
    }
    VehicleTrack kept;
    kept.vehicle_id = track.vehicle_id;
    kept.is_ego = false;
    bool run_done = false;
    for (const auto & sample : track.samples) {
      bool in_window = false;
      if (const auto lane_id = matcher.locate(sample.position)) {
        in_window = matcher.distance_to_entry(sample.position, *lane_id) <= max_distance_m;
      }
      if (in_window && !run_done) {
        kept.samples.push_back(sample);
      } else if (!kept.samples.empty()) {
        run_done = true;
      }
    }
    if (!kept.samples.empty()) {
      filtered.tracks.push_back(std::move(kept));
    }
  }
  return filtered;
}

}  // namespace tl2la
