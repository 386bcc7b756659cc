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

#ifndef TL2LA_TRANSFORM_HPP_
#define TL2LA_TRANSFORM_HPP_

#include <set>
#include <vector>

#include "tl2la/core.hpp"

namespace tl2la {

/// A motion-prediction-shaped record: one trajectory cut into past and
/// future halves at some reference time.
struct SplitTrajectory {
  std::string vehicle_id;
  std::vector<TrackSample> past;
  std::vector<TrackSample> future;
  bool is_ego{false};
};

struct CorpusStats {
  std::int64_t scene_count{0};
  double scene_duration_s{0.0};
  double unique_roadway_km{0.0};
  double density_s_per_km{0.0};
  double total_time_h{0.0};
};

/// Concatenates the two halves into one track. Throws OverlapError when the
/// time ranges overlap.
VehicleTrack merge_trajectory_splits(const SplitTrajectory & split);

/// Exactly the pairs for which some scene contains, at one timestamp, both an
/// observation of the light and a vehicle located on the lane.
std::set<PairKey> co_observed_pairs(const std::vector<Scene> & scenes, const RoadMap & map);

/// Merges each intersection-entry lane with its predecessors until the
/// sequence covers at least `depth_m` of centerline, and drops leftover
/// segments so geometric matching is unambiguous afterwards. Entry lanes are
/// the ones without successors; merged lanes keep the entry lane's id.
RoadMap build_lane_sequences(const RoadMap & map, double depth_m = 20.0);

/// Spatial recording density rho = N * tau / R plus the corpus total time.
CorpusStats corpus_stats(std::int64_t scene_count, double scene_duration_s, double roadway_km);

/// Sum of lane centerline lengths, in kilometers.
double unique_roadway_km(const RoadMap & map);

/// Keeps only track samples located on prepared lanes within `max_distance_m`
/// of the entry, drops tracks left empty, and always retains the ego track as
/// the scene's observation anchor. For tracks crossing the window boundary
/// the first contiguous in-window run survives.
Scene proximity_filter(const Scene & scene, const RoadMap & map, double max_distance_m = 20.0);

}  // namespace tl2la

#endif  // TL2LA_TRANSFORM_HPP_
