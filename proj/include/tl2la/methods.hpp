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

#ifndef TL2LA_METHODS_HPP_
#define TL2LA_METHODS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tl2la/core.hpp"
#include "tl2la/geometry.hpp"
#include "tl2la/kinematics.hpp"

namespace tl2la {

/// Everything the motion-pattern heuristic conditions on for one
/// (vehicle, light, timestamp) triple.
struct ContextSnapshot {
  std::string vehicle_id;
  std::string light_id;
  std::string lane_id;
  double timestamp{0.0};
  double speed{0.0};           // m/s, nonnegative
  double accel{0.0};           // m/s^2, signed along travel
  double distance{0.0};        // m to the intersection entry
  bool is_lead{false};
  TurnType turn_type{TurnType::Straight};
  LightState state{LightState::Red};
  double state_duration{0.0};  // s the current state has persisted
};

/// Thresholds of the contribution heuristic. Distances in meters, times in
/// seconds, speeds in m/s.
struct HeuristicConfig {
  double stop_zone_m{8.0};
  double slow_zone_m{20.0};
  double reaction_time_red_s{1.0};
  double reaction_time_green_s{3.0};
  double vel_threshold_mps{1.0};
  double acc_threshold_mps2{1.0};
  /// When set, all matching rows of a kinematic-pattern/state group are
  /// summed instead of taking the most specific one.
  bool cumulative_rows{false};
};

/// Pass detection and hypothesis-test parameters. Pass speeds keep the
/// source units (km/h); probabilities are dimensionless.
struct RejectionConfig {
  double pass_distance_m{1.0};
  double pass_speed_kmh{15.0};
  double right_turn_pass_speed_kmh{25.0};
  double p{0.05};
  double alpha{0.001};
};

void validate(const HeuristicConfig & cfg);
void validate(const RejectionConfig & cfg);

/// Per-pair accumulators. All fields merge by addition, so partitioned
/// extraction followed by merging equals a single pass.
struct PairEvidence {
  std::int64_t contribution_total{0};      // sum of per-scene contribution sums
  std::int64_t contribution_abs_total{0};  // sum of |per-scene sums|
  std::int64_t votes_for{0};               // scenes voting "assigned"
  std::int64_t votes_against{0};           // scenes voting "not assigned"
  std::int64_t pass_total{0};              // n
  std::int64_t red_pass_count{0};          // k
  std::int64_t active_scenes{0};           // scenes contributing any signal

  friend bool operator==(const PairEvidence &, const PairEvidence &) = default;
};

/// Evidence for all co-observed (light, lane) pairs. A pair key exists as
/// soon as the pair was co-observed once, even with all-zero counters.
class EvidenceStore {
public:
  PairEvidence & at_or_insert(const PairKey & key) { return evidence_[key]; }
  const std::map<PairKey, PairEvidence> & pairs() const { return evidence_; }
  bool contains(const PairKey & key) const { return evidence_.count(key) != 0; }

  /// Field-wise addition; commutative and associative.
  void merge(const EvidenceStore & other);

  friend bool operator==(const EvidenceStore &, const EvidenceStore &) = default;

private:
  std::map<PairKey, PairEvidence> evidence_;
};

enum class Method : std::uint8_t { Baseline, Pattern, Rejection };
const char * to_string(Method m);
std::optional<Method> method_from_string(const std::string & s);

struct AssignmentPrediction {
  std::string light_id;
  std::string lane_id;
  int label{1};
  double confidence{0.0};
  Method method{Method::Rejection};
  std::int64_t evidence_count{0};

  friend bool operator==(const AssignmentPrediction &, const AssignmentPrediction &) = default;
};

/// Contribution value for one context per the motion-pattern rule table.
/// Returns 0 when no row's conditions hold.
int heuristic_contribution(const ContextSnapshot & ctx, const HeuristicConfig & cfg);

enum class EvidenceScope : std::uint8_t { AllVehicles, EgoOnly };

struct ExtractConfig {
  HeuristicConfig heuristic;
  RejectionConfig rejection;
  EvidenceScope scope{EvidenceScope::AllVehicles};
  KinematicsOptions kinematics;
};

/// Scans one scene and returns its evidence delta: contribution sums and the
/// scene vote per pair, pass trials (at most one pass per vehicle and lane),
/// and the co-observed pair keys.
EvidenceStore extract_scene_evidence(
  const Scene & scene, const RoadMap & map, const ExtractConfig & cfg);

/// Same as above with a caller-owned matcher for the (immutable) map.
EvidenceStore extract_scene_evidence(
  const Scene & scene, const RoadMap & map, const LaneMatcher & matcher,
  const ExtractConfig & cfg);

struct ClassPrior {
  std::int64_t negatives{0};
  std::int64_t positives{0};
};

/// Majority-class predictor. The prior comes from the explicit counts when
/// given, otherwise from ground-truth labels over the store's pairs. Ties
/// resolve to 1. Throws MissingPrior when neither source is available.
std::vector<AssignmentPrediction> predict_baseline(
  const EvidenceStore & store, const RoadMap & map,
  const std::optional<ClassPrior> & prior = std::nullopt);

struct PatternOptions {
  /// Default: per-scene sums vote and the cross-scene majority decides.
  /// When false, the sign of the global contribution sum decides instead.
  bool scene_majority{true};
};

/// Pattern predictor. Pairs with zero contributing scenes are labeled 1.
/// Vote ties resolve to 1. Confidence is the normalized vote margin.
std::vector<AssignmentPrediction> predict_pattern(
  const EvidenceStore & store, const PatternOptions & options = {});

/// Rejection predictor: keep the assignment unless the one-sided binomial
/// test on red passes is significant. Confidence is the p-value; pairs with
/// no passes keep label 1 at p-value 1.
std::vector<AssignmentPrediction> predict_rejection(
  const EvidenceStore & store, const RejectionConfig & cfg);

}  // namespace tl2la

#endif  // TL2LA_METHODS_HPP_
