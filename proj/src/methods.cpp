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

#include "tl2la/methods.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "tl2la/errors.hpp"
#include "tl2la/stats.hpp"

namespace tl2la {

namespace {

constexpr double kKmhToMps = 1.0 / 3.6;

enum class KinematicPattern {
  Stationary,
  MovingSteady,
  AcceleratingFromStop,
  AcceleratingInMotion,
  Braking,
  Other,
};

KinematicPattern classify(double speed, double accel, const HeuristicConfig & cfg)
{
  const bool moving = std::abs(speed) >= cfg.vel_threshold_mps;
  const bool strong_accel = std::abs(accel) >= cfg.acc_threshold_mps2;
  if (!strong_accel) {
    return moving ? KinematicPattern::MovingSteady : KinematicPattern::Stationary;
  }
  if (accel > 0.0) {
    return moving ? KinematicPattern::AcceleratingInMotion : KinematicPattern::AcceleratingFromStop;
  }
  if (moving && accel < 0.0) {
    return KinematicPattern::Braking;
  }
  return KinematicPattern::Other;
}

}  // namespace

void validate(const HeuristicConfig & cfg)
{
  if (!(cfg.stop_zone_m > 0.0 && cfg.slow_zone_m > 0.0 && cfg.stop_zone_m < cfg.slow_zone_m)) {
    throw ConfigError("heuristic zones need 0 < stop_zone < slow_zone");
  }
  if (cfg.reaction_time_red_s <= 0.0 || cfg.reaction_time_green_s <= 0.0 ||
      cfg.vel_threshold_mps <= 0.0 || cfg.acc_threshold_mps2 <= 0.0) {
    throw ConfigError("heuristic thresholds must be positive");
  }
}

void validate(const RejectionConfig & cfg)
{
  if (!(cfg.p > 0.0 && cfg.p < 1.0)) {
    throw ConfigError("rejection p must lie in (0,1)");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ConfigError("rejection alpha must lie in (0,1)");
  }
  if (cfg.pass_distance_m <= 0.0) {
    throw ConfigError("pass_distance must be positive");
  }
  if (!(cfg.pass_speed_kmh > 0.0 && cfg.pass_speed_kmh < cfg.right_turn_pass_speed_kmh)) {
    throw ConfigError("pass speeds need 0 < pass_speed < right_turn_pass_speed");
  }
}

void EvidenceStore::merge(const EvidenceStore & other)
{
  for (const auto & [key, delta] : other.evidence_) {
    PairEvidence & mine = evidence_[key];
    mine.contribution_total += delta.contribution_total;
    mine.contribution_abs_total += delta.contribution_abs_total;
    mine.votes_for += delta.votes_for;
    mine.votes_against += delta.votes_against;
    mine.pass_total += delta.pass_total;
    mine.red_pass_count += delta.red_pass_count;
    mine.active_scenes += delta.active_scenes;
  }
}

const char * to_string(Method m)
{
  switch (m) {
    case Method::Baseline:
      return "baseline";
    case Method::Pattern:
      return "pattern";
    default:
      return "rejection";
  }
}

std::optional<Method> method_from_string(const std::string & s)
{
  if (s == "baseline") return Method::Baseline;
  if (s == "pattern") return Method::Pattern;
  if (s == "rejection") return Method::Rejection;
  return std::nullopt;
}

int heuristic_contribution(const ContextSnapshot & ctx, const HeuristicConfig & cfg)
{
  const bool red = ctx.state == LightState::Red;
  const bool in_stop_zone = ctx.distance < cfg.stop_zone_m;
  const bool in_slow_zone = ctx.distance < cfg.slow_zone_m;
  const bool held_past_red_reaction = ctx.state_duration > cfg.reaction_time_red_s;
  const bool held_past_green_reaction = ctx.state_duration > cfg.reaction_time_green_s;

  int sum = 0;
  bool matched = false;
  // Rows of a group are ordered most specific first; the first match wins
  // unless cumulative_rows sums every matching row.
  const auto row = [&](bool condition, int value) {
    if (condition && (cfg.cumulative_rows || !matched)) {
      sum += value;
      matched = true;
    }
  };

  switch (classify(ctx.speed, ctx.accel, cfg)) {
    case KinematicPattern::Stationary:
      if (red) {
        row(in_stop_zone, +2);
      } else {
        row(ctx.is_lead && held_past_green_reaction, -3);
        row(ctx.is_lead, -1);
      }
      break;
    case KinematicPattern::MovingSteady:
      if (red) {
        row(in_stop_zone && held_past_red_reaction, -3);
        row(in_slow_zone, -1);
      } else {
        row(in_stop_zone, +5);
        row(in_slow_zone, +3);
      }
      break;
    case KinematicPattern::AcceleratingFromStop:
      if (red) {
        row(in_stop_zone && ctx.turn_type != TurnType::RightTurn, -2);
      } else {
        row(in_slow_zone && held_past_red_reaction, +3);
      }
      break;
    case KinematicPattern::AcceleratingInMotion:
      if (red) {
        row(in_stop_zone && held_past_red_reaction, -3);
        row(in_slow_zone, -1);
      } else {
        row(in_slow_zone, +1);
      }
      break;
    case KinematicPattern::Braking:
      if (red) {
        row(in_slow_zone, +2);
      } else {
        row(in_stop_zone && ctx.is_lead && ctx.turn_type == TurnType::LeftTurn, -1);
        row(in_stop_zone && ctx.is_lead && ctx.turn_type == TurnType::Straight, -2);
      }
      break;
    case KinematicPattern::Other:
      break;
  }
  return sum;
}

namespace {

struct ObservationTimeline {
  std::vector<double> timestamps;
  std::vector<LightState> states;
  std::vector<double> durations;  // time the state has persisted at each obs

  // Index of the observation at exactly t, if any.
  std::optional<std::size_t> at(double t) const
  {
    const auto it = std::lower_bound(timestamps.begin(), timestamps.end(), t - kSamplePeriodTolerance);
    if (it == timestamps.end() || std::abs(*it - t) > kSamplePeriodTolerance) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - timestamps.begin());
  }

  // Index of the observation nearest to t within max_gap, if any.
  std::optional<std::size_t> nearest(double t, double max_gap) const
  {
    if (timestamps.empty()) {
      return std::nullopt;
    }
    const auto it = std::lower_bound(timestamps.begin(), timestamps.end(), t);
    std::optional<std::size_t> best;
    double best_gap = max_gap + kSamplePeriodTolerance;
    if (it != timestamps.end() && std::abs(*it - t) < best_gap) {
      best = static_cast<std::size_t>(it - timestamps.begin());
      best_gap = std::abs(*it - t);
    }
    if (it != timestamps.begin() && std::abs(*(it - 1) - t) < best_gap) {
      best = static_cast<std::size_t>(it - 1 - timestamps.begin());
    }
    return best;
  }
};

struct LocatedSample {
  std::size_t track_index;
  std::size_t lane_index;
  double timestamp;
  double distance;
  double speed;
  double accel;
  bool is_lead{false};
};

}  // namespace

EvidenceStore extract_scene_evidence(
  const Scene & scene, const RoadMap & map, const ExtractConfig & cfg)
{
  const LaneMatcher matcher(map);
  return extract_scene_evidence(scene, map, matcher, cfg);
}

EvidenceStore extract_scene_evidence(
  const Scene & scene, const RoadMap & map, const LaneMatcher & matcher,
  const ExtractConfig & cfg)
{
  validate(cfg.heuristic);
  validate(cfg.rejection);

  EvidenceStore delta;
  if (scene.tracks.empty()) {
    return delta;
  }

  std::unordered_map<std::string, std::size_t> lane_index_by_id;
  for (std::size_t i = 0; i < map.lanes.size(); ++i) {
    lane_index_by_id[map.lanes[i].id] = i;
  }

  std::unordered_map<std::string, ObservationTimeline> timelines;
  {
    std::vector<LightObservation> sorted = scene.light_observations;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto & a, const auto & b) {
      return a.light_id != b.light_id ? a.light_id < b.light_id : a.timestamp < b.timestamp;
    });
    for (const auto & obs : sorted) {
      ObservationTimeline & tl = timelines[obs.light_id];
      double run_start = obs.timestamp;
      if (!tl.states.empty() && tl.states.back() == obs.state) {
        run_start = tl.timestamps.back() - tl.durations.back();
      }
      tl.durations.push_back(obs.timestamp - run_start);
      tl.timestamps.push_back(obs.timestamp);
      tl.states.push_back(obs.state);
    }
  }

  // Locate every in-scope sample once; group by frame for lead detection.
  double t0 = scene.tracks.front().samples.empty()
                ? 0.0
                : scene.tracks.front().samples.front().timestamp;
  for (const auto & track : scene.tracks) {
    if (!track.samples.empty()) {
      t0 = std::min(t0, track.samples.front().timestamp);
    }
  }
  const auto frame_of = [&](double t) {
    return static_cast<std::int64_t>(std::llround((t - t0) / scene.sample_period));
  };

  std::map<std::int64_t, std::vector<LocatedSample>> frames;
  for (std::size_t ti = 0; ti < scene.tracks.size(); ++ti) {
    const VehicleTrack & track = scene.tracks[ti];
    if (cfg.scope == EvidenceScope::EgoOnly && !track.is_ego) {
      continue;
    }
    if (track.samples.size() < 3) {
      continue;
    }
    const auto kin = differentiate_track(track, cfg.kinematics);
    for (std::size_t si = 0; si < track.samples.size(); ++si) {
      const auto lane_id = matcher.locate(track.samples[si].position);
      if (!lane_id) {
        continue;
      }
      LocatedSample s;
      s.track_index = ti;
      s.lane_index = lane_index_by_id.at(*lane_id);
      s.timestamp = track.samples[si].timestamp;
      s.distance = matcher.distance_to_entry(track.samples[si].position, *lane_id);
      s.speed = kin[si].speed;
      s.accel = kin[si].accel;
      frames[frame_of(s.timestamp)].push_back(s);
    }
  }

  std::map<PairKey, std::int64_t> scene_sums;
  std::set<PairKey> active;
  std::set<std::pair<std::size_t, std::size_t>> passed;  // (track, lane) pairs

  for (auto & [frame, samples] : frames) {
    // Lead vehicle per lane: minimal distance; exact ties all lead.
    std::unordered_map<std::size_t, double> min_distance;
    for (const auto & s : samples) {
      const auto it = min_distance.find(s.lane_index);
      if (it == min_distance.end() || s.distance < it->second) {
        min_distance[s.lane_index] = s.distance;
      }
    }
    for (auto & s : samples) {
      s.is_lead = s.distance <= min_distance.at(s.lane_index);
    }

    for (const auto & s : samples) {
      const Lane & lane = map.lanes[s.lane_index];
      for (const auto & [light_id, timeline] : timelines) {
        const auto oi = timeline.at(s.timestamp);
        if (!oi) {
          continue;
        }
        const PairKey key{light_id, lane.id};
        delta.at_or_insert(key);  // co-observed even without usable evidence

        if (s.distance > cfg.heuristic.slow_zone_m) {
          continue;
        }
        ContextSnapshot ctx;
        ctx.vehicle_id = scene.tracks[s.track_index].vehicle_id;
        ctx.light_id = light_id;
        ctx.lane_id = lane.id;
        ctx.timestamp = s.timestamp;
        ctx.speed = s.speed;
        ctx.accel = s.accel;
        ctx.distance = s.distance;
        ctx.is_lead = s.is_lead;
        ctx.turn_type = lane.turn_type;
        ctx.state = timeline.states[*oi];
        ctx.state_duration = timeline.durations[*oi];
        scene_sums[key] += heuristic_contribution(ctx, cfg.heuristic);
        active.insert(key);
      }

      // Pass detection: crossing the entry band above the speed threshold.
      // Right-turn lanes use the higher threshold so that legal right turns
      // on red never count as trials.
      const double threshold_kmh = lane.turn_type == TurnType::RightTurn
                                     ? cfg.rejection.right_turn_pass_speed_kmh
                                     : cfg.rejection.pass_speed_kmh;
      if (s.distance < cfg.rejection.pass_distance_m &&
          s.speed > threshold_kmh * kKmhToMps) {
        const auto pass_key = std::make_pair(s.track_index, s.lane_index);
        if (passed.insert(pass_key).second) {
          for (const auto & [light_id, timeline] : timelines) {
            const auto oi = timeline.nearest(s.timestamp, scene.sample_period);
            if (!oi) {
              continue;  // unknown state: no Bernoulli trial
            }
            const PairKey key{light_id, lane.id};
            PairEvidence & ev = delta.at_or_insert(key);
            ev.pass_total += 1;
            if (timeline.states[*oi] == LightState::Red) {
              ev.red_pass_count += 1;
            }
            active.insert(key);
          }
        }
      }
    }
  }

  for (const auto & [key, sum] : scene_sums) {
    PairEvidence & ev = delta.at_or_insert(key);
    ev.contribution_total += sum;
    ev.contribution_abs_total += std::llabs(sum);
    if (sum > 0) {
      ev.votes_for += 1;
    } else {
      ev.votes_against += 1;
    }
  }
  for (const auto & key : active) {
    delta.at_or_insert(key).active_scenes += 1;
  }
  return delta;
}

std::vector<AssignmentPrediction> predict_baseline(
  const EvidenceStore & store, const RoadMap & map, const std::optional<ClassPrior> & prior)
{
  ClassPrior counts;
  if (prior) {
    counts = *prior;
  } else {
    // Training labels over the co-observed pairs; fall back to the full
    // ground truth when none of the store's pairs are labeled.
    for (const auto & [key, ev] : store.pairs()) {
      const auto it = map.ground_truth.find(key);
      if (it != map.ground_truth.end()) {
        (it->second == 1 ? counts.positives : counts.negatives) += 1;
      }
    }
    if (counts.positives + counts.negatives == 0) {
      for (const auto & [key, value] : map.ground_truth) {
        (value == 1 ? counts.positives : counts.negatives) += 1;
      }
    }
  }
  if (counts.positives + counts.negatives == 0) {
    throw MissingPrior("baseline needs ground-truth labels or a configured class prior");
  }

  // Ties resolve to the assignment class; false negatives cost more.
  const int label = counts.positives >= counts.negatives ? 1 : 0;
  const double fraction =
    static_cast<double>(std::max(counts.positives, counts.negatives)) /
    static_cast<double>(counts.positives + counts.negatives);

  std::vector<AssignmentPrediction> out;
  out.reserve(store.pairs().size());
  for (const auto & [key, ev] : store.pairs()) {
    AssignmentPrediction pred;
    pred.light_id = key.light_id;
    pred.lane_id = key.lane_id;
    pred.label = label;
    pred.confidence = fraction;
    pred.method = Method::Baseline;
    pred.evidence_count = ev.active_scenes;
    out.push_back(std::move(pred));
  }
  return out;
}

std::vector<AssignmentPrediction> predict_pattern(
  const EvidenceStore & store, const PatternOptions & options)
{
  std::vector<AssignmentPrediction> out;
  out.reserve(store.pairs().size());
  for (const auto & [key, ev] : store.pairs()) {
    AssignmentPrediction pred;
    pred.light_id = key.light_id;
    pred.lane_id = key.lane_id;
    pred.method = Method::Pattern;
    const std::int64_t votes = ev.votes_for + ev.votes_against;
    pred.evidence_count = votes;
    if (votes == 0) {
      pred.label = 1;  // no evidence: conservatively keep the assignment
      pred.confidence = 0.0;
    } else if (options.scene_majority) {
      pred.label = ev.votes_for >= ev.votes_against ? 1 : 0;
      pred.confidence =
        static_cast<double>(std::llabs(ev.votes_for - ev.votes_against)) /
        static_cast<double>(votes);
    } else {
      pred.label = ev.contribution_total > 0 ? 1 : 0;
      pred.confidence = ev.contribution_abs_total == 0
                          ? 0.0
                          : static_cast<double>(std::llabs(ev.contribution_total)) /
                              static_cast<double>(ev.contribution_abs_total);
    }
    out.push_back(std::move(pred));
  }
  return out;
}

std::vector<AssignmentPrediction> predict_rejection(
  const EvidenceStore & store, const RejectionConfig & cfg)
{
  validate(cfg);
  std::vector<AssignmentPrediction> out;
  out.reserve(store.pairs().size());
  for (const auto & [key, ev] : store.pairs()) {
    AssignmentPrediction pred;
    pred.light_id = key.light_id;
    pred.lane_id = key.lane_id;
    pred.method = Method::Rejection;
    pred.evidence_count = ev.pass_total;
    double p_value = 1.0;
    if (ev.pass_total > 0) {
      p_value = upper_tail_pvalue(ev.red_pass_count, ev.pass_total, cfg.p);
    }
    pred.label = p_value < cfg.alpha ? 0 : 1;
    pred.confidence = p_value;
    out.push_back(std::move(pred));
  }
  return out;
}

}  // namespace tl2la
