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

#ifndef TL2LA_EVAL_HPP_
#define TL2LA_EVAL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tl2la/core.hpp"
#include "tl2la/methods.hpp"

namespace tl2la {

struct ConfusionCounts {
  std::int64_t tp{0};
  std::int64_t fp{0};
  std::int64_t tn{0};
  std::int64_t fn{0};

  std::int64_t total() const { return tp + fp + tn + fn; }
};

/// Ratio metrics; a metric is absent (not zero) when its denominator is zero.
struct Metrics {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

struct PairOutcome {
  std::string light_id;
  std::string lane_id;
  int truth{0};
  int label{0};
  double confidence{0.0};
  Method method{Method::Rejection};
  std::int64_t evidence_count{0};
  bool correct{false};
};

struct EvaluationReport {
  ConfusionCounts confusion;
  Metrics metrics;
  std::vector<PairOutcome> pairs;  // sorted by (light_id, lane_id)
};

struct ScoreOptions {
  /// When false, pairs predicted only by the zero-evidence default are
  /// dropped before scoring.
  bool include_defaults{true};
};

Metrics metrics_from_counts(const ConfusionCounts & counts);

/// Scores predictions against the ground truth. Throws UnknownPair when a
/// prediction has no label.
EvaluationReport score(
  const std::vector<AssignmentPrediction> & predictions,
  const std::map<PairKey, int> & ground_truth, const ScoreOptions & options = {});

struct SaturationPoint {
  std::int64_t scene_count{0};
  Metrics metrics;
  std::int64_t classified_pair_count{0};
};

struct SaturationSeries {
  Method method{Method::Rejection};
  std::vector<SaturationPoint> points;
};

/// Re-runs the chosen method on growing scene prefixes. Only pairs
/// co-observed within the prefix are scored at each checkpoint.
SaturationSeries saturation_curve(
  const std::vector<Scene> & scenes, const RoadMap & map, Method method,
  const std::vector<std::int64_t> & checkpoints, const ExtractConfig & cfg = {},
  int workers = 1);

}  // namespace tl2la

#endif  // TL2LA_EVAL_HPP_
