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

#include "tl2la/eval.hpp"

#include <algorithm>

#include "tl2la/errors.hpp"
#include "tl2la/pipeline.hpp"

namespace tl2la {

Metrics metrics_from_counts(const ConfusionCounts & c)
{
  Metrics m;
  if (c.total() > 0) {
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  }
  if (c.tp + c.fp > 0) {
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (c.tp + c.fn > 0) {
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  if (m.precision && m.recall && (*m.precision + *m.recall) > 0.0) {
    m.f1 = 2.0 * (*m.precision) * (*m.recall) / (*m.precision + *m.recall);
  }
  return m;
}

EvaluationReport score(
  const std::vector<AssignmentPrediction> & predictions,
  const std::map<PairKey, int> & ground_truth, const ScoreOptions & options)
{
  EvaluationReport report;
  report.pairs.reserve(predictions.size());

  for (const auto & pred : predictions) {
    if (!options.include_defaults && pred.evidence_count == 0) {
      continue;
    }
    const auto it = ground_truth.find(PairKey{pred.light_id, pred.lane_id});
    if (it == ground_truth.end()) {
      throw UnknownPair(
        "no ground truth for pair (" + pred.light_id + ", " + pred.lane_id + ")");
    }
    const int truth = it->second;
    if (truth == 1) {
      (pred.label == 1 ? report.confusion.tp : report.confusion.fn) += 1;
    } else {
      (pred.label == 0 ? report.confusion.tn : report.confusion.fp) += 1;
    }
    PairOutcome outcome;
    outcome.light_id = pred.light_id;
    outcome.lane_id = pred.lane_id;
    outcome.truth = truth;
    outcome.label = pred.label;
    outcome.confidence = pred.confidence;
    outcome.method = pred.method;
    outcome.evidence_count = pred.evidence_count;
    outcome.correct = pred.label == truth;
    report.pairs.push_back(std::move(outcome));
  }

  std::sort(report.pairs.begin(), report.pairs.end(), [](const auto & a, const auto & b) {
    return a.light_id != b.light_id ? a.light_id < b.light_id : a.lane_id < b.lane_id;
  });
  report.metrics = metrics_from_counts(report.confusion);
  return report;
}

SaturationSeries saturation_curve(
  const std::vector<Scene> & scenes, const RoadMap & map, Method method,
  const std::vector<std::int64_t> & checkpoints, const ExtractConfig & cfg, int workers)
{
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) {
      throw DomainError("saturation checkpoints must be strictly increasing");
    }
  }

  SaturationSeries series;
  series.method = method;
  for (const std::int64_t checkpoint : checkpoints) {
    const std::size_t count =
      std::min<std::size_t>(scenes.size(), static_cast<std::size_t>(std::max<std::int64_t>(checkpoint, 0)));
    const std::vector<Scene> prefix(scenes.begin(), scenes.begin() + count);
    const auto predictions = run_method(prefix, map, method, cfg, workers);

    SaturationPoint point;
    point.scene_count = static_cast<std::int64_t>(count);
    point.classified_pair_count = static_cast<std::int64_t>(predictions.size());
    point.metrics = score(predictions, map.ground_truth).metrics;
    series.points.push_back(point);
  }
  return series;
}

}  // namespace tl2la
