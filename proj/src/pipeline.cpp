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

#include "tl2la/pipeline.hpp"

#include <algorithm>
#include <thread>

#include "tl2la/geometry.hpp"

namespace tl2la {

EvidenceStore extract_corpus(
  const std::vector<Scene> & scenes, const RoadMap & map, const ExtractConfig & cfg,
  int workers)
{
  const LaneMatcher matcher(map);
  const int n = static_cast<int>(scenes.size());

  if (workers <= 1 || n < 2) {
    EvidenceStore store;
    for (const auto & scene : scenes) {
      store.merge(extract_scene_evidence(scene, map, matcher, cfg));
    }
    return store;
  }

  const int used = std::min(workers, n);
  std::vector<EvidenceStore> partial(used);
  std::vector<std::thread> pool;
  pool.reserve(used);
  const int chunk = (n + used - 1) / used;
  for (int w = 0; w < used; ++w) {
    const int begin = w * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin >= end) {
      continue;
    }
    pool.emplace_back([&, w, begin, end]() {
      for (int i = begin; i < end; ++i) {
        partial[w].merge(extract_scene_evidence(scenes[i], map, matcher, cfg));
      }
    });
  }
  for (auto & t : pool) {
    t.join();
  }
  EvidenceStore store;
  for (const auto & p : partial) {
    store.merge(p);
  }
  return store;
}

std::vector<AssignmentPrediction> run_method(
  const std::vector<Scene> & scenes, const RoadMap & map, Method method,
  const ExtractConfig & cfg, int workers, const PatternOptions & pattern_options)
{
  const EvidenceStore store = extract_corpus(scenes, map, cfg, workers);
  switch (method) {
    case Method::Baseline:
      return predict_baseline(store, map);
    case Method::Pattern:
      return predict_pattern(store, pattern_options);
    default:
      return predict_rejection(store, cfg.rejection);
  }
}

}  // namespace tl2la
