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

#ifndef TL2LA_PIPELINE_HPP_
#define TL2LA_PIPELINE_HPP_

#include <vector>

#include "tl2la/core.hpp"
#include "tl2la/methods.hpp"

namespace tl2la {

/// Scene-parallel evidence extraction. Workers process contiguous scene
/// chunks against a shared matcher; the per-scene deltas merge by the
/// commutative store addition, so any worker count yields the same store.
EvidenceStore extract_corpus(
  const std::vector<Scene> & scenes, const RoadMap & map, const ExtractConfig & cfg,
  int workers = 1);

/// Full prediction pass over a prepared corpus with the chosen method.
std::vector<AssignmentPrediction> run_method(
  const std::vector<Scene> & scenes, const RoadMap & map, Method method,
  const ExtractConfig & cfg, int workers = 1, const PatternOptions & pattern_options = {});

}  // namespace tl2la

#endif  // TL2LA_PIPELINE_HPP_
