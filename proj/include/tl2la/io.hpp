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

#ifndef TL2LA_IO_HPP_
#define TL2LA_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "tl2la/core.hpp"
#include "tl2la/eval.hpp"
#include "tl2la/methods.hpp"
#include "tl2la/simulator.hpp"
#include "tl2la/transform.hpp"

namespace tl2la {

inline constexpr int kFormatVersion = 1;

// Map files hold one JSON object with `lanes`, `lights` and `ground_truth`
// arrays; scene files are newline-delimited JSON, one scene per line.
// Throws ParseError on schema mismatch.

std::string map_to_json(const RoadMap & map);
RoadMap map_from_json(const std::string & text);
void save_map(const RoadMap & map, const std::string & path);
RoadMap load_map(const std::string & path);

std::string scene_to_json_line(const Scene & scene);
Scene scene_from_json_line(const std::string & line);
void save_scenes(const std::vector<Scene> & scenes, const std::string & path);
std::vector<Scene> load_scenes(const std::string & path);

std::string prediction_to_json_line(const AssignmentPrediction & prediction);
AssignmentPrediction prediction_from_json_line(const std::string & line);
void save_predictions(const std::vector<AssignmentPrediction> & predictions, const std::string & path);
std::vector<AssignmentPrediction> load_predictions(const std::string & path);

std::string report_to_json(const EvaluationReport & report);
void save_report(const EvaluationReport & report, const std::string & path);

std::string saturation_to_ndjson(const SaturationSeries & series);

std::string scenario_config_to_json(const ScenarioConfig & config);
ScenarioConfig scenario_config_from_json(const std::string & text);
ScenarioConfig load_scenario_config(const std::string & path);

std::string corpus_stats_to_json(const CorpusStats & stats);

void write_text_file(const std::string & path, const std::string & content);
std::string read_text_file(const std::string & path);

}  // namespace tl2la

#endif  // TL2LA_IO_HPP_
