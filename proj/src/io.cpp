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

#include "tl2la/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tl2la/errors.hpp"
#include "tl2la/transform.hpp"

namespace tl2la {

using nlohmann::json;

namespace {

json vec2_to_json(const Vec2 & p) { return json::array({p.x, p.y}); }

Vec2 vec2_from_json(const json & j)
{
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("expected a point as [x, y]");
  }
  return Vec2{j[0].get<double>(), j[1].get<double>()};
}

json boundary_to_json(const std::vector<Vec2> & boundary)
{
  json arr = json::array();
  for (const auto & p : boundary) {
    arr.push_back(vec2_to_json(p));
  }
  return arr;
}

std::vector<Vec2> boundary_from_json(const json & j)
{
  std::vector<Vec2> out;
  for (const auto & p : j) {
    out.push_back(vec2_from_json(p));
  }
  return out;
}

void check_version(const json & j, const std::string & what)
{
  if (!j.contains("format_version") || j["format_version"].get<int>() != kFormatVersion) {
    throw ParseError(what + ": missing or unsupported format_version");
  }
}

template <typename Fn>
auto guarded(const std::string & what, Fn && fn)
{
  try {
    return fn();
  } catch (const json::exception & e) {
    throw ParseError(what + ": " + e.what());
  }
}

}  // namespace

std::string map_to_json(const RoadMap & map)
{
  json j;
  j["format_version"] = kFormatVersion;
  j["lanes"] = json::array();
  for (const auto & lane : map.lanes) {
    json l;
    l["id"] = lane.id;
    l["turn_type"] = to_string(lane.turn_type);
    l["left_boundary"] = boundary_to_json(lane.left_boundary);
    l["right_boundary"] = boundary_to_json(lane.right_boundary);
    l["successor_ids"] = lane.successor_ids;
    l["entry_point"] = vec2_to_json(lane.entry_point);
    j["lanes"].push_back(std::move(l));
  }
  j["lights"] = json::array();
  for (const auto & light : map.lights) {
    j["lights"].push_back({{"id", light.id}, {"intersection_id", light.intersection_id}});
  }
  j["ground_truth"] = json::array();
  for (const auto & [pair, value] : map.ground_truth) {
    j["ground_truth"].push_back(
      {{"light_id", pair.light_id}, {"lane_id", pair.lane_id}, {"assigned", value}});
  }
  return j.dump();
}

RoadMap map_from_json(const std::string & text)
{
  return guarded("map", [&]() {
    const json j = json::parse(text);
    check_version(j, "map");
    RoadMap map;
    for (const auto & l : j.at("lanes")) {
      Lane lane;
      lane.id = l.at("id").get<std::string>();
      const auto turn = turn_type_from_string(l.at("turn_type").get<std::string>());
      if (!turn) {
        throw ParseError("lane " + lane.id + ": unknown turn_type");
      }
      lane.turn_type = *turn;
      lane.left_boundary = boundary_from_json(l.at("left_boundary"));
      lane.right_boundary = boundary_from_json(l.at("right_boundary"));
      if (l.contains("successor_ids")) {
        lane.successor_ids = l.at("successor_ids").get<std::vector<std::string>>();
      }
      lane.entry_point = vec2_from_json(l.at("entry_point"));
      map.lanes.push_back(std::move(lane));
    }
    for (const auto & s : j.at("lights")) {
      map.lights.push_back(
        TrafficLight{s.at("id").get<std::string>(), s.at("intersection_id").get<std::string>()});
    }
    if (j.contains("ground_truth")) {
      for (const auto & g : j.at("ground_truth")) {
        map.ground_truth[PairKey{
          g.at("light_id").get<std::string>(), g.at("lane_id").get<std::string>()}] =
          g.at("assigned").get<int>();
      }
    }
    return map;
  });
}

std::string scene_to_json_line(const Scene & scene)
{
  json j;
  j["format_version"] = kFormatVersion;
  j["scene_id"] = scene.scene_id;
  j["sample_period"] = scene.sample_period;
  j["tracks"] = json::array();
  for (const auto & track : scene.tracks) {
    json t;
    t["vehicle_id"] = track.vehicle_id;
    t["is_ego"] = track.is_ego;
    json samples = json::array();
    for (const auto & s : track.samples) {
      samples.push_back(json::array({s.timestamp, s.position.x, s.position.y}));
    }
    t["samples"] = std::move(samples);
    j["tracks"].push_back(std::move(t));
  }
  j["light_observations"] = json::array();
  for (const auto & obs : scene.light_observations) {
    j["light_observations"].push_back(
      {{"light_id", obs.light_id},
       {"timestamp", obs.timestamp},
       {"state", to_string(obs.state)}});
  }
  return j.dump();
}

Scene scene_from_json_line(const std::string & line)
{
  return guarded("scene", [&]() {
    const json j = json::parse(line);
    check_version(j, "scene");
    Scene scene;
    scene.scene_id = j.at("scene_id").get<std::string>();
    scene.sample_period = j.at("sample_period").get<double>();
    for (const auto & t : j.at("tracks")) {
      VehicleTrack track;
      track.vehicle_id = t.at("vehicle_id").get<std::string>();
      track.is_ego = t.at("is_ego").get<bool>();
      for (const auto & s : t.at("samples")) {
        if (!s.is_array() || s.size() != 3) {
          throw ParseError("track sample must be [t, x, y]");
        }
        track.samples.push_back(
          TrackSample{s[0].get<double>(), Vec2{s[1].get<double>(), s[2].get<double>()}});
      }
      scene.tracks.push_back(std::move(track));
    }
    for (const auto & o : j.at("light_observations")) {
      const auto state = light_state_from_string(o.at("state").get<std::string>());
      if (!state) {
        throw ParseError("unknown light state " + o.at("state").get<std::string>());
      }
      scene.light_observations.push_back(LightObservation{
        o.at("light_id").get<std::string>(), o.at("timestamp").get<double>(), *state});
    }
    return scene;
  });
}

void save_scenes(const std::vector<Scene> & scenes, const std::string & path)
{
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  for (const auto & scene : scenes) {
    out << scene_to_json_line(scene) << '\n';
  }
}

std::vector<Scene> load_scenes(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read " + path);
  }
  std::vector<Scene> scenes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    try {
      scenes.push_back(scene_from_json_line(line));
    } catch (const ParseError & e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return scenes;
}

void save_map(const RoadMap & map, const std::string & path)
{
  write_text_file(path, map_to_json(map) + "\n");
}

RoadMap load_map(const std::string & path)
{
  return map_from_json(read_text_file(path));
}

std::string prediction_to_json_line(const AssignmentPrediction & prediction)
{
  json j;
  j["light_id"] = prediction.light_id;
  j["lane_id"] = prediction.lane_id;
  j["label"] = prediction.label;
  j["confidence"] = prediction.confidence;
  j["method"] = to_string(prediction.method);
  j["evidence_count"] = prediction.evidence_count;
  return j.dump();
}

AssignmentPrediction prediction_from_json_line(const std::string & line)
{
  return guarded("prediction", [&]() {
    const json j = json::parse(line);
    AssignmentPrediction p;
    p.light_id = j.at("light_id").get<std::string>();
    p.lane_id = j.at("lane_id").get<std::string>();
    p.label = j.at("label").get<int>();
    p.confidence = j.at("confidence").get<double>();
    const auto method = method_from_string(j.at("method").get<std::string>());
    if (!method) {
      throw ParseError("unknown method " + j.at("method").get<std::string>());
    }
    p.method = *method;
    p.evidence_count = j.at("evidence_count").get<std::int64_t>();
    return p;
  });
}

void save_predictions(
  const std::vector<AssignmentPrediction> & predictions, const std::string & path)
{
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  for (const auto & p : predictions) {
    out << prediction_to_json_line(p) << '\n';
  }
}

std::vector<AssignmentPrediction> load_predictions(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read " + path);
  }
  std::vector<AssignmentPrediction> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      out.push_back(prediction_from_json_line(line));
    }
  }
  return out;
}

namespace {

json metrics_to_json(const Metrics & m)
{
  const auto opt = [](const std::optional<double> & v) {
    return v ? json(*v) : json(nullptr);
  };
  return {
    {"accuracy", opt(m.accuracy)},
    {"precision", opt(m.precision)},
    {"recall", opt(m.recall)},
    {"f1", opt(m.f1)}};
}

}  // namespace

std::string report_to_json(const EvaluationReport & report)
{
  json j;
  j["format_version"] = kFormatVersion;
  j["pairs_scored"] = report.confusion.total();
  j["confusion"] = {
    {"tp", report.confusion.tp},
    {"fp", report.confusion.fp},
    {"tn", report.confusion.tn},
    {"fn", report.confusion.fn}};
  j["metrics"] = metrics_to_json(report.metrics);
  j["pairs"] = json::array();
  for (const auto & pair : report.pairs) {
    j["pairs"].push_back(
      {{"light_id", pair.light_id},
       {"lane_id", pair.lane_id},
       {"truth", pair.truth},
       {"label", pair.label},
       {"confidence", pair.confidence},
       {"method", to_string(pair.method)},
       {"evidence_count", pair.evidence_count},
       {"correct", pair.correct}});
  }
  return j.dump(2);
}

void save_report(const EvaluationReport & report, const std::string & path)
{
  write_text_file(path, report_to_json(report) + "\n");
}

std::string saturation_to_ndjson(const SaturationSeries & series)
{
  std::ostringstream out;
  for (const auto & point : series.points) {
    json j;
    j["method"] = to_string(series.method);
    j["scene_count"] = point.scene_count;
    j["classified_pair_count"] = point.classified_pair_count;
    j["metrics"] = metrics_to_json(point.metrics);
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string scenario_config_to_json(const ScenarioConfig & config)
{
  json j;
  j["format_version"] = kFormatVersion;
  j["seed"] = config.seed;
  j["branches"] = json::array();
  for (const auto & branch : config.branches) {
    json lanes = json::array();
    for (const auto & lane : branch.lanes) {
      lanes.push_back(to_string(lane.turn));
    }
    j["branches"].push_back({{"lanes", std::move(lanes)}});
  }
  j["lights"] = json::array();
  for (const auto & light : config.lights) {
    j["lights"].push_back(
      {{"id", light.id},
       {"branch", light.branch},
       {"governed_lanes", light.governed_lanes},
       {"green_s", light.phase.green_s},
       {"red_s", light.phase.red_s},
       {"offset_s", light.phase.offset_s}});
  }
  j["arrival_rate_vpm"] = config.arrival_rate_vpm;
  j["compliance_rate"] = config.compliance_rate;
  j["right_turn_on_red_rate"] = config.right_turn_on_red_rate;
  j["detection_noise"] = config.detection_noise;
  j["cross_branch_track_rate"] = config.cross_branch_track_rate;
  j["scene_duration_s"] = config.scene_duration_s;
  j["sample_period_s"] = config.sample_period_s;
  j["scene_count"] = config.scene_count;
  j["ego_driver"] = config.ego_driver;
  return j.dump(2);
}

ScenarioConfig scenario_config_from_json(const std::string & text)
{
  return guarded("scenario config", [&]() {
    const json j = json::parse(text);
    check_version(j, "scenario config");
    ScenarioConfig config;
    config.seed = j.at("seed").get<std::uint64_t>();
    for (const auto & b : j.at("branches")) {
      BranchSpec branch;
      for (const auto & lane : b.at("lanes")) {
        const auto turn = turn_type_from_string(lane.get<std::string>());
        if (!turn) {
          throw ParseError("unknown turn type " + lane.get<std::string>());
        }
        branch.lanes.push_back(LaneSpec{*turn});
      }
      config.branches.push_back(std::move(branch));
    }
    for (const auto & s : j.at("lights")) {
      LightSpec light;
      light.id = s.at("id").get<std::string>();
      light.branch = s.at("branch").get<int>();
      light.governed_lanes = s.at("governed_lanes").get<std::vector<int>>();
      light.phase.green_s = s.at("green_s").get<double>();
      light.phase.red_s = s.at("red_s").get<double>();
      light.phase.offset_s = s.value("offset_s", 0.0);
      config.lights.push_back(std::move(light));
    }
    config.arrival_rate_vpm = j.value("arrival_rate_vpm", config.arrival_rate_vpm);
    config.compliance_rate = j.value("compliance_rate", config.compliance_rate);
    config.right_turn_on_red_rate =
      j.value("right_turn_on_red_rate", config.right_turn_on_red_rate);
    config.detection_noise = j.value("detection_noise", config.detection_noise);
    config.cross_branch_track_rate =
      j.value("cross_branch_track_rate", config.cross_branch_track_rate);
    config.scene_duration_s = j.value("scene_duration_s", config.scene_duration_s);
    config.sample_period_s = j.value("sample_period_s", config.sample_period_s);
    config.scene_count = j.value("scene_count", config.scene_count);
    config.ego_driver = j.value("ego_driver", config.ego_driver);
    return config;
  });
}

ScenarioConfig load_scenario_config(const std::string & path)
{
  return scenario_config_from_json(read_text_file(path));
}

std::string corpus_stats_to_json(const CorpusStats & stats)
{
  json j;
  j["format_version"] = kFormatVersion;
  j["scene_count"] = stats.scene_count;
  j["scene_duration_s"] = stats.scene_duration_s;
  j["unique_roadway_km"] = stats.unique_roadway_km;
  j["density_s_per_km"] = stats.density_s_per_km;
  j["total_time_h"] = stats.total_time_h;
  return j.dump();
}

void write_text_file(const std::string & path, const std::string & content)
{
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << content;
}

std::string read_text_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace tl2la
