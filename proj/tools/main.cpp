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

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tl2la/errors.hpp"
#include "tl2la/eval.hpp"
#include "tl2la/io.hpp"
#include "tl2la/pipeline.hpp"
#include "tl2la/simulator.hpp"
#include "tl2la/transform.hpp"
#include "tl2la/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::uint64_t fnv1a(const std::string & text)
{
  std::uint64_t hash = 1469598103934665603ULL;
  for (const char c : text) {
    hash ^= static_cast<std::uint8_t>(c);
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value)
{
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

int default_workers()
{
  if (const char * env = std::getenv("TL2LA_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) {
      return parsed;
    }
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

class ManifestWriter {
public:
  ManifestWriter(std::string command, std::string config_digest_source)
  : command_(std::move(command)),
    digest_("fnv1a:" + hex64(fnv1a(config_digest_source))),
    start_(std::chrono::steady_clock::now())
  {
  }

  void add_input(const std::string & name, const std::string & path) { inputs_[name] = path; }
  void add_output(const std::string & name, const std::string & path) { outputs_[name] = path; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  void write(const std::string & path) const
  {
    json j;
    j["format_version"] = 1;
    j["command"] = command_;
    j["tool_version"] = tl2la::kToolVersion;
    j["config_digest"] = digest_;
    if (seed_) {
      j["seed"] = *seed_;
    }
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    j["wall_time_s"] = std::chrono::duration<double>(elapsed).count();
    tl2la::write_text_file(path, j.dump(2) + "\n");
  }

private:
  std::string command_;
  std::string digest_;
  std::optional<std::uint64_t> seed_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

int fail(const std::string & message)
{
  std::cerr << "error: " << message << std::endl;
  return kExitFailure;
}

int check_map_and_scenes(const tl2la::RoadMap & map, const std::vector<tl2la::Scene> & scenes)
{
  const auto map_violations = tl2la::validate_map(map);
  if (!map_violations.empty()) {
    return fail("invalid map: " + map_violations.front());
  }
  for (const auto & scene : scenes) {
    const auto violations = tl2la::validate_scene(scene, map);
    if (!violations.empty()) {
      return fail("invalid scene " + scene.scene_id + ": " + violations.front());
    }
  }
  return kExitOk;
}

struct PredictOptions {
  std::string map_path;
  std::string scenes_path;
  std::string out_path{"predictions.ndjson"};
  std::string method{"rejection"};
  std::string scope{"all"};
  std::string config_path;
  int workers{default_workers()};
  bool global_sum{false};
  bool cumulative_rows{false};
  bool median_prefilter{false};
  // Threshold overrides; NaN means "keep the configured default".
  double stop_zone{-1.0}, slow_zone{-1.0}, reaction_red{-1.0}, reaction_green{-1.0};
  double vel_threshold{-1.0}, acc_threshold{-1.0};
  double pass_distance{-1.0}, pass_speed{-1.0}, right_turn_pass_speed{-1.0};
  double p{-1.0}, alpha{-1.0};
};

void apply_method_config(tl2la::ExtractConfig & cfg, const std::string & path)
{
  const json j = json::parse(tl2la::read_text_file(path));
  if (j.contains("heuristic")) {
    const json & h = j["heuristic"];
    auto & hc = cfg.heuristic;
    hc.stop_zone_m = h.value("stop_zone_m", hc.stop_zone_m);
    hc.slow_zone_m = h.value("slow_zone_m", hc.slow_zone_m);
    hc.reaction_time_red_s = h.value("reaction_time_red_s", hc.reaction_time_red_s);
    hc.reaction_time_green_s = h.value("reaction_time_green_s", hc.reaction_time_green_s);
    hc.vel_threshold_mps = h.value("vel_threshold_mps", hc.vel_threshold_mps);
    hc.acc_threshold_mps2 = h.value("acc_threshold_mps2", hc.acc_threshold_mps2);
    hc.cumulative_rows = h.value("cumulative_rows", hc.cumulative_rows);
  }
  if (j.contains("rejection")) {
    const json & r = j["rejection"];
    auto & rc = cfg.rejection;
    rc.pass_distance_m = r.value("pass_distance_m", rc.pass_distance_m);
    rc.pass_speed_kmh = r.value("pass_speed_kmh", rc.pass_speed_kmh);
    rc.right_turn_pass_speed_kmh =
      r.value("right_turn_pass_speed_kmh", rc.right_turn_pass_speed_kmh);
    rc.p = r.value("p", rc.p);
    rc.alpha = r.value("alpha", rc.alpha);
  }
}

tl2la::ExtractConfig build_extract_config(const PredictOptions & opt)
{
  tl2la::ExtractConfig cfg;
  if (!opt.config_path.empty()) {
    apply_method_config(cfg, opt.config_path);
  }
  const auto set = [](double & target, double value) {
    if (value >= 0.0) {
      target = value;
    }
  };
  set(cfg.heuristic.stop_zone_m, opt.stop_zone);
  set(cfg.heuristic.slow_zone_m, opt.slow_zone);
  set(cfg.heuristic.reaction_time_red_s, opt.reaction_red);
  set(cfg.heuristic.reaction_time_green_s, opt.reaction_green);
  set(cfg.heuristic.vel_threshold_mps, opt.vel_threshold);
  set(cfg.heuristic.acc_threshold_mps2, opt.acc_threshold);
  set(cfg.rejection.pass_distance_m, opt.pass_distance);
  set(cfg.rejection.pass_speed_kmh, opt.pass_speed);
  set(cfg.rejection.right_turn_pass_speed_kmh, opt.right_turn_pass_speed);
  set(cfg.rejection.p, opt.p);
  set(cfg.rejection.alpha, opt.alpha);
  if (opt.cumulative_rows) {
    cfg.heuristic.cumulative_rows = true;
  }
  if (opt.median_prefilter) {
    cfg.kinematics.median_prefilter = true;
  }
  cfg.scope = opt.scope == "ego" ? tl2la::EvidenceScope::EgoOnly
                                 : tl2la::EvidenceScope::AllVehicles;
  tl2la::validate(cfg.heuristic);
  tl2la::validate(cfg.rejection);
  return cfg;
}

std::string extract_config_digest_source(const PredictOptions & opt, const tl2la::ExtractConfig & cfg)
{
  json j;
  j["method"] = opt.method;
  j["scope"] = opt.scope;
  j["global_sum"] = opt.global_sum;
  j["heuristic"] = {
    {"stop_zone_m", cfg.heuristic.stop_zone_m},
    {"slow_zone_m", cfg.heuristic.slow_zone_m},
    {"reaction_time_red_s", cfg.heuristic.reaction_time_red_s},
    {"reaction_time_green_s", cfg.heuristic.reaction_time_green_s},
    {"vel_threshold_mps", cfg.heuristic.vel_threshold_mps},
    {"acc_threshold_mps2", cfg.heuristic.acc_threshold_mps2},
    {"cumulative_rows", cfg.heuristic.cumulative_rows}};
  j["rejection"] = {
    {"pass_distance_m", cfg.rejection.pass_distance_m},
    {"pass_speed_kmh", cfg.rejection.pass_speed_kmh},
    {"right_turn_pass_speed_kmh", cfg.rejection.right_turn_pass_speed_kmh},
    {"p", cfg.rejection.p},
    {"alpha", cfg.rejection.alpha}};
  j["median_prefilter"] = cfg.kinematics.median_prefilter;
  return j.dump();
}

int run_simulate(
  const std::string & preset_name, const std::string & config_path, const std::string & out_dir,
  std::optional<std::uint64_t> seed, std::optional<int> scene_count,
  std::optional<double> compliance, std::optional<double> noise, std::optional<double> arrival,
  std::optional<double> cross_rate, bool ego_driver, int workers)
{
  tl2la::ScenarioConfig config;
  if (!config_path.empty()) {
    config = tl2la::load_scenario_config(config_path);
  } else {
    const auto p = tl2la::preset_from_string(preset_name);
    if (!p) {
      return fail("unknown preset " + preset_name);
    }
    config = tl2la::preset(*p);
  }
  if (seed) config.seed = *seed;
  if (scene_count) config.scene_count = *scene_count;
  if (compliance) config.compliance_rate = *compliance;
  if (noise) config.detection_noise = *noise;
  if (arrival) config.arrival_rate_vpm = *arrival;
  if (cross_rate) config.cross_branch_track_rate = *cross_rate;
  if (ego_driver) config.ego_driver = true;

  tl2la::validate(config);
  std::filesystem::create_directories(out_dir);

  const std::string config_json = tl2la::scenario_config_to_json(config);
  ManifestWriter manifest("simulate", config_json);
  manifest.set_seed(config.seed);

  const auto corpus = tl2la::generate(config, workers);
  const std::string map_path = out_dir + "/map.json";
  const std::string scenes_path = out_dir + "/scenes.ndjson";
  const std::string config_out = out_dir + "/config.json";
  tl2la::save_map(corpus.map, map_path);
  tl2la::save_scenes(corpus.scenes, scenes_path);
  tl2la::write_text_file(config_out, config_json + "\n");

  manifest.add_output("map", map_path);
  manifest.add_output("scenes", scenes_path);
  manifest.add_output("config", config_out);
  manifest.write(out_dir + "/simulate.manifest.json");
  std::cout << "wrote " << corpus.scenes.size() << " scenes to " << scenes_path << std::endl;
  return kExitOk;
}

int run_transform(
  const std::string & map_path, const std::string & scenes_path, const std::string & out_dir,
  double depth, double max_distance)
{
  const auto map = tl2la::load_map(map_path);
  const auto scenes = tl2la::load_scenes(scenes_path);
  if (const int rc = check_map_and_scenes(map, scenes); rc != kExitOk) {
    return rc;
  }

  ManifestWriter manifest(
    "transform", "depth=" + std::to_string(depth) + ",max_distance=" + std::to_string(max_distance));
  manifest.add_input("map", map_path);
  manifest.add_input("scenes", scenes_path);

  const auto prepared = tl2la::build_lane_sequences(map, depth);
  std::vector<tl2la::Scene> filtered;
  filtered.reserve(scenes.size());
  for (const auto & scene : scenes) {
    filtered.push_back(tl2la::proximity_filter(scene, prepared, max_distance));
  }

  double duration = 0.0;
  for (const auto & scene : scenes) {
    if (!scene.tracks.empty() && !scene.tracks.front().samples.empty()) {
      duration = std::max(
        duration, scene.tracks.front().samples.back().timestamp + scene.sample_period);
    }
  }
  std::filesystem::create_directories(out_dir);
  const std::string prepared_map_path = out_dir + "/prepared_map.json";
  const std::string prepared_scenes_path = out_dir + "/prepared_scenes.ndjson";
  const std::string stats_path = out_dir + "/stats.json";
  tl2la::save_map(prepared, prepared_map_path);
  tl2la::save_scenes(filtered, prepared_scenes_path);
  if (!scenes.empty() && duration > 0.0) {
    const auto stats = tl2la::corpus_stats(
      static_cast<std::int64_t>(scenes.size()), duration, tl2la::unique_roadway_km(prepared));
    tl2la::write_text_file(stats_path, tl2la::corpus_stats_to_json(stats) + "\n");
    manifest.add_output("stats", stats_path);
  }

  manifest.add_output("prepared_map", prepared_map_path);
  manifest.add_output("prepared_scenes", prepared_scenes_path);
  manifest.write(out_dir + "/transform.manifest.json");
  std::cout << "prepared " << prepared.lanes.size() << " lane sequences" << std::endl;
  return kExitOk;
}

int run_predict(const PredictOptions & opt)
{
  const auto method = tl2la::method_from_string(opt.method);
  if (!method) {
    return fail("unknown method " + opt.method);
  }
  const auto map = tl2la::load_map(opt.map_path);
  const auto scenes = tl2la::load_scenes(opt.scenes_path);
  if (const int rc = check_map_and_scenes(map, scenes); rc != kExitOk) {
    return rc;
  }

  const auto cfg = build_extract_config(opt);
  ManifestWriter manifest("predict", extract_config_digest_source(opt, cfg));
  manifest.add_input("map", opt.map_path);
  manifest.add_input("scenes", opt.scenes_path);

  tl2la::PatternOptions pattern_options;
  pattern_options.scene_majority = !opt.global_sum;
  const auto predictions =
    tl2la::run_method(scenes, map, *method, cfg, opt.workers, pattern_options);
  tl2la::save_predictions(predictions, opt.out_path);

  manifest.add_output("predictions", opt.out_path);
  manifest.write(opt.out_path + ".manifest.json");
  std::cout << "predicted " << predictions.size() << " pairs" << std::endl;
  return kExitOk;
}

int run_evaluate(
  const std::string & map_path, const std::string & predictions_path, const std::string & out_path,
  const std::string & format, bool exclude_defaults)
{
  const auto map = tl2la::load_map(map_path);
  const auto predictions = tl2la::load_predictions(predictions_path);

  tl2la::ScoreOptions options;
  options.include_defaults = !exclude_defaults;
  const auto report = tl2la::score(predictions, map.ground_truth, options);

  ManifestWriter manifest("evaluate", format + (exclude_defaults ? ":no-defaults" : ""));
  manifest.add_input("map", map_path);
  manifest.add_input("predictions", predictions_path);
  tl2la::save_report(report, out_path);
  manifest.add_output("report", out_path);
  manifest.write(out_path + ".manifest.json");

  const auto show = [](const std::optional<double> & v) {
    return v ? std::to_string(*v) : std::string("n/a");
  };
  if (format == "ndjson") {
    for (const auto & pair : report.pairs) {
      json j;
      j["light_id"] = pair.light_id;
      j["lane_id"] = pair.lane_id;
      j["truth"] = pair.truth;
      j["label"] = pair.label;
      j["confidence"] = pair.confidence;
      j["correct"] = pair.correct;
      std::cout << j.dump() << '\n';
    }
  } else {
    std::cout << "pairs scored: " << report.confusion.total() << '\n'
              << "tp=" << report.confusion.tp << " fp=" << report.confusion.fp
              << " tn=" << report.confusion.tn << " fn=" << report.confusion.fn << '\n'
              << "accuracy:  " << show(report.metrics.accuracy) << '\n'
              << "precision: " << show(report.metrics.precision) << '\n'
              << "recall:    " << show(report.metrics.recall) << '\n'
              << "f1:        " << show(report.metrics.f1) << std::endl;
  }
  return kExitOk;
}

int run_saturation(
  const std::string & map_path, const std::string & scenes_path, const std::string & method_name,
  const std::string & checkpoints_csv, const std::string & out_path, int workers)
{
  const auto method = tl2la::method_from_string(method_name);
  if (!method) {
    return fail("unknown method " + method_name);
  }
  const auto map = tl2la::load_map(map_path);
  const auto scenes = tl2la::load_scenes(scenes_path);
  if (const int rc = check_map_and_scenes(map, scenes); rc != kExitOk) {
    return rc;
  }

  std::vector<std::int64_t> checkpoints;
  std::stringstream ss(checkpoints_csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    checkpoints.push_back(std::stoll(token));
  }

  ManifestWriter manifest("saturation", method_name + ":" + checkpoints_csv);
  manifest.add_input("map", map_path);
  manifest.add_input("scenes", scenes_path);
  const auto series = tl2la::saturation_curve(scenes, map, *method, checkpoints, {}, workers);
  tl2la::write_text_file(out_path, tl2la::saturation_to_ndjson(series));
  manifest.add_output("series", out_path);
  manifest.write(out_path + ".manifest.json");
  std::cout << "wrote " << series.points.size() << " checkpoints" << std::endl;
  return kExitOk;
}

int run_presets()
{
  for (const auto p : tl2la::all_presets()) {
    const auto cfg = tl2la::preset(p);
    std::cout << to_string(p) << ": " << cfg.branches.size() << " branches, "
              << cfg.lights.size() << " lights, compliance " << cfg.compliance_rate
              << ", rtor " << cfg.right_turn_on_red_rate << std::endl;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Derives traffic-light-to-lane assignments from vehicle motion patterns"};
  app.set_version_flag("--version", tl2la::kToolVersion);
  app.require_subcommand(1);

  // simulate
  auto * simulate = app.add_subcommand("simulate", "Generate a synthetic corpus with ground truth");
  std::string preset_name{"Basic4Way"}, sim_config, out_dir{"corpus"};
  std::optional<std::uint64_t> seed;
  std::optional<int> scene_count;
  std::optional<double> compliance, noise, arrival, cross_rate;
  bool ego_driver = false;
  int workers = default_workers();
  simulate->add_option("--preset", preset_name, "Named scenario (see `presets`)");
  simulate->add_option("--config", sim_config, "Scenario config file (overrides --preset)");
  simulate->add_option("--out-dir", out_dir, "Output directory");
  simulate->add_option("--seed", seed, "Random seed");
  simulate->add_option("--scenes", scene_count, "Scene count");
  simulate->add_option("--compliance", compliance, "Driver compliance rate");
  simulate->add_option("--noise", noise, "Per-frame detection noise");
  simulate->add_option("--arrival", arrival, "Arrivals per minute per lane");
  simulate->add_option("--cross-rate", cross_rate, "Cross-branch track visibility");
  simulate->add_flag("--ego-driver", ego_driver, "Mark a driving vehicle as ego");
  simulate->add_option("--workers", workers, "Worker threads");

  // transform
  auto * transform = app.add_subcommand("transform", "Prepare lane sequences and filter scenes");
  std::string t_map, t_scenes, t_out{"prepared"};
  double depth = 20.0, max_distance = 20.0;
  transform->add_option("--map", t_map, "Map file")->required();
  transform->add_option("--scenes", t_scenes, "Scenes file")->required();
  transform->add_option("--out-dir", t_out, "Output directory");
  transform->add_option("--depth", depth, "Lane sequence depth (m)");
  transform->add_option("--max-distance", max_distance, "Proximity window (m)");

  // predict
  auto * predict = app.add_subcommand("predict", "Derive assignments from a prepared corpus");
  PredictOptions popt;
  predict->add_option("--map", popt.map_path, "Prepared map file")->required();
  predict->add_option("--scenes", popt.scenes_path, "Prepared scenes file")->required();
  predict->add_option("--out", popt.out_path, "Predictions output");
  predict->add_option("--method", popt.method, "baseline|pattern|rejection")
    ->check(CLI::IsMember({"baseline", "pattern", "rejection"}));
  predict->add_option("--scope", popt.scope, "ego|all vehicle scope")
    ->check(CLI::IsMember({"ego", "all"}));
  predict->add_option("--config", popt.config_path, "Method config file");
  predict->add_option("--workers", popt.workers, "Worker threads");
  predict->add_flag("--global-sum", popt.global_sum, "Pattern: global contribution sum");
  predict->add_flag("--cumulative-rows", popt.cumulative_rows, "Sum all matching rule rows");
  predict->add_flag("--median-prefilter", popt.median_prefilter, "3-sample median on positions");
  predict->add_option("--stop-zone", popt.stop_zone, "Stop zone (m)");
  predict->add_option("--slow-zone", popt.slow_zone, "Slow zone (m)");
  predict->add_option("--reaction-red", popt.reaction_red, "Red reaction time (s)");
  predict->add_option("--reaction-green", popt.reaction_green, "Green reaction time (s)");
  predict->add_option("--vel-threshold", popt.vel_threshold, "Speed threshold (m/s)");
  predict->add_option("--acc-threshold", popt.acc_threshold, "Acceleration threshold (m/s^2)");
  predict->add_option("--pass-distance", popt.pass_distance, "Pass band (m)");
  predict->add_option("--pass-speed", popt.pass_speed, "Pass speed (km/h)");
  predict->add_option("--right-turn-pass-speed", popt.right_turn_pass_speed,
                      "Right-turn pass speed (km/h)");
  predict->add_option("--p", popt.p, "Red-pass probability under assignment");
  predict->add_option("--alpha", popt.alpha, "Significance level");

  // evaluate
  auto * evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth");
  std::string e_map, e_pred, e_out{"report.json"}, e_format{"table"};
  bool exclude_defaults = false;
  evaluate->add_option("--map", e_map, "Map file with ground truth")->required();
  evaluate->add_option("--predictions", e_pred, "Predictions file")->required();
  evaluate->add_option("--out", e_out, "Report output");
  evaluate->add_option("--format", e_format, "table|ndjson")
    ->check(CLI::IsMember({"table", "ndjson"}));
  evaluate->add_flag("--exclude-defaults", exclude_defaults,
                     "Drop zero-evidence default predictions before scoring");

  // saturation
  auto * saturation = app.add_subcommand("saturation", "Metrics over growing scene prefixes");
  std::string s_map, s_scenes, s_method{"rejection"}, s_checkpoints{"10,50,250"},
    s_out{"saturation.ndjson"};
  int s_workers = default_workers();
  saturation->add_option("--map", s_map, "Map file")->required();
  saturation->add_option("--scenes", s_scenes, "Scenes file")->required();
  saturation->add_option("--method", s_method, "baseline|pattern|rejection");
  saturation->add_option("--checkpoints", s_checkpoints, "Comma-separated scene counts");
  saturation->add_option("--out", s_out, "Series output");
  saturation->add_option("--workers", s_workers, "Worker threads");

  auto * presets = app.add_subcommand("presets", "List scenario presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(
        preset_name, sim_config, out_dir, seed, scene_count, compliance, noise, arrival,
        cross_rate, ego_driver, workers);
    }
    if (transform->parsed()) {
      return run_transform(t_map, t_scenes, t_out, depth, max_distance);
    }
    if (predict->parsed()) {
      return run_predict(popt);
    }
    if (evaluate->parsed()) {
      return run_evaluate(e_map, e_pred, e_out, e_format, exclude_defaults);
    }
    if (saturation->parsed()) {
      return run_saturation(s_map, s_scenes, s_method, s_checkpoints, s_out, s_workers);
    }
    if (presets->parsed()) {
      return run_presets();
    }
  } catch (const tl2la::Error & e) {
    return fail(e.what());
  } catch (const std::exception & e) {
    return fail(e.what());
  }
  return kExitUsage;
}
