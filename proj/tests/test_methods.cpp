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

#include <algorithm>
#include <map>
#include <set>

#include <doctest.h>

#include "support/binomial_oracle.hpp"
#include "support/fixtures.hpp"
#include "tl2la/errors.hpp"
#include "tl2la/methods.hpp"
#include "tl2la/pipeline.hpp"
#include "tl2la/simulator.hpp"
#include "tl2la/transform.hpp"

using namespace tl2la;
using namespace tl2la::testing;

namespace {

ContextSnapshot ctx(
  double speed, double accel, LightState state, double distance, double duration = 0.0,
  bool lead = true, TurnType turn = TurnType::Straight)
{
  ContextSnapshot c;
  c.speed = speed;
  c.accel = accel;
  c.state = state;
  c.distance = distance;
  c.state_duration = duration;
  c.is_lead = lead;
  c.turn_type = turn;
  return c;
}

const HeuristicConfig kDefault{};

}  // namespace

TEST_CASE("contribution values for the documented motion patterns")
{
  // Stationary at red inside the stop zone.
  CHECK(heuristic_contribution(ctx(0.2, 0.1, LightState::Red, 5.0), kDefault) == 2);
  // Moving through the stop zone on green.
  CHECK(heuristic_contribution(ctx(6.0, 0.3, LightState::Green, 4.0), kDefault) == 5);
  // Pulling away from stop on red, not a right turn.
  CHECK(heuristic_contribution(ctx(0.5, 2.0, LightState::Red, 5.0), kDefault) == -2);
  // Moving on a held red close to the entry: the more specific row wins
  // over the plain slow-zone row.
  CHECK(heuristic_contribution(ctx(6.0, 0.3, LightState::Red, 5.0, 2.0), kDefault) == -3);
  // Stationary on green but not the lead vehicle: nothing fires.
  CHECK(heuristic_contribution(ctx(0.2, 0.1, LightState::Green, 5.0, 0.0, false), kDefault) == 0);
  // Kinematics matching no row.
  CHECK(heuristic_contribution(ctx(30.0, 5.0, LightState::Red, 100.0), kDefault) == 0);
}

TEST_CASE("every rule-table row produces its printed value")
{
  const auto red = LightState::Red;
  const auto green = LightState::Green;

  // Stationary: |v| < 1, |a| < 1
  CHECK(heuristic_contribution(ctx(0.3, 0.2, red, 6.0), kDefault) == 2);
  CHECK(heuristic_contribution(ctx(0.3, 0.2, green, 6.0, 1.0, true), kDefault) == -1);
  CHECK(heuristic_contribution(ctx(0.3, 0.2, green, 6.0, 4.0, true), kDefault) == -3);
  // Continuously moving: |v| >= 1, |a| < 1
  CHECK(heuristic_contribution(ctx(5.0, 0.2, red, 15.0, 0.5), kDefault) == -1);
  CHECK(heuristic_contribution(ctx(5.0, 0.2, red, 6.0, 2.0), kDefault) == -3);
  CHECK(heuristic_contribution(ctx(5.0, 0.2, green, 15.0), kDefault) == 3);
  CHECK(heuristic_contribution(ctx(5.0, 0.2, green, 6.0), kDefault) == 5);
  // Acceleration from stationary: |v| < 1, a >= 1
  CHECK(heuristic_contribution(ctx(0.5, 1.5, red, 6.0), kDefault) == -2);
  CHECK(heuristic_contribution(ctx(0.5, 1.5, green, 15.0, 2.0), kDefault) == 3);
  // Acceleration while moving: |v| >= 1, a >= 1
  CHECK(heuristic_contribution(ctx(3.0, 1.5, red, 15.0, 0.5), kDefault) == -1);
  CHECK(heuristic_contribution(ctx(3.0, 1.5, red, 6.0, 2.0), kDefault) == -3);
  CHECK(heuristic_contribution(ctx(3.0, 1.5, green, 15.0), kDefault) == 1);
  // Deceleration: |v| >= 1, a <= -1
  CHECK(heuristic_contribution(ctx(5.0, -2.0, red, 15.0), kDefault) == 2);
  CHECK(
    heuristic_contribution(ctx(5.0, -2.0, green, 6.0, 0.0, true, TurnType::LeftTurn), kDefault) ==
    -1);
  CHECK(
    heuristic_contribution(ctx(5.0, -2.0, green, 6.0, 0.0, true, TurnType::Straight), kDefault) ==
    -2);
  // Other: stationary with strong braking matches no pattern.
  CHECK(heuristic_contribution(ctx(0.5, -2.0, red, 6.0), kDefault) == 0);
}

TEST_CASE("the row values form exactly the documented multiset")
{
  const auto red = LightState::Red;
  const auto green = LightState::Green;
  const std::vector<ContextSnapshot> rows = {
    ctx(0.3, 0.2, red, 6.0),
    ctx(0.3, 0.2, green, 6.0, 1.0, true),
    ctx(0.3, 0.2, green, 6.0, 4.0, true),
    ctx(5.0, 0.2, red, 15.0, 0.5),
    ctx(5.0, 0.2, red, 6.0, 2.0),
    ctx(5.0, 0.2, green, 15.0),
    ctx(5.0, 0.2, green, 6.0),
    ctx(0.5, 1.5, red, 6.0),
    ctx(0.5, 1.5, green, 15.0, 2.0),
    ctx(3.0, 1.5, red, 15.0, 0.5),
    ctx(3.0, 1.5, red, 6.0, 2.0),
    ctx(3.0, 1.5, green, 15.0),
    ctx(5.0, -2.0, red, 15.0),
    ctx(5.0, -2.0, green, 6.0, 0.0, true, TurnType::LeftTurn),
    ctx(5.0, -2.0, green, 6.0, 0.0, true, TurnType::Straight),
    ctx(30.0, 5.0, red, 100.0),
  };
  std::multiset<int> values;
  for (const auto & row : rows) {
    values.insert(heuristic_contribution(row, kDefault));
  }
  const std::multiset<int> expected{+2, -1, -3, -1, -3, +3, +5, -2, +3, -1, -3, +1, +2, -1, -2, 0};
  CHECK(values == expected);
}

TEST_CASE("right turns are exempt from the pull-away penalty")
{
  CHECK(
    heuristic_contribution(ctx(0.5, 2.0, LightState::Red, 5.0, 0.0, true, TurnType::RightTurn),
                           kDefault) == 0);
}

TEST_CASE("cumulative mode sums all matching rows of a group")
{
  HeuristicConfig cumulative = kDefault;
  cumulative.cumulative_rows = true;
  // Green, moving, 4 m: both the stop-zone and slow-zone rows match.
  CHECK(heuristic_contribution(ctx(6.0, 0.3, LightState::Green, 4.0), cumulative) == 8);
  CHECK(heuristic_contribution(ctx(6.0, 0.3, LightState::Green, 4.0), kDefault) == 5);
}

namespace {

// One prepared 30 m lane plus one light; the vehicle behavior is injected.
struct MiniWorld {
  RoadMap map;
  Scene scene;

  explicit MiniWorld(TurnType turn = TurnType::Straight)
  {
    map = one_lane_map(straight_lane("lane", 30.0, 0.0, 0.0, 3.5, 7, turn));
    scene = empty_scene();
    scene.tracks.push_back(ego_observer(40));
  }

  EvidenceStore extract() const
  {
    return extract_scene_evidence(scene, map, ExtractConfig{});
  }
};

}  // namespace

TEST_CASE("a vehicle holding at a red light accumulates +2 per frame")
{
  MiniWorld world;
  world.scene.tracks.push_back(stationary_track("v1", {25.0, 0.0}, 30));
  observe(world.scene, "tl0", LightState::Red, 30);

  const auto store = world.extract();
  const auto & ev = store.pairs().at(PairKey{"tl0", "lane"});
  CHECK(ev.contribution_total == 60);
  CHECK(ev.votes_for == 1);
  CHECK(ev.votes_against == 0);
  CHECK(ev.pass_total == 0);
}

TEST_CASE("crossing the entry at 20 km/h is one pass with the observed state")
{
  const double v = 20.0 / 3.6;
  SUBCASE("green crossing: n=1, k=0")
  {
    MiniWorld world;
    world.scene.tracks.push_back(moving_track("v1", {25.0, 0.0}, v, 12));
    observe(world.scene, "tl0", LightState::Green, 12);
    const auto & ev = world.extract().pairs().at(PairKey{"tl0", "lane"});
    CHECK(ev.pass_total == 1);
    CHECK(ev.red_pass_count == 0);
  }
  SUBCASE("red crossing: n=1, k=1")
  {
    MiniWorld world;
    world.scene.tracks.push_back(moving_track("v1", {25.0, 0.0}, v, 12));
    observe(world.scene, "tl0", LightState::Red, 12);
    const auto & ev = world.extract().pairs().at(PairKey{"tl0", "lane"});
    CHECK(ev.pass_total == 1);
    CHECK(ev.red_pass_count == 1);
  }
  SUBCASE("right-turn lane at 20 km/h: below the 25 km/h bar, no trial")
  {
    MiniWorld world(TurnType::RightTurn);
    world.scene.tracks.push_back(moving_track("v1", {25.0, 0.0}, v, 12));
    observe(world.scene, "tl0", LightState::Red, 12);
    const auto & ev = world.extract().pairs().at(PairKey{"tl0", "lane"});
    CHECK(ev.pass_total == 0);
    CHECK(ev.red_pass_count == 0);
  }
  SUBCASE("right-turn lane at 30 km/h: counted")
  {
    MiniWorld world(TurnType::RightTurn);
    world.scene.tracks.push_back(moving_track("v1", {25.0, 0.0}, 30.0 / 3.6, 10));
    observe(world.scene, "tl0", LightState::Red, 10);
    const auto & ev = world.extract().pairs().at(PairKey{"tl0", "lane"});
    CHECK(ev.pass_total == 1);
    CHECK(ev.red_pass_count == 1);
  }
}

TEST_CASE("passes with no nearby observation yield no trial")
{
  MiniWorld world;
  world.scene.tracks.push_back(moving_track("v1", {25.0, 0.0}, 20.0 / 3.6, 12));
  // Observations only in the first 0.3 s; the crossing happens around t=0.8.
  observe(world.scene, "tl0", LightState::Red, 3);
  const auto & ev = world.extract().pairs().at(PairKey{"tl0", "lane"});
  CHECK(ev.pass_total == 0);
}

TEST_CASE("ego-only scope ignores other vehicles")
{
  MiniWorld world;
  world.scene.tracks.push_back(stationary_track("v1", {25.0, 0.0}, 30));
  observe(world.scene, "tl0", LightState::Red, 30);
  ExtractConfig cfg;
  cfg.scope = EvidenceScope::EgoOnly;
  const auto store = extract_scene_evidence(world.scene, world.map, cfg);
  CHECK(store.pairs().empty());
}

TEST_CASE("baseline predicts the majority training class")
{
  EvidenceStore store;
  RoadMap map;
  map.lights.push_back(TrafficLight{"tl", "ix"});
  for (int i = 0; i < 271; ++i) {
    const std::string lane_id = "lane" + std::to_string(i);
    map.lanes.push_back(straight_lane(lane_id, 30.0, 0.0, 10.0 * i));
    map.ground_truth[PairKey{"tl", lane_id}] = i < 180 ? 1 : 0;
    store.at_or_insert(PairKey{"tl", lane_id});
  }
  const auto predictions = predict_baseline(store, map);
  REQUIRE(predictions.size() == 271);
  for (const auto & p : predictions) {
    CHECK(p.label == 1);
    CHECK(p.confidence == doctest::Approx(180.0 / 271.0));
  }
}

TEST_CASE("baseline tie resolves to the assignment class")
{
  EvidenceStore store;
  store.at_or_insert(PairKey{"tl", "lane"});
  RoadMap map;
  const auto predictions = predict_baseline(store, map, ClassPrior{10, 10});
  CHECK(predictions.at(0).label == 1);
}

TEST_CASE("baseline follows a negative-majority prior")
{
  EvidenceStore store;
  store.at_or_insert(PairKey{"tl", "lane"});
  RoadMap map;
  const auto predictions = predict_baseline(store, map, ClassPrior{10, 2});
  CHECK(predictions.at(0).label == 0);
}

TEST_CASE("baseline without labels or prior is an error")
{
  EvidenceStore store;
  store.at_or_insert(PairKey{"tl", "lane"});
  RoadMap map;
  CHECK_THROWS_AS((void)predict_baseline(store, map), MissingPrior);
}

TEST_CASE("pattern prediction follows the scene-vote majority")
{
  EvidenceStore store;
  auto & ev = store.at_or_insert(PairKey{"tl", "lane"});
  ev.votes_for = 7;
  ev.votes_against = 3;
  const auto predictions = predict_pattern(store);
  CHECK(predictions.at(0).label == 1);
  CHECK(predictions.at(0).confidence == doctest::Approx(0.4));
  CHECK(predictions.at(0).evidence_count == 10);
}

TEST_CASE("pattern defaults to the assignment without evidence and on ties")
{
  EvidenceStore store;
  store.at_or_insert(PairKey{"tl", "empty"});
  auto & tied = store.at_or_insert(PairKey{"tl", "tied"});
  tied.votes_for = 5;
  tied.votes_against = 5;
  const auto predictions = predict_pattern(store);
  for (const auto & p : predictions) {
    CHECK(p.label == 1);
  }
}

TEST_CASE("global-sum pattern variant follows the sign of the total")
{
  EvidenceStore store;
  auto & ev = store.at_or_insert(PairKey{"tl", "lane"});
  ev.votes_for = 1;
  ev.votes_against = 2;
  ev.contribution_total = 40;  // one strong positive scene outweighs two weak negatives
  ev.contribution_abs_total = 60;
  PatternOptions options;
  options.scene_majority = false;
  CHECK(predict_pattern(store, options).at(0).label == 1);
  CHECK(predict_pattern(store).at(0).label == 0);
}

TEST_CASE("rejection keeps the assignment without passes")
{
  EvidenceStore store;
  store.at_or_insert(PairKey{"tl", "lane"});
  const auto predictions = predict_rejection(store, RejectionConfig{});
  CHECK(predictions.at(0).label == 1);
  CHECK(predictions.at(0).confidence == 1.0);
}

TEST_CASE("rejection rejects overwhelming red passes")
{
  EvidenceStore store;
  auto & ev = store.at_or_insert(PairKey{"tl", "lane"});
  ev.pass_total = 200;
  ev.red_pass_count = 40;
  const auto predictions = predict_rejection(store, RejectionConfig{});
  CHECK(predictions.at(0).label == 0);
  CHECK(predictions.at(0).confidence < 1e-12);
}

TEST_CASE("rejection retains sparse red passes")
{
  EvidenceStore store;
  auto & ev = store.at_or_insert(PairKey{"tl", "lane"});
  ev.pass_total = 20;
  ev.red_pass_count = 2;
  const auto predictions = predict_rejection(store, RejectionConfig{});
  CHECK(predictions.at(0).label == 1);
  const double oracle = 1.0 - testing::brute_force_lower_tail(1, 20, 0.05);
  CHECK(predictions.at(0).confidence == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(predictions.at(0).confidence == doctest::Approx(0.2641).epsilon(1e-3));
}

TEST_CASE("p-values shrink as evidence grows at a fixed red fraction")
{
  RejectionConfig cfg;
  double previous = 1.0;
  for (const std::int64_t n : {10, 50, 250}) {
    EvidenceStore store;
    auto & ev = store.at_or_insert(PairKey{"tl", "lane"});
    ev.pass_total = n;
    ev.red_pass_count = n / 5;  // fixed fraction 0.2 > p
    const double p_value = predict_rejection(store, cfg).at(0).confidence;
    CHECK(p_value <= previous);
    previous = p_value;
  }
}

TEST_CASE("rejection never rejects when every pass was green")
{
  RejectionConfig cfg;
  for (const std::int64_t n : {0, 1, 10, 1000}) {
    EvidenceStore store;
    auto & ev = store.at_or_insert(PairKey{"tl", "lane"});
    ev.pass_total = n;
    ev.red_pass_count = 0;
    CHECK(predict_rejection(store, cfg).at(0).label == 1);
  }
}

TEST_CASE("evidence extraction over scene partitions merges to the whole")
{
  auto config = preset(Preset::Basic4Way);
  config.seed = 99;
  config.scene_count = 24;
  const auto corpus = generate(config);
  const RoadMap prepared = build_lane_sequences(corpus.map);

  const ExtractConfig cfg;
  EvidenceStore whole = extract_corpus(corpus.scenes, prepared, cfg);

  for (const std::size_t parts : {2u, 3u, 7u}) {
    std::vector<EvidenceStore> deltas(parts);
    for (std::size_t i = 0; i < corpus.scenes.size(); ++i) {
      deltas[i % parts].merge(extract_scene_evidence(corpus.scenes[i], prepared, cfg));
    }
    EvidenceStore merged;
    for (const auto & delta : deltas) {
      merged.merge(delta);
    }
    CHECK(merged == whole);
  }

  // Merge order does not matter.
  EvidenceStore ab = extract_scene_evidence(corpus.scenes[0], prepared, cfg);
  ab.merge(extract_scene_evidence(corpus.scenes[1], prepared, cfg));
  EvidenceStore ba = extract_scene_evidence(corpus.scenes[1], prepared, cfg);
  ba.merge(extract_scene_evidence(corpus.scenes[0], prepared, cfg));
  CHECK(ab == ba);
}

TEST_CASE("scaling all contributions by a positive constant keeps pattern labels")
{
  auto config = preset(Preset::Basic4Way);
  config.seed = 5;
  config.scene_count = 40;
  const auto corpus = generate(config);
  const RoadMap prepared = build_lane_sequences(corpus.map);
  const EvidenceStore store = extract_corpus(corpus.scenes, prepared, ExtractConfig{});

  // Scaling every rule value by c > 0 scales each per-scene sum by c, which
  // flips no signs: votes stay identical and the global total scales.
  EvidenceStore scaled = store;
  for (const auto & [key, ev] : store.pairs()) {
    auto & mine = scaled.at_or_insert(key);
    mine.contribution_total = ev.contribution_total * 3;
    mine.contribution_abs_total = ev.contribution_abs_total * 3;
  }
  for (const bool majority : {true, false}) {
    PatternOptions options;
    options.scene_majority = majority;
    const auto a = predict_pattern(store, options);
    const auto b = predict_pattern(scaled, options);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].label == b[i].label);
    }
  }
}
