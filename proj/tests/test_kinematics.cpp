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

#include <cmath>

#include <doctest.h>

#include "support/fixtures.hpp"
#include "tl2la/errors.hpp"
#include "tl2la/kinematics.hpp"

using namespace tl2la;
using namespace tl2la::testing;

namespace {

VehicleTrack sampled(const std::string & id, double dt, int n, double (*x_of_t)(double))
{
  VehicleTrack track;
  track.vehicle_id = id;
  for (int i = 0; i < n; ++i) {
    const double t = i * dt;
    track.samples.push_back({t, {x_of_t(t), 0.0}});
  }
  return track;
}

}  // namespace

TEST_CASE("stationary track differentiates to zero")
{
  const auto kin = differentiate_track(stationary_track("v", {3.0, 4.0}, 5));
  for (const auto & sample : kin) {
    CHECK(sample.speed == doctest::Approx(0.0));
    CHECK(sample.accel == doctest::Approx(0.0));
  }
}

TEST_CASE("uniform motion yields constant speed and zero acceleration")
{
  VehicleTrack track;
  track.vehicle_id = "v";
  for (int i = 0; i < 4; ++i) {
    track.samples.push_back({0.1 * i, {static_cast<double>(i), 0.0}});
  }
  const auto kin = differentiate_track(track);
  REQUIRE(kin.size() == 4);
  CHECK(kin[1].speed == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(kin[2].speed == doctest::Approx(10.0).epsilon(1e-12));
  for (const auto & sample : kin) {
    CHECK(std::abs(sample.accel) < 1e-9);
  }
}

TEST_CASE("central differences are exact for quadratic motion away from the ends")
{
  const auto track = sampled("v", 0.1, 11, [](double t) { return t * t; });
  const auto kin = differentiate_track(track);
  // speed(t) = 2t exactly at interior samples; accel = 2 wherever both
  // speed neighbors are themselves central estimates.
  for (std::size_t i = 1; i + 1 < kin.size(); ++i) {
    CHECK(std::abs(kin[i].speed - 2.0 * track.samples[i].timestamp) < 1e-9);
  }
  for (std::size_t i = 2; i + 2 < kin.size(); ++i) {
    CHECK(std::abs(kin[i].accel - 2.0) < 1e-9);
  }
}

TEST_CASE("affine motion is exact everywhere, endpoints included")
{
  const auto track = sampled("v", 0.05, 9, [](double t) { return 3.0 + 7.0 * t; });
  const auto kin = differentiate_track(track);
  for (const auto & sample : kin) {
    CHECK(std::abs(sample.speed - 7.0) < 1e-9);
    CHECK(std::abs(sample.accel) < 1e-9);
  }
}

TEST_CASE("differentiation rejects tracks shorter than three samples")
{
  VehicleTrack track;
  track.vehicle_id = "v";
  track.samples = {{0.0, {0.0, 0.0}}, {0.1, {1.0, 0.0}}};
  CHECK_THROWS_AS((void)differentiate_track(track), TooShort);
}

TEST_CASE("outputs are invariant under a timestamp shift")
{
  const auto track = sampled("v", 0.1, 11, [](double t) { return t * t; });
  VehicleTrack shifted = track;
  for (auto & sample : shifted.samples) {
    sample.timestamp += 1000.0;
  }
  const auto a = differentiate_track(track);
  const auto b = differentiate_track(shifted);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].speed == doctest::Approx(b[i].speed).epsilon(1e-12));
    CHECK(a[i].accel == doctest::Approx(b[i].accel).epsilon(1e-12));
  }
}

TEST_CASE("median prefilter suppresses an isolated position spike")
{
  VehicleTrack track;
  track.vehicle_id = "v";
  for (int i = 0; i < 7; ++i) {
    track.samples.push_back({0.1 * i, {5.0 * 0.1 * i, 0.0}});
  }
  track.samples[3].position.x += 2.0;  // single-sample glitch

  const auto raw = differentiate_track(track);
  KinematicsOptions options;
  options.median_prefilter = true;
  const auto filtered = differentiate_track(track, options);

  CHECK(std::abs(raw[3].speed - 5.0) > 1.0);
  CHECK(filtered[3].speed == doctest::Approx(5.0).epsilon(1e-9));
}
