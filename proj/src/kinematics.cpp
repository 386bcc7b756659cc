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

#include "tl2la/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "tl2la/errors.hpp"

namespace tl2la {

namespace {

double median3(double a, double b, double c)
{
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

}  // namespace

std::vector<KinematicSample> differentiate_track(
  const VehicleTrack & track, const KinematicsOptions & options)
{
  const std::size_t n = track.samples.size();
  if (n < 3) {
    throw TooShort(
      "track " + track.vehicle_id + " has " + std::to_string(n) +
      " samples; differentiation needs at least 3");
  }

  std::vector<Vec2> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = track.samples[i].position;
  }
  if (options.median_prefilter) {
    std::vector<Vec2> filtered = pos;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      filtered[i].x = median3(pos[i - 1].x, pos[i].x, pos[i + 1].x);
      filtered[i].y = median3(pos[i - 1].y, pos[i].y, pos[i + 1].y);
    }
    pos = std::move(filtered);
  }

  const auto t = [&](std::size_t i) { return track.samples[i].timestamp; };

  std::vector<double> speed(n);
  speed[0] = norm(pos[1] - pos[0]) / (t(1) - t(0));
  speed[n - 1] = norm(pos[n - 1] - pos[n - 2]) / (t(n - 1) - t(n - 2));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    speed[i] = norm(pos[i + 1] - pos[i - 1]) / (t(i + 1) - t(i - 1));
  }

  std::vector<KinematicSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double accel = 0.0;
    if (i == 0) {
      accel = (speed[1] - speed[0]) / (t(1) - t(0));
    } else if (i + 1 == n) {
      accel = (speed[n - 1] - speed[n - 2]) / (t(n - 1) - t(n - 2));
    } else {
      accel = (speed[i + 1] - speed[i - 1]) / (t(i + 1) - t(i - 1));
    }
    out[i] = KinematicSample{track.vehicle_id, t(i), speed[i], accel};
  }
  return out;
}

}  // namespace tl2la
