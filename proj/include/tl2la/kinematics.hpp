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

#ifndef TL2LA_KINEMATICS_HPP_
#define TL2LA_KINEMATICS_HPP_

#include <vector>

#include "tl2la/core.hpp"

namespace tl2la {

/// Scalar kinematic state. Speed is the magnitude of the planar velocity;
/// accel is the rate of speed change, positive along the direction of travel.
struct KinematicSample {
  std::string vehicle_id;
  double timestamp{0.0};
  double speed{0.0};
  double accel{0.0};
};

struct KinematicsOptions {
  /// Per-coordinate 3-sample median applied to positions before
  /// differentiation. Off by default; generated corpora are clean.
  bool median_prefilter{false};
};

/// Central differences at interior samples, one-sided at the endpoints.
/// Output length equals input length. Throws TooShort below 3 samples.
std::vector<KinematicSample> differentiate_track(
  const VehicleTrack & track, const KinematicsOptions & options = {});

}  // namespace tl2la

#endif  // TL2LA_KINEMATICS_HPP_
