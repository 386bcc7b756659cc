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

#ifndef TL2LA_RNG_HPP_
#define TL2LA_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace tl2la {

/// splitmix64 step (Steele, Lea, Vigna): used for seeding and substream
/// derivation so corpora are reproducible across implementations.
inline std::uint64_t splitmix64(std::uint64_t & state)
{
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256** 1.0 (Blackman, Vigna), seeded via splitmix64. One generator
/// type everywhere; substreams derive from (seed, stream labels) so parallel
/// and serial generation agree.
class Rng {
public:
  explicit Rng(std::uint64_t seed)
  {
    std::uint64_t sm = seed;
    for (auto & word : state_) {
      word = splitmix64(sm);
    }
  }

  /// Independent substream for a labeled piece of work.
  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0)
  {
    std::uint64_t sm = seed;
    const std::uint64_t sa = splitmix64(sm) ^ (a * 0xD6E8FEB86659FD93ULL);
    std::uint64_t sm2 = sa;
    const std::uint64_t sb = splitmix64(sm2) ^ (b * 0xCA2F9C6BCE8A0FE5ULL);
    return Rng(sb);
  }

  std::uint64_t next()
  {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Exponential variate with the given rate (events per unit time).
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

private:
  static std::uint64_t rotl(std::uint64_t x, int k)
  {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4]{};
};

}  // namespace tl2la

#endif  // TL2LA_RNG_HPP_
