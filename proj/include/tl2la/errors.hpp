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

#ifndef TL2LA_ERRORS_HPP_
#define TL2LA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tl2la {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string & msg) : std::runtime_error(msg) {}
};

/// A point lies inside more than one lane polygon (unprepared map).
class AmbiguousMatch : public Error {
public:
  explicit AmbiguousMatch(const std::string & msg) : Error(msg) {}
};

/// A vehicle queried for lead status is on no lane.
class NotLocated : public Error {
public:
  explicit NotLocated(const std::string & msg) : Error(msg) {}
};

/// Track too short to differentiate.
class TooShort : public Error {
public:
  explicit TooShort(const std::string & msg) : Error(msg) {}
};

/// Trajectory halves overlap in time.
class OverlapError : public Error {
public:
  explicit OverlapError(const std::string & msg) : Error(msg) {}
};

/// Cyclic or otherwise unusable lane topology.
class TopologyError : public Error {
public:
  explicit TopologyError(const std::string & msg) : Error(msg) {}
};

/// Numeric argument outside its admissible domain.
class DomainError : public Error {
public:
  explicit DomainError(const std::string & msg) : Error(msg) {}
};

/// Scenario configuration violates its invariants.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string & msg) : Error(msg) {}
};

/// Baseline prediction requested without ground truth or a configured prior.
class MissingPrior : public Error {
public:
  explicit MissingPrior(const std::string & msg) : Error(msg) {}
};

/// A prediction references a pair with no ground-truth label.
class UnknownPair : public Error {
public:
  explicit UnknownPair(const std::string & msg) : Error(msg) {}
};

/// Input file could not be parsed against the documented schema.
class ParseError : public Error {
public:
  explicit ParseError(const std::string & msg) : Error(msg) {}
};

}  // namespace tl2la

#endif  // TL2LA_ERRORS_HPP_
