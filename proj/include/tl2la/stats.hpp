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

#ifndef TL2LA_STATS_HPP_
#define TL2LA_STATS_HPP_

#include <cstdint>

namespace tl2la {

/// One-sided upper-tail binomial probability P[X >= k] for X ~ Binomial(n, p).
///
/// Terms are evaluated in log space with log-gamma binomial coefficients and
/// accumulated with compensated summation in extended precision; absolute
/// error stays below 1e-12 for n up to 1e5. Returns exactly 1 when k == 0.
/// Throws DomainError on k > n, negative counts, or p outside (0, 1).
double upper_tail_pvalue(std::int64_t k, std::int64_t n, double p);

}  // namespace tl2la

#endif  // TL2LA_STATS_HPP_
