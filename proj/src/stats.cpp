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

#include "tl2la/stats.hpp"

#include <algorithm>
#include <cmath>

#include "tl2la/errors.hpp"

namespace tl2la {

double upper_tail_pvalue(std::int64_t k, std::int64_t n, double p)
{
  if (k < 0 || n < 0 || k > n) {
    throw DomainError(
      "binomial tail needs 0 <= k <= n, got k=" + std::to_string(k) +
      ", n=" + std::to_string(n));
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("binomial tail needs p in (0,1), got p=" + std::to_string(p));
  }
  if (k == 0) {
    return 1.0;
  }

  const long double log_p = std::log(static_cast<long double>(p));
  const long double log_q = std::log1p(static_cast<long double>(-p));
  const long double lg_n1 = std::lgamma(static_cast<long double>(n) + 1.0L);

  // Kahan-compensated sum of exp(log C(n,i) + i log p + (n-i) log q).
  long double sum = 0.0L;
  long double carry = 0.0L;
  for (std::int64_t i = k; i <= n; ++i) {
    const long double log_term =
      lg_n1 - std::lgamma(static_cast<long double>(i) + 1.0L) -
      std::lgamma(static_cast<long double>(n - i) + 1.0L) +
      static_cast<long double>(i) * log_p + static_cast<long double>(n - i) * log_q;
    const long double term = std::exp(log_term);
    const long double y = term - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(std::clamp(sum, 0.0L, 1.0L));
}

}  // namespace tl2la
