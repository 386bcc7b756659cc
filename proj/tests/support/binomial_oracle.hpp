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

#ifndef TL2LA_TESTS_SUPPORT_BINOMIAL_ORACLE_HPP_
#define TL2LA_TESTS_SUPPORT_BINOMIAL_ORACLE_HPP_

#include <cstdint>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace tl2la::testing {

/// Exact rational upper tail for p = pn/pd: sum_{i=k..n} C(n,i) pn^i (pd-pn)^{n-i} / pd^n,
/// evaluated with arbitrary-precision integers and a 50-digit float division.
/// Independent of the production log-space route.
inline double exact_upper_tail_rational(
  std::int64_t k, std::int64_t n, std::int64_t pn = 1, std::int64_t pd = 20)
{
  using boost::multiprecision::cpp_int;
  using big_float = boost::multiprecision::cpp_bin_float_50;

  const cpp_int qn = pd - pn;
  cpp_int numerator = 0;
  // C(n,i) built up multiplicatively; stays exact in cpp_int.
  cpp_int binom = 1;
  cpp_int p_pow = 1;  // pn^i
  for (std::int64_t i = 0; i <= n; ++i) {
    if (i >= k) {
      cpp_int q_pow = 1;
      for (std::int64_t j = 0; j < n - i; ++j) {
        q_pow *= qn;
      }
      numerator += binom * p_pow * q_pow;
    }
    binom = binom * (n - i) / (i + 1);
    p_pow *= pn;
  }
  cpp_int denominator = 1;
  for (std::int64_t j = 0; j < n; ++j) {
    denominator *= pd;
  }
  return static_cast<double>(big_float(numerator) / big_float(denominator));
}

/// Brute-force lower tail sum_{i=0..k} pmf(i) via the multiplicative pmf
/// recurrence in extended precision.
inline double brute_force_lower_tail(std::int64_t k, std::int64_t n, double p)
{
  const long double lp = p;
  long double term = 1.0L;
  for (std::int64_t j = 0; j < n; ++j) {
    term *= (1.0L - lp);
  }
  long double sum = 0.0L;
  for (std::int64_t i = 0; i <= k; ++i) {
    sum += term;
    term *= static_cast<long double>(n - i) / static_cast<long double>(i + 1) * lp / (1.0L - lp);
  }
  return static_cast<double>(sum);
}

}  // namespace tl2la::testing

#endif  // TL2LA_TESTS_SUPPORT_BINOMIAL_ORACLE_HPP_
