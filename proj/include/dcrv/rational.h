// Copyright 2026 The dcrv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DCRV_RATIONAL_H_
#define DCRV_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace dcrv {

using Rational = mpq_class;
using BigInt = mpz_class;

// Exact value of a decimal literal such as "0.25", "-1.5e-3" or "7".
// Throws Error(kOutOfRange) on malformed text.
Rational parse_decimal(std::string_view text);

// Exact ratio of the shortest decimal that round-trips `value`, so 0.2
// becomes 1/5 rather than the binary fraction nearest to 0.2.
Rational decimal_to_rational(double value);

inline double to_double(double value) { return value; }
inline double to_double(const Rational& value) { return value.get_d(); }

inline bool is_zero(double value) { return value == 0.0; }
inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

inline double abs_value(double value) { return value < 0 ? -value : value; }
inline Rational abs_value(const Rational& value) { return abs(value); }

// "num/den" (or "num" for integers).
std::string to_string(const Rational& value);

// Square-and-multiply power; exponent must be non-negative. 0^0 == 1.
template <typename Scalar>
Scalar ipow(Scalar base, int exponent) {
  Scalar result(1);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

BigInt factorial(int n);
BigInt binomial(int n, int k);

}  // namespace dcrv

#endif  // DCRV_RATIONAL_H_
