// Copyright 2026 The smallvalues Authors
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

#ifndef SMALLVALUES_RATIONAL_HPP_
#define SMALLVALUES_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace smallvalues {

using BigInt = mpz_class;

// Exact rational number, always kept in lowest terms with a positive
// denominator. Immutable from the outside; all arithmetic is exact.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(runtime/explicit)
  Rational(int value) : value_(value) {}   // NOLINT(runtime/explicit)
  explicit Rational(const BigInt& value) : value_(value) {}
  // Throws DomainError when `denominator` is zero.
  Rational(const BigInt& numerator, const BigInt& denominator);

  // Exact value of a binary double (every finite double is a dyadic rational).
  static Rational from_double(double value);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  double to_double() const { return value_.get_d(); }

  // Canonical text: "5", "-0.25" when the denominator is of the form 2^a 5^b,
  // otherwise "p/q". Parsing the output with parse_rational is lossless.
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  // Throws DomainError on division by zero.
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return value_; }

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}
  mpq_class value_;
};

// Least integer >= q.
BigInt ceil(const Rational& q);
// Greatest integer <= q.
BigInt floor(const Rational& q);
Rational abs(const Rational& q);

// 10^-k as an exact rational.
Rational pow10_inverse(unsigned k);

// Largest multiple of 10^-digits that is <= q.
Rational round_down_decimal(const Rational& q, unsigned digits);

// Grammar `[0-9]+(.[0-9]+)?(+1e-[0-9]+)?`, e.g. "24+1e-13" or "0.5".
// Throws ParseError naming the offending character position.
Rational parse_decimal(std::string_view text);

// The serialization grammar: an optional leading '-', then either the
// decimal grammar above or "p/q" with p, q decimal integers and q > 0.
Rational parse_rational(std::string_view text);

std::string to_string(const BigInt& value);
// Parses an optionally signed decimal integer.
BigInt parse_integer(std::string_view text);

// Saturating conversion used at API boundaries (iteration counts, dims).
bool fits_int64(const BigInt& value);
std::int64_t to_int64(const BigInt& value);

}  // namespace smallvalues

#endif  // SMALLVALUES_RATIONAL_HPP_
