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

#include "smallvalues/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

#include "smallvalues/errors.hpp"

namespace smallvalues {

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(std::move(q));
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(mpq_class(a.value_ + b.value_));
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(mpq_class(a.value_ - b.value_));
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(mpq_class(a.value_ * b.value_));
}
Rational operator/(const Rational& a, const Rational& b) {
  if (sgn(b.value_) == 0) throw DomainError("division by zero");
  return Rational(mpq_class(a.value_ / b.value_));
}
Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

namespace {

// Strips factors of 2 and 5; returns the number of decimal digits needed.
bool decimal_digits(const BigInt& den, unsigned* digits) {
  BigInt d = den;
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
    d /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return false;
  *digits = std::max(twos, fives);
  return true;
}

BigInt pow10(unsigned k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

}  // namespace

std::string Rational::to_string() const {
  const BigInt num = value_.get_num();
  const BigInt den = value_.get_den();
  if (den == 1) return smallvalues::to_string(num);
  unsigned digits = 0;
  if (!decimal_digits(den, &digits)) {
    return smallvalues::to_string(num) + "/" + smallvalues::to_string(den);
  }
  BigInt scaled = abs(num) * pow10(digits) / den;
  std::string body = scaled.get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  return (sgn(num) < 0 ? "-" : "") + body;
}

BigInt ceil(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
  return r;
}

BigInt floor(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
  return r;
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational pow10_inverse(unsigned k) { return Rational(BigInt(1), pow10(k)); }

Rational round_down_decimal(const Rational& q, unsigned digits) {
  const BigInt scale = pow10(digits);
  return Rational(floor(q * Rational(scale)), scale);
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  std::size_t pos() const { return pos_; }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  bool accept(char c) {
    if (peek() != c || done()) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string_view digits() {
    const std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected digit");
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::string msg = what;
    if (done()) {
      msg += " (end of input)";
    } else {
      msg += std::string(" (found '") + text_[pos_] + "')";
    }
    throw ParseError("malformed number \"" + std::string(text_) + "\": " + msg,
                     pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

BigInt big_from_digits(std::string_view digits) {
  return BigInt(std::string(digits), 10);
}

// [0-9]+(.[0-9]+)?(+1e-[0-9]+)? ; `scanner` positioned at the first digit.
Rational scan_decimal(Scanner& sc) {
  const std::string_view whole = sc.digits();
  Rational value(big_from_digits(whole));
  if (sc.accept('.')) {
    const std::string_view frac = sc.digits();
    value += Rational(big_from_digits(frac),
                      pow10(static_cast<unsigned>(frac.size())));
  }
  if (sc.accept('+')) {
    sc.expect('1');
    sc.expect('e');
    sc.expect('-');
    const std::string_view k = sc.digits();
    if (k.size() > 6) sc.fail("exponent too large");
    value += pow10_inverse(static_cast<unsigned>(std::stoul(std::string(k))));
  }
  return value;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  Scanner sc(text);
  Rational value = scan_decimal(sc);
  if (!sc.done()) sc.fail("unexpected character");
  return value;
}

Rational parse_rational(std::string_view text) {
  Scanner sc(text);
  const bool negative = sc.accept('-');
  Rational value;
  const std::size_t start = sc.pos();
  Rational head = scan_decimal(sc);
  if (sc.accept('/')) {
    // Only the integer form may carry a denominator.
    if (!head.is_integer() ||
        text.substr(start, sc.pos() - 1 - start).find_first_not_of(
            "0123456789") != std::string_view::npos) {
      throw ParseError("fraction numerator must be an integer", start);
    }
    const std::size_t den_pos = sc.pos();
    BigInt den = big_from_digits(sc.digits());
    if (den == 0) throw ParseError("zero denominator", den_pos);
    value = Rational(head.numerator(), den);
  } else {
    value = head;
  }
  if (!sc.done()) sc.fail("unexpected character");
  return negative ? -value : value;
}

std::string to_string(const BigInt& value) { return value.get_str(); }

BigInt parse_integer(std::string_view text) {
  Scanner sc(text);
  const bool negative = sc.accept('-');
  BigInt v = big_from_digits(sc.digits());
  if (!sc.done()) sc.fail("unexpected character");
  return negative ? BigInt(-v) : v;
}

bool fits_int64(const BigInt& value) {
  static const BigInt lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const BigInt hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return value >= lo && value <= hi;
}

std::int64_t to_int64(const BigInt& value) {
  if (!fits_int64(value)) throw DomainError("integer out of int64 range");
  return std::stoll(value.get_str());
}

}  // namespace smallvalues
