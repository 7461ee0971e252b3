// Copyright 2026 The dnfourier Authors.
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

#include "dnfourier/dyadic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "dnfourier/errors.hpp"

namespace dnfourier {

namespace {

BigInt pow2(unsigned exponent) { return BigInt(1) << exponent; }

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

BigInt parse_integer(std::string_view text) {
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw ParseError("empty integer");
  BigInt value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw ParseError("bad digit in integer: " + std::string(text));
    value = value * 10 + (ch - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

DyadicRational::DyadicRational(BigInt numerator, unsigned log_denominator)
    : numerator_(std::move(numerator)), log_denominator_(log_denominator) {
  normalize();
}

DyadicRational DyadicRational::power_of_two(int exponent) {
  if (exponent >= 0) return DyadicRational(pow2(static_cast<unsigned>(exponent)), 0);
  return DyadicRational(BigInt(1), static_cast<unsigned>(-exponent));
}

void DyadicRational::normalize() {
  if (numerator_ == 0) {
    log_denominator_ = 0;
    return;
  }
  if (log_denominator_ == 0) return;
  BigInt magnitude = boost::multiprecision::abs(numerator_);
  unsigned trailing = static_cast<unsigned>(boost::multiprecision::lsb(magnitude));
  unsigned shift = std::min(trailing, log_denominator_);
  if (shift > 0) {
    numerator_ /= pow2(shift);
    log_denominator_ -= shift;
  }
}

DyadicRational DyadicRational::abs() const {
  DyadicRational result = *this;
  if (result.numerator_ < 0) result.numerator_ = -result.numerator_;
  return result;
}

DyadicRational DyadicRational::operator-() const {
  DyadicRational result = *this;
  result.numerator_ = -result.numerator_;
  return result;
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& other) {
  unsigned common = std::max(log_denominator_, other.log_denominator_);
  numerator_ = numerator_ * pow2(common - log_denominator_) +
               other.numerator_ * pow2(common - other.log_denominator_);
  log_denominator_ = common;
  normalize();
  return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& other) { return *this += -other; }

DyadicRational& DyadicRational::operator*=(const DyadicRational& other) {
  numerator_ *= other.numerator_;
  log_denominator_ += other.log_denominator_;
  normalize();
  return *this;
}

DyadicRational DyadicRational::scaled(int exponent) const {
  DyadicRational result = *this;
  if (exponent >= 0) {
    unsigned up = static_cast<unsigned>(exponent);
    if (result.log_denominator_ >= up) {
      result.log_denominator_ -= up;
    } else {
      result.numerator_ *= pow2(up - result.log_denominator_);
      result.log_denominator_ = 0;
    }
  } else {
    result.log_denominator_ += static_cast<unsigned>(-exponent);
  }
  result.normalize();
  return result;
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  unsigned common = std::max(a.log_denominator_, b.log_denominator_);
  BigInt lhs = a.numerator_ * pow2(common - a.log_denominator_);
  BigInt rhs = b.numerator_ * pow2(common - b.log_denominator_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational DyadicRational::to_rational() const { return Rational(numerator_, pow2(log_denominator_)); }

double DyadicRational::to_double() const {
  return std::ldexp(numerator_.convert_to<double>(), -static_cast<int>(log_denominator_));
}

std::string DyadicRational::to_string() const {
  std::string text = numerator_.str();
  if (log_denominator_ != 0) text += "/2^" + std::to_string(log_denominator_);
  return text;
}

DyadicRational DyadicRational::parse(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return DyadicRational(parse_integer(text), 0);
  std::string_view denominator = trim(text.substr(slash + 1));
  if (denominator.substr(0, 2) != "2^") throw ParseError("dyadic denominator must be 2^e: " + std::string(text));
  BigInt exponent = parse_integer(denominator.substr(2));
  if (exponent < 0 || exponent > 1'000'000) throw ParseError("bad dyadic exponent: " + std::string(text));
  return DyadicRational(parse_integer(text.substr(0, slash)), exponent.convert_to<unsigned>());
}

std::strong_ordering compare(const DyadicRational& a, const Rational& b) {
  Rational lhs = a.to_rational();
  if (lhs < b) return std::strong_ordering::less;
  if (lhs > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty rational");
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt q = parse_integer(text.substr(slash + 1));
    if (q == 0) throw ParseError("zero denominator: " + std::string(text));
    return Rational(parse_integer(text.substr(0, slash)), q);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_integer(text));
  std::string digits(text.substr(0, dot));
  std::string_view fraction = text.substr(dot + 1);
  digits += fraction;
  if (digits.empty() || digits == "-" || digits == "+") throw ParseError("bad decimal: " + std::string(text));
  BigInt scale = 1;
  for (std::size_t i = 0; i < fraction.size(); ++i) scale *= 10;
  return Rational(parse_integer(digits), scale);
}

std::string rational_to_string(const Rational& value) {
  const BigInt& den = boost::multiprecision::denominator(value);
  std::string text = boost::multiprecision::numerator(value).str();
  if (den != 1) text += "/" + den.str();
  return text;
}

double rational_to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::int64_t floor_log2(const Rational& value) {
  if (value <= 0) throw PreconditionError("floor_log2 of a non-positive value");
  const BigInt& p = boost::multiprecision::numerator(value);
  const BigInt& q = boost::multiprecision::denominator(value);
  std::int64_t t = static_cast<std::int64_t>(boost::multiprecision::msb(p)) -
                   static_cast<std::int64_t>(boost::multiprecision::msb(q));
  auto power = [](std::int64_t e) {
    return e >= 0 ? Rational(BigInt(1) << static_cast<unsigned>(e))
                  : Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(-e));
  };
  while (power(t) > value) --t;
  while (power(t + 1) <= value) ++t;
  return t;
}

}  // namespace dnfourier
