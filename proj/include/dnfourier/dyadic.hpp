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

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dnfourier {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact number of the form numerator / 2^log_denominator.
//
// Always kept in canonical form: the numerator is odd, or it is zero and the
// exponent is zero. Every Fourier coefficient of an n-variable {0,1}-valued
// function is an integer over 2^n, so all spectral quantities in the library
// live here without rounding.
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(BigInt numerator, unsigned log_denominator);
  // NOLINTNEXTLINE(google-explicit-constructor)
  DyadicRational(std::int64_t value) : DyadicRational(BigInt(value), 0) {}

  // 2^exponent for any (possibly negative) exponent.
  static DyadicRational power_of_two(int exponent);

  const BigInt& numerator() const { return numerator_; }
  unsigned log_denominator() const { return log_denominator_; }

  bool is_zero() const { return numerator_ == 0; }
  int sign() const { return numerator_.sign(); }

  DyadicRational abs() const;
  DyadicRational operator-() const;
  DyadicRational& operator+=(const DyadicRational& other);
  DyadicRational& operator-=(const DyadicRational& other);
  DyadicRational& operator*=(const DyadicRational& other);
  // Multiplies by 2^exponent.
  DyadicRational scaled(int exponent) const;

  friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
  friend DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }
  friend DyadicRational operator*(DyadicRational a, const DyadicRational& b) { return a *= b; }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.numerator_ == b.numerator_ && a.log_denominator_ == b.log_denominator_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

  Rational to_rational() const;
  double to_double() const;

  // "num/2^e", or just "num" when the denominator is 1.
  std::string to_string() const;
  // Inverse of to_string(); also accepts plain integers.
  static DyadicRational parse(std::string_view text);

 private:
  void normalize();

  BigInt numerator_ = 0;
  unsigned log_denominator_ = 0;
};

// Exact comparisons against general rationals.
std::strong_ordering compare(const DyadicRational& a, const Rational& b);
inline bool operator<=(const DyadicRational& a, const Rational& b) { return compare(a, b) <= 0; }

// Parses "p/q", an integer, or a finite decimal such as "0.125".
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& value);
double rational_to_double(const Rational& value);

BigInt binomial(std::int64_t n, std::int64_t k);

// Largest integer t with 2^t <= value (value > 0).
std::int64_t floor_log2(const Rational& value);

}  // namespace dnfourier
