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

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dnfourier/dyadic.hpp"

#ifndef DNFOURIER_VARIABLE_CAP
#define DNFOURIER_VARIABLE_CAP 24
#endif

namespace dnfourier {

// Largest n for which a truth table (and hence a full spectrum) is built.
inline constexpr int kVariableCap = DNFOURIER_VARIABLE_CAP;
static_assert(kVariableCap >= 1 && kVariableCap <= 30);

// A subset of variables as a bit mask: bit i <-> variable i+1.
using VarMask = std::uint64_t;

inline int popcount(VarMask mask) { return std::popcount(mask); }

// Input convention: bit i of an input index x is 1 exactly when variable i+1
// is true, i.e. takes the value -1 in the {-1,1} encoding. A subset S uses
// the same bit layout, so the character x^S equals (-1)^popcount(x & S).
//
// Immutable once built.
class BooleanFunction {
 public:
  // `words` holds the 2^n-bit table, bit (x mod 64) of word (x / 64) = f(x).
  // Bits past 2^n must be zero.
  BooleanFunction(int n, std::vector<std::uint64_t> words);

  static BooleanFunction constant(int n, bool value);
  static BooleanFunction from_predicate(int n, const std::function<bool(std::uint64_t)>& predicate);
  static BooleanFunction from_bits(int n, const std::vector<bool>& bits);

  int num_vars() const { return n_; }
  std::uint64_t table_size() const { return std::uint64_t{1} << n_; }

  bool operator()(std::uint64_t x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
  std::span<const std::uint64_t> words() const { return words_; }

  std::uint64_t count_ones() const;
  // Pr_x[f(x) = 1].
  DyadicRational bias() const { return DyadicRational(BigInt(count_ones()), static_cast<unsigned>(n_)); }
  bool is_constant() const;

  // Fixes variable `var` (0-based) and renumbers the remaining n-1 variables
  // downward.
  BooleanFunction cofactor(int var, bool value) const;

  // Truth table as hex, most significant digit first, bit 0 = f(0).
  std::string to_hex() const;
  static BooleanFunction from_hex(int n, std::string_view hex);

  friend bool operator==(const BooleanFunction& a, const BooleanFunction& b) = default;

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

std::size_t word_count(int n);
void check_variable_count(int n, int cap = kVariableCap);

// Pr_x[f(x) != g(x)], exactly.
DyadicRational hamming_distance_fraction(const BooleanFunction& f, const BooleanFunction& g);

}  // namespace dnfourier
