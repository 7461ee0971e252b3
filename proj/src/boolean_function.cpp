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

#include "dnfourier/boolean_function.hpp"

#include <algorithm>
#include <cctype>

#include "dnfourier/errors.hpp"

namespace dnfourier {

std::size_t word_count(int n) { return n >= 6 ? std::size_t{1} << (n - 6) : 1; }

void check_variable_count(int n, int cap) {
  if (n < 0) throw PreconditionError("negative variable count");
  if (n > cap) {
    throw CapExceeded("variable count " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
}

namespace {

std::uint64_t tail_mask(int n) { return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << n)) - 1; }

}  // namespace

BooleanFunction::BooleanFunction(int n, std::vector<std::uint64_t> words) : n_(n), words_(std::move(words)) {
  check_variable_count(n);
  if (words_.size() != word_count(n)) {
    throw PreconditionError("truth table has " + std::to_string(words_.size()) + " words, expected " +
                            std::to_string(word_count(n)));
  }
  if ((words_.back() & ~tail_mask(n)) != 0) throw PreconditionError("truth table has bits past 2^n");
}

BooleanFunction BooleanFunction::constant(int n, bool value) {
  check_variable_count(n);
  std::vector<std::uint64_t> words(word_count(n), value ? ~std::uint64_t{0} : 0);
  words.back() &= tail_mask(n);
  return BooleanFunction(n, std::move(words));
}

BooleanFunction BooleanFunction::from_predicate(int n, const std::function<bool(std::uint64_t)>& predicate) {
  check_variable_count(n);
  std::vector<std::uint64_t> words(word_count(n), 0);
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (predicate(x)) words[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return BooleanFunction(n, std::move(words));
}

BooleanFunction BooleanFunction::from_bits(int n, const std::vector<bool>& bits) {
  check_variable_count(n);
  if (bits.size() != (std::size_t{1} << n)) throw PreconditionError("bit vector length is not 2^n");
  return from_predicate(n, [&](std::uint64_t x) { return bits[x]; });
}

std::uint64_t BooleanFunction::count_ones() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

bool BooleanFunction::is_constant() const {
  if (n_ < 6) {
    std::uint64_t w = words_[0];
    return w == 0 || w == tail_mask(n_);
  }
  const std::uint64_t first = words_[0];
  if (first != 0 && first != ~std::uint64_t{0}) return false;
  return std::all_of(words_.begin(), words_.end(), [first](std::uint64_t w) { return w == first; });
}

BooleanFunction BooleanFunction::cofactor(int var, bool value) const {
  if (var < 0 || var >= n_) throw PreconditionError("cofactor variable out of range");
  const int m = n_ - 1;
  std::vector<std::uint64_t> words(word_count(m), 0);
  const std::uint64_t size = std::uint64_t{1} << m;
  const std::uint64_t low_mask = (std::uint64_t{1} << var) - 1;
  const std::uint64_t bit = value ? std::uint64_t{1} << var : 0;
  for (std::uint64_t y = 0; y < size; ++y) {
    std::uint64_t x = (y & low_mask) | bit | ((y & ~low_mask) << 1);
    if ((*this)(x)) words[y >> 6] |= std::uint64_t{1} << (y & 63);
  }
  return BooleanFunction(m, std::move(words));
}

std::string BooleanFunction::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::uint64_t digits = std::max<std::uint64_t>(1, table_size() / 4);
  std::string hex;
  hex.reserve(digits);
  for (std::uint64_t i = digits; i-- > 0;) {
    std::uint64_t nibble = (words_[(4 * i) >> 6] >> ((4 * i) & 63)) & 0xf;
    hex.push_back(kDigits[nibble]);
  }
  return hex;
}

BooleanFunction BooleanFunction::from_hex(int n, std::string_view hex) {
  check_variable_count(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  const std::uint64_t digits = std::max<std::uint64_t>(1, size / 4);
  if (hex.size() != digits) {
    throw ParseError("table_hex has " + std::to_string(hex.size()) + " digits, expected " + std::to_string(digits));
  }
  std::vector<std::uint64_t> words(word_count(n), 0);
  for (std::uint64_t i = 0; i < digits; ++i) {
    char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[digits - 1 - i])));
    std::uint64_t nibble;
    if (ch >= '0' && ch <= '9') {
      nibble = static_cast<std::uint64_t>(ch - '0');
    } else if (ch >= 'a' && ch <= 'f') {
      nibble = static_cast<std::uint64_t>(ch - 'a' + 10);
    } else {
      throw ParseError("bad hex digit in table_hex");
    }
    words[(4 * i) >> 6] |= nibble << ((4 * i) & 63);
  }
  if ((words.back() & ~tail_mask(n)) != 0) throw ParseError("table_hex sets bits past 2^n");
  return BooleanFunction(n, std::move(words));
}

DyadicRational hamming_distance_fraction(const BooleanFunction& f, const BooleanFunction& g) {
  if (f.num_vars() != g.num_vars()) {
    throw DimensionMismatch("functions on " + std::to_string(f.num_vars()) + " and " +
                            std::to_string(g.num_vars()) + " variables");
  }
  std::uint64_t differ = 0;
  auto a = f.words();
  auto b = g.words();
  for (std::size_t i = 0; i < a.size(); ++i) differ += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i]));
  return DyadicRational(BigInt(differ), static_cast<unsigned>(f.num_vars()));
}

}  // namespace dnfourier
