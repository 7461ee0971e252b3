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

#include <cstdint>
#include <string>

#include "dnfourier/dnf.hpp"

namespace dnfourier {

// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9e3779b97f4a7c15, then the
// 30/27/31 xor-shift-multiply finalizer. Counter-based, so the stream is a
// pure function of the seed on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform on [0, bound); bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return next() >> 63; }

 private:
  std::uint64_t state_;
};

// t disjoint all-positive terms of width w over n = w t variables.
Dnf tribes(int w, int t);

// s terms over n variables, each of width exactly w (exact_width) or uniform
// on [1, w], no variable in more than k terms. Literal polarity is a fair
// coin. Throws PreconditionError once the rejection budget is spent.
Dnf random_read_k(int n, int s, int w, int k, bool exact_width, std::uint64_t seed);

// n_terms terms of width term_width over the pool x_1..x_pool_size (n = pool_size).
Dnf dense_pool(int n_terms, int term_width, int pool_size, std::uint64_t seed);

enum class GeneratorFamily { kTribes, kRandomReadK, kDensePool };

// Parameters used per family:
//   tribes         w, s (number of tribes)
//   random_read_k  n, s, w, k, exact_width, seed
//   dense_pool     s (terms), w, pool_size, seed
struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::kRandomReadK;
  int n = 0;
  int s = 0;
  int w = 0;
  int k = 0;
  int pool_size = 0;
  bool exact_width = false;
  std::uint64_t seed = 0;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

std::string family_name(GeneratorFamily family);
GeneratorFamily parse_family(std::string_view name);

// Generates and then re-derives the metrics, throwing InvariantViolation if
// the output breaks the family's contract.
Dnf generate(const GeneratorSpec& spec);
void check_contract(const GeneratorSpec& spec, const Dnf& dnf);

}  // namespace dnfourier
