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
#include <unordered_map>
#include <vector>

#include "dnfourier/boolean_function.hpp"
#include "dnfourier/dnf.hpp"
#include "dnfourier/fourier.hpp"

namespace dnfourier {

// Largest arity dt_depth accepts.
inline constexpr int kDecisionTreeCap = 12;

// f_{S | x_Sbar}: the variables of `free_vars` stay free, every other variable
// is fixed to its bit in `fixed_values`. Bits of `fixed_values` inside
// `free_vars` must be clear.
struct Restriction {
  VarMask free_vars = 0;
  std::uint64_t fixed_values = 0;

  friend bool operator==(const Restriction&, const Restriction&) = default;
};

// Throws PreconditionError unless r partitions the n variables.
void validate_restriction(int n, const Restriction& r);

// Function on |S| variables; free variables are renumbered in ascending order.
BooleanFunction restrict(const BooleanFunction& f, const Restriction& r);

// Spreads the low popcount(mask) bits of `packed` onto the set bits of `mask`.
std::uint64_t deposit_bits(std::uint64_t packed, VarMask mask);

// Exact decision-tree depth by the min-max recursion, memoized on the truth
// table of each subfunction.
//
// Not thread-safe: give each worker its own solver. The free function
// dt_depth() uses a thread-local one.
class DtSolver {
 public:
  int depth(const BooleanFunction& g);
  // DT(g) == g.num_vars(), with early exit.
  bool is_evasive(const BooleanFunction& g);

  std::size_t memo_size() const { return memo_.size(); }
  void clear() { memo_.clear(); }

 private:
  struct Key {
    int n;
    std::vector<std::uint64_t> words;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const;
  };

  int solve(const BooleanFunction& g);

  std::unordered_map<Key, int, KeyHash> memo_;
};

int dt_depth(const BooleanFunction& g);

// Thread-local solver shared by the free functions in this header.
DtSolver& thread_dt_solver();

// lhs <= rhs, both exact.
struct BoundCheck {
  DyadicRational lhs;
  DyadicRational rhs;
  bool holds = false;
};

// Number of assignments x_Sbar (out of 2^(n-|S|)) with DT(f_{S|x_Sbar}) = |S|.
std::uint64_t count_full_depth_restrictions(const BooleanFunction& f, VarMask subset);

// |f^(S)| <= Pr_{x_Sbar}[DT(f_{S|x_Sbar}) = |S|].
BoundCheck evasive_bound_check(const BooleanFunction& f, VarMask subset);
BoundCheck evasive_bound_check(const BooleanFunction& f, const FourierSpectrum& spectrum, VarMask subset);

// |f^(S)| <= 2^|S| Pr_x[every variable of S lies in some satisfied term].
BoundCheck cover_probability_check(const Dnf& dnf, VarMask subset);
BoundCheck cover_probability_check(const Dnf& dnf, const FourierSpectrum& spectrum, VarMask subset);

// One JSON line {"S_mask", "lhs", "rhs", "holds"} for streaming per-check logs.
std::string check_json_line(VarMask subset, const BoundCheck& check);

}  // namespace dnfourier
