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
#include <string_view>
#include <vector>

#include "dnfourier/boolean_function.hpp"

namespace dnfourier {

// Largest variable count a Dnf can name (masks are 64-bit). Evaluation to a
// truth table is further limited by kVariableCap.
inline constexpr int kDnfVariableLimit = 64;

struct Literal {
  int var;  // 0-based
  bool positive;

  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class TermStatus { kFalsified, kSatisfied, kAlive };

// Conjunction of literals. Literal order is kept as given (for faithful
// serialization) but carries no meaning; the empty term is constant true.
class Term {
 public:
  Term() = default;
  // Rejects repeated variables and complementary pairs.
  explicit Term(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return literals_; }
  int width() const { return static_cast<int>(literals_.size()); }
  VarMask vars() const { return positive_ | negative_; }
  VarMask positive_mask() const { return positive_; }
  VarMask negative_mask() const { return negative_; }

  bool satisfied_by(std::uint64_t x) const { return (x & vars()) == positive_; }
  // Status under the partial assignment that fixes `fixed` to `values`.
  TermStatus status(VarMask fixed, std::uint64_t values) const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  std::vector<Literal> literals_;
  VarMask positive_ = 0;
  VarMask negative_ = 0;
};

struct DnfMetrics {
  int size = 0;   // s
  int width = 0;  // w
  int read = 0;   // k

  friend bool operator==(const DnfMetrics&, const DnfMetrics&) = default;
};

// T_1 v ... v T_s over n variables. Term order is part of the value: the
// switching encoder scans terms first to last.
class Dnf {
 public:
  Dnf(int n, std::vector<Term> terms);

  int num_vars() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& term(std::size_t j) const { return terms_[j]; }

  int size() const { return static_cast<int>(terms_.size()); }
  int width() const;
  int read() const;
  DnfMetrics metrics() const { return {size(), width(), read()}; }
  bool has_uniform_width() const;

  bool operator()(std::uint64_t x) const;

  friend bool operator==(const Dnf&, const Dnf&) = default;

 private:
  int n_;
  std::vector<Term> terms_;
};

// Truth table of the DNF. OpenMP-parallel over 64-input blocks.
BooleanFunction evaluate(const Dnf& dnf);
// One input at a time; reference for evaluate.
BooleanFunction evaluate_serial(const Dnf& dnf);

// Keeps exactly the terms of width <= w, in order.
Dnf truncate_width(const Dnf& dnf, int w);

// 0-based indices of the terms satisfied by the full assignment x.
std::vector<std::size_t> satisfied_terms(const Dnf& dnf, std::uint64_t x);

// Text format:
//   n=<int>
//   1 -3 4      one term per line; -v negates variable v (1-based)
//   *           the empty (constant-true) term
//   # comment   blank lines and comments are ignored
Dnf parse_dnf_text(std::string_view text);
std::string to_text(const Dnf& dnf);

}  // namespace dnfourier
