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
#include <vector>

#include "dnfourier/boolean_function.hpp"
#include "dnfourier/dnf.hpp"
#include "dnfourier/restriction.hpp"

namespace dnfourier {

// Output of the switching-lemma encoder for a full-depth restriction.
//
//   x_sat  full assignment, bit i set <=> variable i+1 true
//   sigma  1-based positions, within the ordered union c of the selected
//          terms' variables, of the variables of S (ascending)
//   a      the depth-preserving values chosen for S, block by block, each
//          block in ascending variable order (true = variable true)
struct Encoding {
  std::uint64_t x_sat = 0;
  std::vector<int> sigma;
  std::vector<bool> a;

  friend bool operator==(const Encoding&, const Encoding&) = default;
};

// The terms j_1 < ... < j_l picked by the encoder (0-based) and
// u = |T_{j_1} u ... u T_{j_l}|.
struct CoverRecord {
  std::vector<std::size_t> term_indices;
  int union_size = 0;

  friend bool operator==(const CoverRecord&, const CoverRecord&) = default;
};

struct EncodeResult {
  Encoding encoding;
  CoverRecord cover;
};

// Encoder/decoder pair bound to one DNF. Holds the DNF's truth table and a
// private decision-tree memo, so one instance must not be shared between
// threads; build one per worker.
class SwitchingEncoder {
 public:
  explicit SwitchingEncoder(Dnf dnf);
  SwitchingEncoder(Dnf dnf, BooleanFunction f);

  const Dnf& dnf() const { return dnf_; }
  const BooleanFunction& function() const { return f_; }

  // DT(f_{S|x_Sbar}) = |S|.
  bool is_full_depth(const Restriction& r);

  // Requires is_full_depth(r); throws PreconditionError otherwise. Every loop
  // iteration re-checks the encoder's correctness claims and throws
  // InvariantViolation if one fails.
  EncodeResult encode(const Restriction& r);
  CoverRecord extract_cover(const Restriction& r);

  // Inverts encode(). Throws DecodeError on inputs encode() cannot produce
  // when the inconsistency is detectable (no satisfied term, sigma pointing
  // past the recovered union, sigma/a length mismatch).
  Restriction decode(const Encoding& e) const;

 private:
  EncodeResult run(const Restriction& r, bool materialize);

  Dnf dnf_;
  BooleanFunction f_;
  DtSolver dt_;
};

EncodeResult encode(const Dnf& dnf, const Restriction& r);
Restriction decode(const Dnf& dnf, const Encoding& e);
CoverRecord extract_cover(const Dnf& dnf, const Restriction& r);

}  // namespace dnfourier
