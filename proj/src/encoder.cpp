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

#include "dnfourier/encoder.hpp"

#include <algorithm>

#include "dnfourier/errors.hpp"

namespace dnfourier {

namespace {

VarMask universe(int n) { return n >= 64 ? ~VarMask{0} : (VarMask{1} << n) - 1; }

// Variables of `mask` in ascending order, 0-based.
std::vector<int> ascending_vars(VarMask mask) {
  std::vector<int> vars;
  for (; mask != 0; mask &= mask - 1) vars.push_back(std::countr_zero(mask));
  return vars;
}

void claim(bool condition, const char* what) {
  if (!condition) throw InvariantViolation(std::string("encoder claim failed: ") + what);
}

}  // namespace

SwitchingEncoder::SwitchingEncoder(Dnf dnf) : dnf_(std::move(dnf)), f_(evaluate(dnf_)) {}

SwitchingEncoder::SwitchingEncoder(Dnf dnf, BooleanFunction f) : dnf_(std::move(dnf)), f_(std::move(f)) {
  if (f_.num_vars() != dnf_.num_vars()) throw DimensionMismatch("truth table and DNF disagree on n");
}

bool SwitchingEncoder::is_full_depth(const Restriction& r) {
  validate_restriction(f_.num_vars(), r);
  if (popcount(r.free_vars) > kDecisionTreeCap) throw CapExceeded("free set larger than the decision-tree cap");
  return dt_.is_evasive(restrict(f_, r));
}

EncodeResult SwitchingEncoder::encode(const Restriction& r) { return run(r, true); }

CoverRecord SwitchingEncoder::extract_cover(const Restriction& r) { return run(r, false).cover; }

EncodeResult SwitchingEncoder::run(const Restriction& r, bool materialize) {
  if (!is_full_depth(r)) {
    throw PreconditionError("restriction is not full depth: DT(f_{S|x}) < |S|");
  }
  const VarMask all = universe(f_.num_vars());
  const VarMask subset = r.free_vars;
  const int d = popcount(subset);

  VarMask still_free = subset;         // S'
  std::uint64_t x_dt = r.fixed_values;  // values outside S' (bits in S' stay 0)
  std::uint64_t x_sat = r.fixed_values;
  VarMask recovered = 0;  // union of the blocks S_j
  std::vector<int> c;
  VarMask c_mask = 0;
  EncodeResult result;

  while (still_free != 0) {
    const VarMask fixed = all & ~still_free;
    claim(dt_.is_evasive(restrict(f_, {still_free, x_dt & fixed})), "(i) DT(f_{S'|x_dt}) = |S'| at loop start");

    // First term not falsified by x_dt.
    std::size_t j = dnf_.terms().size();
    for (std::size_t t = 0; t < dnf_.terms().size(); ++t) {
      TermStatus status = dnf_.term(t).status(fixed, x_dt);
      if (status == TermStatus::kFalsified) continue;
      claim(status == TermStatus::kAlive, "first unfixed term is satisfied although f is undecided");
      j = t;
      break;
    }
    claim(j < dnf_.terms().size(), "no term is alive although f is undecided");
    claim(result.cover.term_indices.empty() || result.cover.term_indices.back() < j, "term indices increase");
    const Term& term = dnf_.term(j);

    const VarMask block = term.vars() & still_free;  // S_j
    claim(block != 0, "selected term has a free variable");
    const std::vector<int> block_vars = ascending_vars(block);
    const int m = static_cast<int>(block_vars.size());
    const VarMask remaining = still_free & ~block;

    // Smallest depth-preserving assignment; the lowest variable is the most
    // significant position and false sorts before true.
    std::uint64_t dt_values = 0;
    bool found = false;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << m) && !found; ++code) {
      std::uint64_t values = 0;
      for (int i = 0; i < m; ++i) {
        if ((code >> (m - 1 - i)) & 1) values |= VarMask{1} << block_vars[static_cast<std::size_t>(i)];
      }
      if (dt_.is_evasive(restrict(f_, {remaining, (x_dt | values) & ~remaining}))) {
        dt_values = values;
        found = true;
      }
    }
    claim(found, "(ii) a depth-preserving assignment exists");

    x_sat |= term.positive_mask() & block;
    x_dt |= dt_values;
    still_free = remaining;
    recovered |= block;
    result.cover.term_indices.push_back(j);
    if (materialize) {
      for (int v : block_vars) result.encoding.a.push_back((dt_values >> v) & 1);
    }
    for (int v : ascending_vars(term.vars() & ~c_mask)) c.push_back(v);
    c_mask |= term.vars();
  }

  claim(recovered == subset, "(iii) S is the union of the blocks S_j");
  claim((subset & ~c_mask) == 0, "(iv) c contains every variable of S");
  claim(static_cast<std::int64_t>(c.size()) <= static_cast<std::int64_t>(dnf_.width()) * d, "(v) |c| <= w d");

  result.cover.union_size = static_cast<int>(c.size());
  if (materialize) {
    result.encoding.x_sat = x_sat;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if ((subset >> c[k]) & 1) result.encoding.sigma.push_back(static_cast<int>(k) + 1);
    }
    claim(static_cast<int>(result.encoding.sigma.size()) == d && static_cast<int>(result.encoding.a.size()) == d,
          "|sigma| = |a| = d");
  }
  return result;
}

Restriction SwitchingEncoder::decode(const Encoding& e) const {
  const int n = dnf_.num_vars();
  const std::size_t d = e.sigma.size();
  if (e.a.size() != d) throw DecodeError("sigma and a have different lengths");
  if (e.x_sat & ~universe(n)) throw DecodeError("x_sat assigns a variable beyond n");
  for (std::size_t i = 0; i < d; ++i) {
    if (e.sigma[i] < 1 || (i > 0 && e.sigma[i] <= e.sigma[i - 1])) {
      throw DecodeError("sigma must be strictly increasing positive positions");
    }
  }

  std::uint64_t x = e.x_sat;
  VarMask found = 0;
  std::size_t found_count = 0;
  std::vector<int> c;
  VarMask c_mask = 0;
  std::size_t sigma_next = 0;  // first sigma entry not yet inside c

  while (found_count < d) {
    std::size_t j = dnf_.terms().size();
    for (std::size_t t = 0; t < dnf_.terms().size(); ++t) {
      if (dnf_.term(t).satisfied_by(x)) {
        j = t;
        break;
      }
    }
    if (j == dnf_.terms().size()) throw DecodeError("no satisfied term while variables remain to be found");
    const Term& term = dnf_.term(j);
    for (int v : ascending_vars(term.vars() & ~c_mask)) c.push_back(v);
    c_mask |= term.vars();

    VarMask block = 0;
    while (sigma_next < d && static_cast<std::size_t>(e.sigma[sigma_next]) <= c.size()) {
      block |= VarMask{1} << c[static_cast<std::size_t>(e.sigma[sigma_next]) - 1];
      ++sigma_next;
    }
    block &= ~found;
    if (block == 0) throw DecodeError("sigma selects no new variable of the satisfied term");
    std::size_t a_pos = found_count;
    for (int v : ascending_vars(block)) {
      const VarMask bit = VarMask{1} << v;
      x = e.a[a_pos++] ? (x | bit) : (x & ~bit);
    }
    found |= block;
    found_count = static_cast<std::size_t>(popcount(found));
  }
  return Restriction{found, x & ~found};
}

EncodeResult encode(const Dnf& dnf, const Restriction& r) { return SwitchingEncoder(dnf).encode(r); }

Restriction decode(const Dnf& dnf, const Encoding& e) { return SwitchingEncoder(dnf).decode(e); }

CoverRecord extract_cover(const Dnf& dnf, const Restriction& r) { return SwitchingEncoder(dnf).extract_cover(r); }

}  // namespace dnfourier
