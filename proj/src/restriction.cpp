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

#include "dnfourier/restriction.hpp"

#include <cstdlib>

#include "json.hpp"

#include "dnfourier/errors.hpp"

namespace dnfourier {

namespace {

// Thread-local memo tables are dropped past this size.
constexpr std::size_t kMemoLimit = std::size_t{1} << 21;

VarMask universe(int n) { return n >= 64 ? ~VarMask{0} : (VarMask{1} << n) - 1; }

std::int64_t scaled_coefficient(const BooleanFunction& f, VarMask subset) {
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < f.table_size(); ++x) {
    if (f(x)) sum += (popcount(x & subset) & 1) ? -1 : 1;
  }
  return sum;
}

}  // namespace

std::uint64_t deposit_bits(std::uint64_t packed, VarMask mask) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; mask != 0; bit <<= 1) {
    VarMask lowest = mask & (~mask + 1);
    if (packed & bit) out |= lowest;
    mask &= mask - 1;
  }
  return out;
}

void validate_restriction(int n, const Restriction& r) {
  if (r.free_vars & ~universe(n)) throw PreconditionError("restriction frees a variable beyond n");
  if (r.fixed_values & ~universe(n)) throw PreconditionError("restriction fixes a variable beyond n");
  if (r.fixed_values & r.free_vars) throw PreconditionError("restriction assigns a free variable");
}

BooleanFunction restrict(const BooleanFunction& f, const Restriction& r) {
  validate_restriction(f.num_vars(), r);
  const int m = popcount(r.free_vars);
  std::vector<std::uint64_t> words(word_count(m), 0);
  const std::uint64_t size = std::uint64_t{1} << m;
  for (std::uint64_t y = 0; y < size; ++y) {
    if (f(deposit_bits(y, r.free_vars) | r.fixed_values)) words[y >> 6] |= std::uint64_t{1} << (y & 63);
  }
  return BooleanFunction(m, std::move(words));
}

std::size_t DtSolver::KeyHash::operator()(const Key& key) const {
  std::size_t seed = static_cast<std::size_t>(key.n);
  for (std::uint64_t w : key.words) {
    seed ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}

int DtSolver::depth(const BooleanFunction& g) {
  if (g.num_vars() > kDecisionTreeCap) {
    throw CapExceeded("dt_depth supports at most " + std::to_string(kDecisionTreeCap) + " variables");
  }
  if (memo_.size() > kMemoLimit) memo_.clear();
  return solve(g);
}

bool DtSolver::is_evasive(const BooleanFunction& g) { return depth(g) == g.num_vars(); }

int DtSolver::solve(const BooleanFunction& g) {
  if (g.is_constant()) return 0;
  const int n = g.num_vars();
  if (n == 1) return 1;
  Key key{n, std::vector<std::uint64_t>(g.words().begin(), g.words().end())};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  int best = n;
  for (int var = 0; var < n && best > 1; ++var) {
    BooleanFunction low = g.cofactor(var, false);
    BooleanFunction high = g.cofactor(var, true);
    if (low == high) {
      // g ignores var, so its depth is that of either cofactor.
      best = solve(low);
      break;
    }
    int d_low = solve(low);
    if (1 + d_low >= best) continue;
    int d_high = solve(high);
    best = std::min(best, 1 + std::max(d_low, d_high));
  }
  memo_.emplace(std::move(key), best);
  return best;
}

DtSolver& thread_dt_solver() {
  thread_local DtSolver solver;
  return solver;
}

int dt_depth(const BooleanFunction& g) { return thread_dt_solver().depth(g); }

std::uint64_t count_full_depth_restrictions(const BooleanFunction& f, VarMask subset) {
  const int n = f.num_vars();
  const int m = popcount(subset);
  if (m > kDecisionTreeCap) throw CapExceeded("subset larger than the decision-tree cap");
  const VarMask fixed = universe(n) & ~subset;
  const std::uint64_t assignments = std::uint64_t{1} << (n - m);
  DtSolver& solver = thread_dt_solver();
  std::uint64_t count = 0;
  for (std::uint64_t t = 0; t < assignments; ++t) {
    Restriction r{subset, deposit_bits(t, fixed)};
    if (solver.is_evasive(restrict(f, r))) ++count;
  }
  return count;
}

BoundCheck evasive_bound_check(const BooleanFunction& f, VarMask subset) {
  const int n = f.num_vars();
  if (subset & ~universe(n)) throw PreconditionError("subset mentions a variable beyond n");
  BoundCheck check;
  check.lhs = DyadicRational(BigInt(std::abs(scaled_coefficient(f, subset))), static_cast<unsigned>(n));
  check.rhs = DyadicRational(BigInt(count_full_depth_restrictions(f, subset)),
                             static_cast<unsigned>(n - popcount(subset)));
  check.holds = check.lhs <= check.rhs;
  return check;
}

BoundCheck evasive_bound_check(const BooleanFunction& f, const FourierSpectrum& spectrum, VarMask subset) {
  if (spectrum.num_vars() != f.num_vars()) throw DimensionMismatch("spectrum and function disagree on n");
  if (subset & ~universe(f.num_vars())) throw PreconditionError("subset mentions a variable beyond n");
  BoundCheck check;
  check.lhs = spectrum.coefficient(subset).abs();
  check.rhs = DyadicRational(BigInt(count_full_depth_restrictions(f, subset)),
                             static_cast<unsigned>(f.num_vars() - popcount(subset)));
  check.holds = check.lhs <= check.rhs;
  return check;
}

namespace {

std::uint64_t count_covered_inputs(const Dnf& dnf, VarMask subset) {
  const std::uint64_t size = std::uint64_t{1} << dnf.num_vars();
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    VarMask covered = 0;
    for (const Term& t : dnf.terms()) {
      if (t.satisfied_by(x)) covered |= t.vars();
    }
    if ((subset & ~covered) == 0) ++count;
  }
  return count;
}

BoundCheck cover_check_from(const Dnf& dnf, DyadicRational lhs, VarMask subset) {
  BoundCheck check;
  check.lhs = std::move(lhs);
  check.rhs = DyadicRational(BigInt(count_covered_inputs(dnf, subset)),
                             static_cast<unsigned>(dnf.num_vars() - popcount(subset)));
  check.holds = check.lhs <= check.rhs;
  return check;
}

}  // namespace

BoundCheck cover_probability_check(const Dnf& dnf, VarMask subset) {
  check_variable_count(dnf.num_vars());
  if (subset & ~universe(dnf.num_vars())) throw PreconditionError("subset mentions a variable beyond n");
  BooleanFunction f = evaluate(dnf);
  DyadicRational lhs(BigInt(std::abs(scaled_coefficient(f, subset))), static_cast<unsigned>(dnf.num_vars()));
  return cover_check_from(dnf, std::move(lhs), subset);
}

BoundCheck cover_probability_check(const Dnf& dnf, const FourierSpectrum& spectrum, VarMask subset) {
  if (spectrum.num_vars() != dnf.num_vars()) throw DimensionMismatch("spectrum and DNF disagree on n");
  if (subset & ~universe(dnf.num_vars())) throw PreconditionError("subset mentions a variable beyond n");
  return cover_check_from(dnf, spectrum.coefficient(subset).abs(), subset);
}

std::string check_json_line(VarMask subset, const BoundCheck& check) {
  nlohmann::ordered_json line;
  line["S_mask"] = subset;
  line["lhs"] = check.lhs.to_string();
  line["rhs"] = check.rhs.to_string();
  line["holds"] = check.holds;
  return line.dump();
}

}  // namespace dnfourier
