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

#include "dnfourier/covers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "dnfourier/encoder.hpp"
#include "dnfourier/errors.hpp"

namespace dnfourier {

namespace {

VarMask universe(int n) { return n >= 64 ? ~VarMask{0} : (VarMask{1} << n) - 1; }

DyadicRational integer(const BigInt& value) { return DyadicRational(value, 0); }

DyadicRational integer(std::uint64_t value) { return DyadicRational(BigInt(value), 0); }

class CoverEnumerator {
 public:
  CoverEnumerator(std::vector<VarMask> candidates, VarMask subset, int max_terms)
      : candidates_(std::move(candidates)), subset_(subset), max_terms_(max_terms) {}

  std::map<int, std::uint64_t> run() {
    visit(0, max_terms_, 0);
    return counts_;
  }

 private:
  void visit(std::size_t start, int terms_left, VarMask covered) {
    if ((subset_ & ~covered) == 0) ++counts_[popcount(covered)];
    if (terms_left == 0) return;
    for (std::size_t i = start; i < candidates_.size(); ++i) visit(i + 1, terms_left - 1, covered | candidates_[i]);
  }

  std::vector<VarMask> candidates_;
  VarMask subset_;
  int max_terms_;
  std::map<int, std::uint64_t> counts_;
};

}  // namespace

std::map<int, std::uint64_t> cover_counts_by_union(const Dnf& dnf, VarMask subset, CoverScope scope) {
  if (subset & ~universe(dnf.num_vars())) throw PreconditionError("subset mentions a variable beyond n");
  std::vector<VarMask> candidates;
  for (const Term& t : dnf.terms()) {
    if (scope == CoverScope::kAllTerms || (t.vars() & subset) != 0) candidates.push_back(t.vars());
  }
  const int d = popcount(subset);
  BigInt visits = 0;
  for (int i = 0; i <= d; ++i) visits += binomial(static_cast<std::int64_t>(candidates.size()), i);
  if (visits > kCoverEnumerationCap) throw CapExceeded("too many term subsets to enumerate covers");
  return CoverEnumerator(std::move(candidates), subset, d).run();
}

std::uint64_t num_covers(const Dnf& dnf, VarMask subset, int union_size, CoverScope scope) {
  auto counts = cover_counts_by_union(dnf, subset, scope);
  auto it = counts.find(union_size);
  return it == counts.end() ? 0 : it->second;
}

FamilyClassification::FamilyClassification(Dnf dnf, FourierSpectrum spectrum, int d_max,
                                           std::vector<SubsetProfile> profiles)
    : dnf_(std::move(dnf)),
      spectrum_(std::move(spectrum)),
      d_max_(d_max),
      width_(dnf_.width()),
      profiles_(std::move(profiles)) {
  const unsigned n = static_cast<unsigned>(dnf_.num_vars());
  std::map<FamilyKey, std::pair<std::int64_t, std::int64_t>> sums;  // (sum |c|, sum c^2), scaled
  std::map<FamilyKey, std::int64_t> max_abs;
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const SubsetProfile& p = profiles_[i];
    index_.emplace(p.subset, i);
    if (!p.family_u) continue;
    FamilyKey key{p.d, *p.family_u};
    FamilyStats& stats = families_[key];
    stats.key = key;
    stats.members.push_back(p.subset);
    const std::int64_t c = p.scaled_coefficient;
    sums[key].first += std::abs(c);
    sums[key].second += c * c;
    max_abs[key] = std::max(max_abs[key], std::abs(c));
    stats.max_num_covers = std::max(stats.max_num_covers, num_covers(dnf_, p.subset, key.u));
  }
  for (auto& [key, stats] : families_) {
    stats.one_norm = DyadicRational(BigInt(sums[key].first), n);
    stats.two_norm_sq = DyadicRational(BigInt(sums[key].second), 2 * n);
    stats.max_abs_coeff = DyadicRational(BigInt(max_abs[key]), n);
  }
}

const SubsetProfile& FamilyClassification::profile(VarMask subset) const {
  auto it = index_.find(subset);
  if (it == index_.end()) throw PreconditionError("subset was not classified (|S| > d_max?)");
  return profiles_[it->second];
}

FamilyStats FamilyClassification::family(FamilyKey key) const {
  auto it = families_.find(key);
  if (it != families_.end()) return it->second;
  FamilyStats empty;
  empty.key = key;
  return empty;
}

std::uint64_t FamilyClassification::full_depth_pairs(int d) const {
  std::uint64_t total = 0;
  for (const SubsetProfile& p : profiles_) {
    if (p.d == d) total += p.full_depth_count;
  }
  return total;
}

std::uint64_t FamilyClassification::full_depth_pairs(int d, int u) const {
  std::uint64_t total = 0;
  for (const SubsetProfile& p : profiles_) {
    if (p.d != d) continue;
    if (auto it = p.full_depth_by_union.find(u); it != p.full_depth_by_union.end()) total += it->second;
  }
  return total;
}

FamilyClassification classify_families(const Dnf& dnf, int d_max, int workers) {
  const int n = dnf.num_vars();
  check_variable_count(n);
  if (d_max < 0) throw PreconditionError("d_max must be non-negative");
  d_max = std::min(d_max, n);
  if (d_max > kDecisionTreeCap) throw CapExceeded("d_max exceeds the decision-tree cap");

  const BooleanFunction f = evaluate(dnf);
  FourierSpectrum spectrum = fourier_transform(f);

  std::vector<VarMask> subsets;
  for (VarMask s = 0; s < (VarMask{1} << n); ++s) {
    if (popcount(s) <= d_max) subsets.push_back(s);
  }
  std::vector<SubsetProfile> profiles(subsets.size());
  const std::int64_t count = static_cast<std::int64_t>(subsets.size());
  const VarMask all = universe(n);
  std::string first_error;

#pragma omp parallel num_threads(std::max(1, workers))
  {
    SwitchingEncoder encoder(dnf, f);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        const VarMask subset = subsets[static_cast<std::size_t>(i)];
        SubsetProfile& p = profiles[static_cast<std::size_t>(i)];
        p.subset = subset;
        p.d = popcount(subset);
        p.scaled_coefficient = spectrum.scaled(subset);
        std::map<int, std::set<std::vector<std::size_t>>> distinct;
        const VarMask fixed = all & ~subset;
        const std::uint64_t assignments = std::uint64_t{1} << (n - p.d);
        for (std::uint64_t t = 0; t < assignments; ++t) {
          Restriction r{subset, deposit_bits(t, fixed)};
          if (!encoder.is_full_depth(r)) continue;
          CoverRecord cover = encoder.extract_cover(r);
          ++p.full_depth_count;
          ++p.full_depth_by_union[cover.union_size];
          distinct[cover.union_size].insert(std::move(cover.term_indices));
        }
        for (auto& [u, covers] : distinct) p.distinct_covers_by_union[u] = covers.size();
        std::uint64_t best = 0;
        for (const auto& [u, witnesses] : p.full_depth_by_union) {
          if (witnesses > best) {
            best = witnesses;
            p.family_u = u;
          }
        }
      } catch (const std::exception& e) {
#pragma omp critical(classify_error)
        if (first_error.empty()) first_error = e.what();
      }
    }
  }
  if (!first_error.empty()) throw InvariantViolation("family classification failed: " + first_error);
  return FamilyClassification(dnf, std::move(spectrum), d_max, std::move(profiles));
}

namespace {

DyadicRational width_factor(const FamilyClassification& cls, int d) {
  return integer(BigInt(static_cast<std::int64_t>(cls.width()) * d + 1));
}

void require_degree(const FamilyClassification& cls, int d) {
  if (d < 0 || d > cls.d_max()) throw PreconditionError("degree outside the classified range");
}

ExactCheck make_check(DyadicRational lhs, DyadicRational bound) {
  ExactCheck check{std::move(lhs), std::move(bound), false};
  check.holds = check.lhs <= check.bound;
  return check;
}

}  // namespace

ExactCheck check_onenorm_u(const FamilyClassification& cls, int d, int u) {
  require_degree(cls, d);
  DyadicRational bound = width_factor(cls, d) * integer(binomial(u, d)) * DyadicRational::power_of_two(2 * d);
  return make_check(cls.family({d, u}).one_norm, std::move(bound));
}

ExactCheck check_onenorm_u(const Dnf& dnf, int d, int u) { return check_onenorm_u(classify_families(dnf, d), d, u); }

ExactCheck check_onenorm_u_count(const FamilyClassification& cls, int d, int u) {
  require_degree(cls, d);
  DyadicRational bound =
      width_factor(cls, d) * DyadicRational(BigInt(cls.full_depth_pairs(d, u)), static_cast<unsigned>(cls.num_vars() - d));
  return make_check(cls.family({d, u}).one_norm, std::move(bound));
}

ExactCheck check_twonorm_u(const FamilyClassification& cls, int d, int u) {
  require_degree(cls, d);
  const FamilyStats stats = cls.family({d, u});
  DyadicRational factor = width_factor(cls, d);
  DyadicRational bound = factor * factor * integer(binomial(u, d)) * DyadicRational::power_of_two(3 * d - u) *
                         integer(stats.max_num_covers);
  return make_check(stats.two_norm_sq, std::move(bound));
}

ExactCheck check_twonorm_u(const Dnf& dnf, int d, int u) { return check_twonorm_u(classify_families(dnf, d), d, u); }

ExactCheck check_family_cauchy(const FamilyClassification& cls, int d, int u) {
  require_degree(cls, d);
  const FamilyStats stats = cls.family({d, u});
  return make_check(stats.two_norm_sq, stats.one_norm * stats.max_abs_coeff);
}

namespace {

DyadicRational degree_one_norm(const FamilyClassification& cls, int d) {
  std::int64_t sum = 0;
  for (const SubsetProfile& p : cls.profiles()) {
    if (p.d == d) sum += std::abs(p.scaled_coefficient);
  }
  return DyadicRational(BigInt(sum), static_cast<unsigned>(cls.num_vars()));
}

}  // namespace

ExactCheck check_onenorm_degree_count(const FamilyClassification& cls, int d) {
  require_degree(cls, d);
  return make_check(degree_one_norm(cls, d),
                    DyadicRational(BigInt(cls.full_depth_pairs(d)), static_cast<unsigned>(cls.num_vars() - d)));
}

ExactCheck check_onenorm_degree(const FamilyClassification& cls, int d) {
  require_degree(cls, d);
  const std::int64_t wd = static_cast<std::int64_t>(cls.width()) * d;
  return make_check(degree_one_norm(cls, d), integer(binomial(wd, d)) * DyadicRational::power_of_two(2 * d));
}

ExactCheck check_full_depth_pairs(const FamilyClassification& cls, int d) {
  require_degree(cls, d);
  const std::int64_t wd = static_cast<std::int64_t>(cls.width()) * d;
  return make_check(integer(cls.full_depth_pairs(d)),
                    integer(binomial(wd, d)) * DyadicRational::power_of_two(cls.num_vars() + d));
}

AbsFourierCheck check_abs_fourier_u(const FamilyClassification& cls, VarMask subset) {
  const SubsetProfile& p = cls.profile(subset);
  if (!p.family_u) throw PreconditionError("subset has no full-depth restriction and belongs to no family");
  AbsFourierCheck check;
  check.subset = subset;
  check.key = {p.d, *p.family_u};
  const int d = p.d;
  const int u = *p.family_u;
  const unsigned n = static_cast<unsigned>(cls.num_vars());
  check.abs_coeff = DyadicRational(BigInt(std::abs(p.scaled_coefficient)), n);
  check.probability = DyadicRational(BigInt(p.full_depth_by_union.at(u)), n - static_cast<unsigned>(d));
  check.distinct_covers = p.distinct_covers_by_union.at(u);
  check.num_covers = num_covers(cls.dnf(), subset, u);
  check.abs_bound = width_factor(cls, d) * check.probability;
  check.cover_values_bound = integer(check.distinct_covers) * DyadicRational::power_of_two(d - u);
  check.num_covers_bound = integer(check.num_covers) * DyadicRational::power_of_two(d - u);
  check.abs_holds = check.abs_coeff <= check.abs_bound;
  check.cover_values_holds = check.probability <= check.cover_values_bound;
  check.num_covers_holds = check.distinct_covers <= check.num_covers;
  return check;
}

AbsFourierCheck check_abs_fourier_u(const Dnf& dnf, VarMask subset) {
  return check_abs_fourier_u(classify_families(dnf, popcount(subset)), subset);
}

ReadCoverBound read_cover_count_bound(const Dnf& dnf, VarMask subset) {
  ReadCoverBound result;
  for (const auto& [u, count] : cover_counts_by_union(dnf, subset)) result.count += count;
  const std::int64_t d = popcount(subset);
  const std::int64_t kd = static_cast<std::int64_t>(dnf.read()) * d;
  result.bound = 0;
  for (std::int64_t i = 0; i <= d; ++i) result.bound += binomial(kd, i);
  result.binomial_bound = binomial(kd + d, d);
  result.holds = BigInt(result.count) <= result.bound;
  // 2718281828/10^9 < e, so clearing this rational bound clears (e(k+1))^d.
  Rational e_lower(BigInt(2718281828), BigInt(1000000000));
  Rational power = 1;
  for (std::int64_t i = 0; i < d; ++i) power *= e_lower * (dnf.read() + 1);
  result.chain_holds = result.bound <= result.binomial_bound && Rational(result.binomial_bound) <= power;
  return result;
}

ExactWidthCoverBound exact_width_cover_bound(const Dnf& dnf, VarMask subset, int union_size) {
  if (!dnf.has_uniform_width()) throw PreconditionError("terms do not all have the same width");
  const int w = dnf.width();
  if (w == 0) throw PreconditionError("exact-width bound needs positive width");
  ExactWidthCoverBound result;
  result.count = num_covers(dnf, subset, union_size);
  const std::int64_t k = dnf.read();
  const std::int64_t kd = k * popcount(subset);
  const std::int64_t max_terms = union_size < 0 ? -1 : k * union_size / w;
  result.bound = 0;
  for (std::int64_t i = 0; i <= max_terms; ++i) result.bound += binomial(kd, i);
  result.holds = BigInt(result.count) <= result.bound;
  return result;
}

namespace {

// Encloses atanh(z) = sum_m z^(2m+1)/(2m+1) for 0 <= z <= 1/3.
LogEnclosure atanh_enclosure(const Rational& z, int precision_bits) {
  const Rational z2 = z * z;
  const Rational tolerance(BigInt(1), BigInt(1) << static_cast<unsigned>(precision_bits));
  const Rational one_minus = Rational(1) - z2;
  Rational power = z;  // z^(2m+1)
  Rational sum = 0;
  for (int m = 0;; ++m) {
    sum += power / (2 * m + 1);
    power *= z2;
    Rational tail = power / (Rational(2 * m + 3) * one_minus);
    if (tail <= tolerance) return {sum, sum + tail};
  }
}

// Outward rounding to multiples of 2^-bits keeps later arithmetic small.
Rational round_down(const Rational& x, int bits) {
  const BigInt scale = BigInt(1) << static_cast<unsigned>(bits);
  Rational scaled = x * scale;
  BigInt q = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  if (Rational(q) > scaled) q -= 1;
  return Rational(q, scale);
}

Rational round_up(const Rational& x, int bits) { return -round_down(-x, bits); }

}  // namespace

LogEnclosure ln_enclosure(const Rational& q, int precision_bits) {
  if (q < 1) throw PreconditionError("ln_enclosure expects q >= 1");
  if (q == 1) return {0, 0};
  const std::int64_t exponent = floor_log2(q);
  const Rational r = q / Rational(BigInt(1) << static_cast<unsigned>(exponent));  // in [1, 2)
  const int bits = precision_bits + 8;
  LogEnclosure ln_r = atanh_enclosure((r - 1) / (r + 1), bits);
  LogEnclosure ln_2 = atanh_enclosure(Rational(1, 3), bits);
  Rational lower = 2 * (ln_2.lower * exponent + ln_r.lower);
  Rational upper = 2 * (ln_2.upper * exponent + ln_r.upper);
  return {round_down(lower, bits), round_up(upper, bits)};
}

StInequalityCheck st_inequality_check(const Dnf& dnf) {
  StInequalityCheck check;
  for (const Term& t : dnf.terms()) check.lhs += DyadicRational::power_of_two(-t.width());
  const BooleanFunction f = evaluate(dnf);
  check.bias = f.bias();
  check.read = dnf.read();
  const std::uint64_t size = f.table_size();
  const std::uint64_t ones = f.count_ones();
  if (ones == size) {
    check.vacuous = true;
    check.holds = true;
    return check;
  }
  const Rational q(BigInt(size), BigInt(size - ones));
  const Rational lhs = check.lhs.to_rational();
  for (int bits = 64; bits <= (1 << 14); bits *= 2) {
    LogEnclosure ln = ln_enclosure(q, bits);
    check.rhs_lower = ln.lower * check.read;
    check.rhs_upper = ln.upper * check.read;
    if (lhs <= check.rhs_lower) {
      check.holds = true;
      return check;
    }
    if (lhs > check.rhs_upper) {
      check.holds = false;
      return check;
    }
  }
  throw InvariantViolation("could not separate sum 2^-|T_j| from k ln(1/(1-Pr[f]))");
}

BudgetCheck budget_lemma_bound(const std::vector<int>& sizes, std::int64_t v, const Rational& weight_budget) {
  std::int64_t total_size = 0;
  Rational total_weight = 0;
  for (int s : sizes) {
    if (s < 0) throw PreconditionError("set sizes must be non-negative");
    total_size += s;
    total_weight += Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(s));
  }
  if (total_size > v) {
    throw BudgetPreconditionError(BudgetViolation::kSizeBudget, "sum of set sizes exceeds v");
  }
  if (weight_budget <= 0) {
    throw BudgetPreconditionError(BudgetViolation::kNonPositiveWeight, "F must be positive");
  }
  if (total_weight > weight_budget) {
    throw BudgetPreconditionError(BudgetViolation::kWeightBudget, "sum of 2^-|A_r| exceeds F");
  }
  if (Rational(v) <= weight_budget) throw BudgetPreconditionError(BudgetViolation::kGap, "v must exceed F");
  if (v > (std::int64_t{1} << 20)) throw CapExceeded("v too large for the exact comparison");

  BudgetCheck check;
  check.count = sizes.size();
  check.bound = 4.0 * static_cast<double>(v) / std::log2(static_cast<double>(v) / rational_to_double(weight_budget));
  // l <= 4v / log2(v/F)  <=>  (v/F)^l <= 2^(4v)  <=>  (v q)^l <= p^l 2^(4v)  for F = p/q.
  const BigInt& p = boost::multiprecision::numerator(weight_budget);
  const BigInt& q = boost::multiprecision::denominator(weight_budget);
  const unsigned l = static_cast<unsigned>(check.count);
  BigInt lhs = boost::multiprecision::pow(BigInt(v) * q, l);
  BigInt rhs = boost::multiprecision::pow(p, l) << static_cast<unsigned>(4 * v);
  check.holds = lhs <= rhs;
  return check;
}

}  // namespace dnfourier
