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

#include "doctest.h"

#include <cmath>

#include "dnfourier/covers.hpp"
#include "dnfourier/errors.hpp"
#include "dnfourier/generators.hpp"
#include "oracles.hpp"

using namespace dnfourier;

namespace {

Dnf dnf(std::string_view text) { return parse_dnf_text(text); }

DyadicRational dy(std::string_view text) { return DyadicRational::parse(text); }

}  // namespace

TEST_CASE("num_covers examples") {
  Dnf pairs = dnf("n=4\n1 2\n3 4\n");
  CHECK(num_covers(pairs, 0b0101, 4) == 1);
  CHECK(num_covers(pairs, 0b0101, 3) == 0);
  Dnf nested = dnf("n=2\n1\n1 2\n");
  CHECK(num_covers(nested, 0b01, 1) == 1);
  CHECK(num_covers(nested, 0b01, 2) == 1);
  CHECK(num_covers(pairs, 0, 0) == 1);
  CHECK(num_covers(nested, 0, 0) == 1);
}

TEST_CASE("terms disjoint from S only count under the verbatim scope") {
  Dnf d = dnf("n=3\n1\n2 3\n");
  CHECK(cover_counts_by_union(d, 0b001) == std::map<int, std::uint64_t>{{1, 1}});
  CHECK(cover_counts_by_union(d, 0b001, CoverScope::kAllTerms) == std::map<int, std::uint64_t>{{1, 1}});
  CHECK(cover_counts_by_union(d, 0b011, CoverScope::kAllTerms) == std::map<int, std::uint64_t>{{3, 1}});
  // A wide term covers S alone; padding it with a disjoint term is a
  // cover only under the verbatim scope.
  Dnf padded = dnf("n=3\n1 2\n3\n");
  CHECK(cover_counts_by_union(padded, 0b011) == std::map<int, std::uint64_t>{{2, 1}});
  CHECK(cover_counts_by_union(padded, 0b011, CoverScope::kAllTerms) == std::map<int, std::uint64_t>{{2, 1}, {3, 1}});
}

TEST_CASE("cover enumeration matches the unpruned oracle") {
  for (const Dnf& d : oracle::corpus(120, 55)) {
    const VarMask all = (VarMask{1} << d.num_vars()) - 1;
    for (VarMask s = 0; s <= all; ++s) {
      if (std::popcount(s) > 4) continue;
      REQUIRE(cover_counts_by_union(d, s) == oracle::cover_counts(d, s, true));
      REQUIRE(cover_counts_by_union(d, s, CoverScope::kAllTerms) == oracle::cover_counts(d, s, false));
    }
  }
}

TEST_CASE("classification examples") {
  FamilyClassification single = classify_families(dnf("n=2\n1 2\n"), 2);
  REQUIRE(single.profile(0b11).family_u.has_value());
  CHECK(*single.profile(0b11).family_u == 2);

  FamilyClassification pairs = classify_families(dnf("n=4\n1 2\n3 4\n"), 2);
  CHECK(*pairs.profile(0b0101).family_u == 4);
  CHECK(*pairs.profile(0).family_u == 0);

  FamilyClassification zero = classify_families(dnf("n=3\n"), 3);
  for (const SubsetProfile& p : zero.profiles()) {
    if (p.subset != 0) CHECK_FALSE(p.family_u.has_value());
  }
  CHECK(zero.families().size() == 1);  // only the empty set, whose coefficient is 0
  CHECK(zero.family({0, 0}).one_norm.is_zero());
}

TEST_CASE("classification does not depend on the worker count") {
  Dnf d = random_read_k(8, 5, 3, 2, false, 21);
  FamilyClassification one = classify_families(d, 4, 1);
  FamilyClassification many = classify_families(d, 4, 4);
  REQUIRE(one.profiles().size() == many.profiles().size());
  for (std::size_t i = 0; i < one.profiles().size(); ++i) {
    CHECK(one.profiles()[i].family_u == many.profiles()[i].family_u);
    CHECK(one.profiles()[i].full_depth_by_union == many.profiles()[i].full_depth_by_union);
  }
}

TEST_CASE("family bounds on the worked examples") {
  Dnf and2 = dnf("n=2\n1 2\n");
  ExactCheck one = check_onenorm_u(and2, 2, 2);
  CHECK(one.lhs == dy("1/2^2"));
  CHECK(one.bound == DyadicRational(80));
  CHECK(one.holds);
  ExactCheck empty = check_onenorm_u(and2, 1, 5);
  CHECK(empty.lhs.is_zero());
  CHECK(empty.holds);

  AbsFourierCheck abs = check_abs_fourier_u(and2, 0b11);
  CHECK(abs.abs_coeff == dy("1/2^2"));
  CHECK(abs.abs_bound == DyadicRational(5));
  CHECK(abs.probability == DyadicRational(1));
  CHECK(abs.num_covers_bound == DyadicRational(1));
  CHECK(abs.holds());

  Dnf pairs = dnf("n=4\n1 2\n3 4\n");
  AbsFourierCheck p = check_abs_fourier_u(pairs, 0b0101);
  CHECK(p.abs_coeff == dy("1/2^4"));
  CHECK(p.key.u == 4);
  CHECK(p.probability == dy("1/2^2"));
  CHECK(p.num_covers_bound == dy("1/2^2"));
  CHECK(p.holds());

  Dnf constant = dnf("n=3\n*\n");
  CHECK_THROWS_AS(check_abs_fourier_u(constant, 0b001), PreconditionError);

  ExactCheck two = check_twonorm_u(and2, 2, 2);
  CHECK(two.lhs == dy("1/2^4"));
  CHECK(two.holds);
}

TEST_CASE("every family check holds on the corpus") {
  for (const Dnf& d : oracle::corpus(80, 909)) {
    const int d_max = std::min(3, d.num_vars());
    FamilyClassification cls = classify_families(d, d_max);
    for (int deg = 0; deg <= d_max; ++deg) {
      REQUIRE(check_onenorm_degree_count(cls, deg).holds);
      REQUIRE(check_onenorm_degree(cls, deg).holds);
      REQUIRE(check_full_depth_pairs(cls, deg).holds);
    }
    for (const auto& [key, stats] : cls.families()) {
      REQUIRE(key.d <= key.u);
      REQUIRE(key.u <= std::max(d.width() * key.d, 0));
      REQUIRE(check_onenorm_u_count(cls, key.d, key.u).holds);
      REQUIRE(check_onenorm_u(cls, key.d, key.u).holds);
      REQUIRE(check_twonorm_u(cls, key.d, key.u).holds);
      REQUIRE(check_family_cauchy(cls, key.d, key.u).holds);
    }
    for (const SubsetProfile& p : cls.profiles()) {
      if (!p.family_u) {
        REQUIRE(p.scaled_coefficient == 0);
        continue;
      }
      REQUIRE(check_abs_fourier_u(cls, p.subset).holds());
      REQUIRE(read_cover_count_bound(d, p.subset).holds);
      REQUIRE(read_cover_count_bound(d, p.subset).chain_holds);
    }
  }
}

TEST_CASE("read-k cover bound examples") {
  Dnf pairs = dnf("n=4\n1 2\n3 4\n");
  ReadCoverBound b = read_cover_count_bound(pairs, 0b0101);
  CHECK(b.count == 1);
  CHECK(b.bound == 4);
  CHECK(b.holds);
  ReadCoverBound e = read_cover_count_bound(pairs, 0);
  CHECK(e.count == 1);
  CHECK(e.bound == 1);
  ReadCoverBound nested = read_cover_count_bound(dnf("n=2\n1\n1 2\n"), 0b01);
  CHECK(nested.count == 2);
  CHECK(nested.bound == 3);
  CHECK(nested.chain_holds);
}

TEST_CASE("exact-width cover bound") {
  Dnf pairs = dnf("n=4\n1 2\n3 4\n");
  ExactWidthCoverBound b = exact_width_cover_bound(pairs, 0b0101, 4);
  CHECK(b.count == 1);
  CHECK(b.bound == 4);
  CHECK(b.holds);
  CHECK(exact_width_cover_bound(pairs, 0b0101, 3).count == 0);
  CHECK_THROWS_AS(exact_width_cover_bound(dnf("n=2\n1\n1 2\n"), 0b01, 1), PreconditionError);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Dnf d = random_read_k(8, 4, 2 + static_cast<int>(seed % 2), 2 + static_cast<int>(seed % 2), true, seed);
    for (VarMask s = 0; s < 256; ++s) {
      if (std::popcount(s) > 3) continue;
      for (int u = 0; u <= d.width() * std::popcount(s); ++u) REQUIRE(exact_width_cover_bound(d, s, u).holds);
    }
  }
}

TEST_CASE("logarithm enclosures bracket the true value") {
  for (const auto& q : {Rational(1), Rational(2), Rational(16, 9), Rational(7, 3), Rational(1000001, 1000000)}) {
    LogEnclosure e = ln_enclosure(q, 80);
    const double truth = std::log(rational_to_double(q));
    CHECK(rational_to_double(e.lower) <= truth + 1e-15);
    CHECK(rational_to_double(e.upper) >= truth - 1e-15);
    CHECK(e.lower <= e.upper);
    CHECK(e.upper - e.lower <= Rational(BigInt(1), BigInt(1) << 70));
  }
  CHECK(ln_enclosure(Rational(1), 64).upper == 0);
  CHECK_THROWS_AS(ln_enclosure(Rational(1, 2), 64), PreconditionError);
}

TEST_CASE("ST inequality examples") {
  for (int w = 1; w <= 6; ++w) {
    std::vector<Literal> lits;
    for (int i = 0; i < w; ++i) lits.push_back({i, true});
    StInequalityCheck c = st_inequality_check(Dnf(w, {Term(lits)}));
    CHECK(c.lhs == DyadicRational::power_of_two(-w));
    CHECK(c.read == 1);
    CHECK(c.holds);
  }
  StInequalityCheck vacuous = st_inequality_check(dnf("n=2\n*\n"));
  CHECK(vacuous.vacuous);
  CHECK(vacuous.holds);
  StInequalityCheck t = st_inequality_check(tribes(2, 2));
  CHECK(t.lhs == dy("1/2^1"));
  CHECK(t.bias == dy("7/2^4"));
  CHECK(t.holds);
  CHECK(std::abs(rational_to_double(t.rhs_lower) - std::log(16.0 / 9.0)) < 1e-12);
  StInequalityCheck empty = st_inequality_check(dnf("n=2\n"));
  CHECK(empty.holds);
}

TEST_CASE("budget lemma examples and preconditions") {
  BudgetCheck a = budget_lemma_bound({1}, 1, Rational(1, 2));
  CHECK(a.count == 1);
  CHECK(a.bound == doctest::Approx(4.0));
  CHECK(a.holds);
  BudgetCheck b = budget_lemma_bound({2, 2, 2}, 6, Rational(3, 4));
  CHECK(b.count == 3);
  CHECK(b.bound == doctest::Approx(8.0));
  CHECK(b.holds);

  auto kind_of = [](auto call) {
    try {
      call();
    } catch (const BudgetPreconditionError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  CHECK(kind_of([] { budget_lemma_bound({3, 3}, 5, Rational(1)); }) == static_cast<int>(BudgetViolation::kSizeBudget));
  CHECK(kind_of([] { budget_lemma_bound({1}, 4, Rational(1, 4)); }) ==
        static_cast<int>(BudgetViolation::kWeightBudget));
  CHECK(kind_of([] { budget_lemma_bound({1}, 4, Rational(0)); }) ==
        static_cast<int>(BudgetViolation::kNonPositiveWeight));
  CHECK(kind_of([] { budget_lemma_bound({0}, 1, Rational(1)); }) == static_cast<int>(BudgetViolation::kGap));
}
