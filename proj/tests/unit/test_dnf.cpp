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

#include "dnfourier/dnf.hpp"
#include "dnfourier/errors.hpp"
#include "dnfourier/generators.hpp"
#include "oracles.hpp"

using namespace dnfourier;

namespace {

Dnf dnf(std::string_view text) { return parse_dnf_text(text); }

}  // namespace

TEST_CASE("evaluate on small examples") {
  BooleanFunction f = evaluate(dnf("n=2\n1 2\n"));
  CHECK(f.count_ones() == 1);
  CHECK(f(3));
  CHECK(evaluate(dnf("n=2\n")) == BooleanFunction::constant(2, false));
  BooleanFunction g = evaluate(dnf("n=2\n1\n-1 2\n"));
  CHECK(g == BooleanFunction::from_predicate(2, [](std::uint64_t x) { return x != 0; }));
  CHECK(g.count_ones() == 3);
  CHECK(evaluate(dnf("n=3\n*\n")) == BooleanFunction::constant(3, true));
}

TEST_CASE("metrics") {
  CHECK(dnf("n=4\n1 2\n3 4\n").metrics() == DnfMetrics{2, 2, 1});
  CHECK(dnf("n=2\n1\n1 2\n").metrics() == DnfMetrics{2, 2, 2});
  CHECK(dnf("n=3\n").metrics() == DnfMetrics{0, 0, 0});
  CHECK(dnf("n=2\n1 2\n1 2\n").read() == 2);  // duplicates count honestly
}

TEST_CASE("truncate_width keeps narrow terms in order") {
  Dnf d = dnf("n=4\n1 2 3\n4\n");
  CHECK(truncate_width(d, 1) == dnf("n=4\n4\n"));
  CHECK(truncate_width(d, d.width()) == d);
  Dnf wide = dnf("n=6\n1 2\n3 -4\n5 6\n");
  Dnf empty = truncate_width(wide, 1);
  CHECK(empty.size() == 0);
  const DyadicRational distance = hamming_distance_fraction(evaluate(wide), evaluate(empty));
  CHECK(distance <= DyadicRational(BigInt(3), 2));
  CHECK_THROWS_AS(truncate_width(wide, -1), PreconditionError);
}

TEST_CASE("satisfied_terms") {
  Dnf d = dnf("n=3\n1 2\n3\n");
  CHECK(satisfied_terms(d, 0b111) == std::vector<std::size_t>{0, 1});
  CHECK(satisfied_terms(d, 0b000).empty());
  Dnf comp = dnf("n=1\n1\n-1\n");
  CHECK(satisfied_terms(comp, 0) == std::vector<std::size_t>{1});
  CHECK(satisfied_terms(comp, 1) == std::vector<std::size_t>{0});
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(dnf("1 2\n"), ParseError);
  CHECK_THROWS_AS(dnf("n=2\n1 3\n"), ParseError);
  CHECK_THROWS_AS(dnf("n=2\n1 -1\n"), ParseError);
  CHECK_THROWS_AS(dnf("n=2\n1 1\n"), ParseError);
  CHECK_THROWS_AS(dnf("n=2\n1 x\n"), ParseError);
  CHECK_THROWS_AS(dnf("n=2\n0\n"), ParseError);
}

TEST_CASE("text round trip keeps literal order, comments and blanks are skipped") {
  Dnf d = dnf("# header\nn=5\n\n3 -1\n* \n5 2 -4   # trailing\n");
  CHECK(to_text(d) == "n=5\n3 -1\n*\n5 2 -4\n");
  CHECK(parse_dnf_text(to_text(d)) == d);
}

TEST_CASE("evaluation, read and truncation agree with the oracles on random DNFs") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const int s = static_cast<int>(rng.below(8));
    const int w = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n, 5))));
    Dnf d = random_read_k(n, s, w, std::max(s, 1), false, rng.next());
    BooleanFunction f = evaluate(d);
    REQUIRE(f == evaluate_serial(d));
    for (std::uint64_t x = 0; x < f.table_size(); ++x) REQUIRE(f(x) == oracle::evaluate(d, x));
    REQUIRE(d.read() == oracle::read(d));

    // Permuting terms leaves the function unchanged.
    std::vector<Term> reversed(d.terms().rbegin(), d.terms().rend());
    REQUIRE(evaluate(Dnf(n, reversed)) == f);

    const int cut = static_cast<int>(rng.below(static_cast<std::uint64_t>(w) + 1));
    Dnf g = truncate_width(d, cut);
    const int dropped = d.size() - g.size();
    REQUIRE(hamming_distance_fraction(f, evaluate(g)) <=
            DyadicRational(BigInt(dropped), static_cast<unsigned>(cut + 1)));
  }
}

TEST_CASE("parallel evaluate on a large instance") {
  Dnf d = random_read_k(18, 30, 5, 10, false, 99);
  CHECK(evaluate(d) == evaluate_serial(d));
}
