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

#include "dnfourier/generators.hpp"

#include <algorithm>
#include <numeric>

#include "dnfourier/errors.hpp"

namespace dnfourier {

namespace {

constexpr int kRestartBudget = 256;

// Picks `count` distinct entries of `pool` (partial Fisher-Yates) and gives
// each a random polarity. Literals come out sorted by variable.
std::vector<Literal> draw_literals(std::vector<int>& pool, int count, SplitMix64& rng) {
  std::vector<Literal> literals;
  for (int i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(pool.size() - static_cast<std::size_t>(i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    literals.push_back({pool[static_cast<std::size_t>(i)], true});
  }
  std::sort(literals.begin(), literals.end(), [](const Literal& a, const Literal& b) { return a.var < b.var; });
  for (Literal& lit : literals) lit.positive = rng.coin();
  return literals;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);  // multiple of bound
  for (;;) {
    std::uint64_t r = next();
    if (r < limit) return r % bound;
  }
}

Dnf tribes(int w, int t) {
  if (w < 1 || t < 1) throw PreconditionError("tribes needs w >= 1 and t >= 1");
  if (static_cast<std::int64_t>(w) * t > kVariableCap) throw CapExceeded("tribes: w t exceeds the variable cap");
  std::vector<Term> terms;
  for (int j = 0; j < t; ++j) {
    std::vector<Literal> literals;
    for (int i = 0; i < w; ++i) literals.push_back({j * w + i, true});
    terms.emplace_back(std::move(literals));
  }
  return Dnf(w * t, std::move(terms));
}

Dnf random_read_k(int n, int s, int w, int k, bool exact_width, std::uint64_t seed) {
  if (n < 1 || n > kVariableCap) throw CapExceeded("random_read_k: n outside [1, cap]");
  if (s < 0 || w < 1 || w > n || k < 1) throw PreconditionError("random_read_k needs s >= 0, 1 <= w <= n, k >= 1");
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < kRestartBudget; ++attempt) {
    std::vector<int> occupancy(static_cast<std::size_t>(n), 0);
    std::vector<Term> terms;
    bool stuck = false;
    for (int j = 0; j < s && !stuck; ++j) {
      const int width = exact_width ? w : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(w)));
      std::vector<int> open;
      for (int v = 0; v < n; ++v) {
        if (occupancy[static_cast<std::size_t>(v)] < k) open.push_back(v);
      }
      if (static_cast<int>(open.size()) < width) {
        stuck = true;
        break;
      }
      std::vector<Literal> literals = draw_literals(open, width, rng);
      for (const Literal& lit : literals) ++occupancy[static_cast<std::size_t>(lit.var)];
      terms.emplace_back(std::move(literals));
    }
    if (!stuck) return Dnf(n, std::move(terms));
  }
  throw PreconditionError("random_read_k: rejection budget exhausted (shape likely infeasible)");
}

Dnf dense_pool(int n_terms, int term_width, int pool_size, std::uint64_t seed) {
  if (pool_size < 1 || pool_size > kVariableCap) throw CapExceeded("dense_pool: pool_size outside [1, cap]");
  if (n_terms < 0 || term_width < 0 || term_width > pool_size) {
    throw PreconditionError("dense_pool needs n_terms >= 0 and 0 <= term_width <= pool_size");
  }
  SplitMix64 rng(seed);
  std::vector<int> pool(static_cast<std::size_t>(pool_size));
  std::vector<Term> terms;
  for (int j = 0; j < n_terms; ++j) {
    std::iota(pool.begin(), pool.end(), 0);
    terms.emplace_back(draw_literals(pool, term_width, rng));
  }
  return Dnf(pool_size, std::move(terms));
}

std::string family_name(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::kTribes:
      return "tribes";
    case GeneratorFamily::kRandomReadK:
      return "random_read_k";
    case GeneratorFamily::kDensePool:
      return "dense_pool";
  }
  return "unknown";
}

GeneratorFamily parse_family(std::string_view name) {
  if (name == "tribes") return GeneratorFamily::kTribes;
  if (name == "random_read_k") return GeneratorFamily::kRandomReadK;
  if (name == "dense_pool") return GeneratorFamily::kDensePool;
  throw ParseError("unknown generator family '" + std::string(name) + "'");
}

Dnf generate(const GeneratorSpec& spec) {
  Dnf dnf = [&] {
    switch (spec.family) {
      case GeneratorFamily::kTribes:
        return tribes(spec.w, spec.s);
      case GeneratorFamily::kRandomReadK:
        return random_read_k(spec.n, spec.s, spec.w, spec.k, spec.exact_width, spec.seed);
      case GeneratorFamily::kDensePool:
        return dense_pool(spec.s, spec.w, spec.pool_size, spec.seed);
    }
    throw PreconditionError("unknown generator family");
  }();
  check_contract(spec, dnf);
  return dnf;
}

void check_contract(const GeneratorSpec& spec, const Dnf& dnf) {
  const DnfMetrics m = dnf.metrics();
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvariantViolation(std::string("generator contract broken: ") + what);
  };
  switch (spec.family) {
    case GeneratorFamily::kTribes:
      require(dnf.num_vars() == spec.w * spec.s, "n = w t");
      require(m == DnfMetrics{spec.s, spec.w, 1}, "metrics (t, w, 1)");
      require(dnf.has_uniform_width(), "uniform width");
      for (const Term& t : dnf.terms()) require(t.negative_mask() == 0, "all literals positive");
      break;
    case GeneratorFamily::kRandomReadK:
      require(dnf.num_vars() == spec.n, "n as requested");
      require(m.size == spec.s, "size s");
      require(m.width <= spec.w, "width <= w");
      require(m.read <= spec.k, "read <= k");
      if (spec.exact_width) {
        for (const Term& t : dnf.terms()) require(t.width() == spec.w, "every term has width w");
      } else {
        for (const Term& t : dnf.terms()) require(t.width() >= 1, "no empty term");
      }
      break;
    case GeneratorFamily::kDensePool:
      require(dnf.num_vars() == spec.pool_size, "n = pool_size");
      require(m.size == spec.s, "size n_terms");
      for (const Term& t : dnf.terms()) require(t.width() == spec.w, "every term has width term_width");
      break;
  }
}

}  // namespace dnfourier
