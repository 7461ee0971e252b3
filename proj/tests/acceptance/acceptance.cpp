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

// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every criterion is decided on exact arithmetic.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dnfourier/covers.hpp"
#include "dnfourier/encoder.hpp"
#include "dnfourier/errors.hpp"
#include "dnfourier/experiments.hpp"
#include "dnfourier/fourier.hpp"
#include "dnfourier/generators.hpp"
#include "dnfourier/restriction.hpp"
#include "oracles.hpp"

using namespace dnfourier;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      note = what;
    }
  }
};

int parity(std::uint64_t x) { return std::popcount(x) & 1; }

// Checks one function: scaled spectrum against the definition, Parseval and
// reconstruction through the inverse character sum.
void check_function(const BooleanFunction& f, Outcome& out) {
  const int n = f.num_vars();
  const std::uint64_t size = std::uint64_t{1} << n;
  const FourierSpectrum spec = fourier_transform(f);
  out.require(spec == fourier_transform_serial(f), "parallel and serial transforms differ");
  for (VarMask s = 0; s < size; ++s) {
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
      if (f(x)) sum += parity(x & s) ? -1 : 1;
    }
    if (spec.scaled(s) != sum) {
      out.require(false, "coefficient mismatch at n=" + std::to_string(n) + " S=" + std::to_string(s));
      return;
    }
  }
  out.require(spec.total_weight() == f.bias(), "Parseval fails");
  for (std::uint64_t x = 0; x < size; ++x) {
    std::int64_t sum = 0;
    for (VarMask s = 0; s < size; ++s) sum += parity(x & s) ? -spec.scaled(s) : spec.scaled(s);
    if (sum != (f(x) ? static_cast<std::int64_t>(size) : 0)) {
      out.require(false, "reconstruction fails at x=" + std::to_string(x));
      return;
    }
  }
}

Outcome fourier_correctness() {
  Outcome out;
  for (int n = 0; n <= 3; ++n) {
    const std::uint64_t size = std::uint64_t{1} << n;
    for (std::uint64_t table = 0; table < (std::uint64_t{1} << size); ++table) {
      BooleanFunction f = BooleanFunction::from_predicate(n, [&](std::uint64_t x) { return (table >> x) & 1; });
      check_function(f, out);
      // Exact rational oracle on the small tables.
      const FourierSpectrum spec = fourier_transform(f);
      for (VarMask s = 0; s < size; ++s) {
        out.require(spec.coefficient(s).to_rational() ==
                        oracle::coefficient(n, [&](std::uint64_t x) { return f(x); }, s),
                    "rational oracle mismatch");
      }
      out.require(spec.evaluate(size - 1) == DyadicRational(f(size - 1) ? 1 : 0), "exact evaluate fails");
    }
  }
  SplitMix64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + i % 10;
    std::vector<bool> bits(std::size_t{1} << n);
    for (std::size_t x = 0; x < bits.size(); ++x) bits[x] = rng.coin();
    check_function(BooleanFunction::from_bits(n, bits), out);
  }
  out.note += out.pass ? "all 2^(2^n) functions for n<=3, 1000 random for n<=10" : "";
  return out;
}

std::vector<Dnf> acceptance_corpus() { return oracle::corpus(200, 20240607); }

Outcome evasive_suite(const std::vector<Dnf>& corpus) {
  Outcome out;
  std::uint64_t checks = 0;
  for (const Dnf& d : corpus) {
    const BooleanFunction f = evaluate(d);
    const FourierSpectrum spec = fourier_transform(f);
    for (VarMask s = 0; s < (VarMask{1} << d.num_vars()); ++s) {
      if (std::popcount(s) > 4) continue;
      out.require(evasive_bound_check(f, spec, s).holds, "evasive bound fails on " + to_text(d));
      ++checks;
    }
  }
  if (out.pass) out.note = std::to_string(checks) + " (DNF, S) pairs";
  return out;
}

Outcome encoder_round_trip(const std::vector<Dnf>& corpus) {
  Outcome out;
  std::uint64_t pairs = 0;
  for (const Dnf& d : corpus) {
    SwitchingEncoder enc(d);
    const int n = d.num_vars();
    const VarMask all = (VarMask{1} << n) - 1;
    for (VarMask s = 0; s <= all; ++s) {
      for (std::uint64_t t = 0; t < (std::uint64_t{1} << (n - std::popcount(s))); ++t) {
        const Restriction r{s, deposit_bits(t, all & ~s)};
        if (!enc.is_full_depth(r)) continue;
        try {
          const Restriction back = enc.decode(enc.encode(r).encoding);
          out.require(back.free_vars == r.free_vars && back.fixed_values == r.fixed_values,
                      "round trip differs on " + to_text(d));
        } catch (const InvariantViolation& e) {
          out.require(false, e.what());
        } catch (const DecodeError& e) {
          out.require(false, e.what());
        }
        ++pairs;
      }
    }
  }
  if (out.pass) out.note = std::to_string(pairs) + " full-depth pairs";
  return out;
}

Outcome counting_bounds(const std::vector<Dnf>& corpus) {
  Outcome out;
  std::uint64_t families = 0;
  for (const Dnf& d : corpus) {
    const int d_max = std::min(3, d.num_vars());
    const FamilyClassification cls = classify_families(d, d_max);
    const BooleanFunction& f = evaluate(d);
    for (int deg = 0; deg <= d_max; ++deg) {
      // Pair count identity: the per-family counts sum to the per-subset counts.
      std::uint64_t direct = 0;
      for (VarMask s = 0; s < (VarMask{1} << d.num_vars()); ++s) {
        if (std::popcount(s) == deg) direct += count_full_depth_restrictions(f, s);
      }
      std::uint64_t by_union = 0;
      for (int u = deg; u <= d.width() * deg; ++u) by_union += cls.full_depth_pairs(deg, u);
      out.require(cls.full_depth_pairs(deg) == direct && by_union == direct, "pair count identity fails");
      out.require(check_onenorm_degree_count(cls, deg).holds, "degree count bound fails");
      out.require(check_onenorm_degree(cls, deg).holds, "degree binomial bound fails");
      out.require(check_full_depth_pairs(cls, deg).holds, "full-depth pair bound fails");
    }
    for (const auto& [key, stats] : cls.families()) {
      out.require(check_onenorm_u_count(cls, key.d, key.u).holds, "family count bound fails");
      out.require(check_onenorm_u(cls, key.d, key.u).holds, "family one-norm bound fails");
      out.require(check_twonorm_u(cls, key.d, key.u).holds, "family two-norm bound fails");
      out.require(check_family_cauchy(cls, key.d, key.u).holds, "family Cauchy step fails");
      ++families;
    }
    for (const SubsetProfile& p : cls.profiles()) {
      if (p.family_u) out.require(check_abs_fourier_u(cls, p.subset).holds(), "per-subset chain fails");
    }
  }
  if (out.pass) out.note = std::to_string(families) + " (d,u) families";
  return out;
}

Outcome cover_counting(const std::vector<Dnf>& corpus) {
  Outcome out;
  std::uint64_t subsets = 0;
  for (const Dnf& d : corpus) {
    const VarMask all = (VarMask{1} << d.num_vars()) - 1;
    for (VarMask s = 0; s <= all; ++s) {
      out.require(cover_counts_by_union(d, s) == oracle::cover_counts(d, s, true), "cover counts differ");
      out.require(cover_counts_by_union(d, s, CoverScope::kAllTerms) == oracle::cover_counts(d, s, false),
                  "all-terms cover counts differ");
      const ReadCoverBound b = read_cover_count_bound(d, s);
      out.require(b.holds && b.chain_holds, "read-k cover chain fails");
      if (d.has_uniform_width()) {
        for (int u = 0; u <= d.width() * std::popcount(s); ++u) {
          out.require(exact_width_cover_bound(d, s, u).holds, "exact-width chain fails");
        }
      }
      ++subsets;
    }
  }
  // Exact-width instances exercise the second chain beyond Tribes.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int w = 2 + static_cast<int>(seed % 3);
    const Dnf d = random_read_k(8, 4, w, 3, true, seed);
    for (VarMask s = 0; s < 256; ++s) {
      if (std::popcount(s) > 4) continue;
      for (int u = 0; u <= d.width() * std::popcount(s); ++u) {
        out.require(exact_width_cover_bound(d, s, u).holds, "exact-width chain fails");
      }
    }
  }
  if (out.pass) out.note = std::to_string(subsets) + " subsets against the unpruned oracle";
  return out;
}

Outcome st_inequality(const std::vector<Dnf>& corpus) {
  Outcome out;
  int instances = 0;
  for (const Dnf& d : corpus) {
    out.require(st_inequality_check(d).holds, "ST inequality fails on " + to_text(d));
    ++instances;
  }
  SplitMix64 rng(77);
  for (int i = 0; i < 200; ++i) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const int k = 1 + static_cast<int>(rng.below(3));
    const int w = 1 + static_cast<int>(rng.below(4));
    const int s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(8, n * k / w))));
    const Dnf d = random_read_k(n, s, w, k, false, rng.next());
    out.require(d.read() <= k, "generator exceeded the read bound");
    out.require(st_inequality_check(d).holds, "ST inequality fails on " + to_text(d));
    ++instances;
  }
  if (out.pass) out.note = std::to_string(instances) + " instances";
  return out;
}

Outcome budget_lemma() {
  Outcome out;
  const BudgetSweep s = budget_lemma_sweep(1000, 0);
  out.require(s.families == 1000, "sweep produced " + std::to_string(s.families) + " families");
  out.require(s.violations == 0, std::to_string(s.violations) + " violations");
  if (out.pass) out.note = "1000 families, 0 violations";
  return out;
}

Outcome concentration() {
  Outcome out;
  ExperimentConfig config;
  config.eps = Rational(1, 8);
  config.c_sweep = {Rational(1)};
  for (int t = 2; t <= 4; ++t) {
    InstanceSource s;
    s.name = "tribes_w2_t" + std::to_string(t);
    s.generator = GeneratorSpec{GeneratorFamily::kTribes, 0, t, 2, 1, 0, true, 0};
    config.instances.push_back(s);
  }
  const Report r = run_concentration_sweep(config);
  std::string summary;
  for (const Json& row : r.document["rows"]) {
    out.require(row["min_coeffs_for_eps"].is_number_unsigned(), "min_coeffs missing");
    out.require(row["tail_monotone"] == true, "tail not monotone");
    const Json& cut = row["smallest_u_cutoff_within_eps"];
    const int limit = row["metrics"]["w"].get<int>() * row["d_cut"].get<int>();
    out.require(!cut.is_null() && cut.get<int>() <= limit, "no cutoff within w*d_max captures 7/8");
    if (!summary.empty()) summary += ", ";
    summary += row["instance"].get<std::string>() + ": M=" + std::to_string(row["min_coeffs_for_eps"].get<std::uint64_t>()) +
               " u=" + (cut.is_null() ? std::string("none") : std::to_string(cut.get<int>()));
  }
  out.require(r.ok(), "sweep reported failures");
  if (out.pass) out.note = summary;
  return out;
}

Outcome determinism() {
  Outcome out;
  ExperimentConfig config;
  InstanceSource a;
  a.name = "tribes";
  a.generator = GeneratorSpec{GeneratorFamily::kTribes, 0, 3, 2, 1, 0, true, 0};
  InstanceSource b;
  b.name = "read2";
  b.generator = GeneratorSpec{GeneratorFamily::kRandomReadK, 10, 6, 3, 2, 0, false, 5};
  config.instances = {a, b};
  config.budget_families = 200;
  config.workers = 1;
  const Report one = run_verify(config);
  config.workers = 8;
  const Report many = run_verify(config);
  out.require(one.text() == many.text(), "reports differ");
  out.require(one.csv == many.csv, "CSV differs");
  if (out.pass) out.note = std::to_string(one.text().size()) + " report bytes identical";
  return out;
}

}  // namespace

int main() {
  const std::vector<Dnf> corpus = acceptance_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Fourier transform against the definition", fourier_correctness},
      {"evasive bound for |S| <= 4", [&] { return evasive_suite(corpus); }},
      {"encoder/decoder round trip", [&] { return encoder_round_trip(corpus); }},
      {"counting bounds per family, d <= 3", [&] { return counting_bounds(corpus); }},
      {"cover counting and cover chains", [&] { return cover_counting(corpus); }},
      {"ST inequality", [&] { return st_inequality(corpus); }},
      {"budget lemma", budget_lemma},
      {"Tribes concentration, eps = 1/8", concentration},
      {"verify determinism across worker counts", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), seconds,
                o.note.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
