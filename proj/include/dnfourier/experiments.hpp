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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dnfourier/covers.hpp"
#include "dnfourier/dnf.hpp"
#include "dnfourier/dyadic.hpp"
#include "dnfourier/generators.hpp"
#include "dnfourier/serialize.hpp"

namespace dnfourier {

// Exactly one of file / generator / inline_dnf is set.
struct InstanceSource {
  std::string name;
  std::optional<std::filesystem::path> file;
  std::optional<GeneratorSpec> generator;
  std::optional<Dnf> inline_dnf;
  bool report_only = false;  // sweep: tabulate, assert nothing
};

struct ExperimentConfig {
  std::vector<InstanceSource> instances;
  Rational eps{1, 8};
  Rational C{1};
  std::vector<Rational> c_sweep{Rational(1), Rational(2), Rational(4)};
  std::optional<int> d_max;
  std::optional<int> u_star;
  std::vector<std::string> checks;  // empty: every tag
  std::filesystem::path report;     // empty: stdout
  std::filesystem::path csv;        // empty: no CSV
  int workers = 1;
  int budget_families = 1000;
  std::uint64_t budget_seed = 0;
};

// Relative instance paths resolve against base_dir. Throws ParseError.
ExperimentConfig config_from_json(const Json& j, const std::filesystem::path& base_dir = {});

// Tags accepted in ExperimentConfig::checks, in report order.
const std::vector<std::string>& check_tags();

Dnf load_instance(const InstanceSource& source);

// floor(coef * prod_i log2(args_i)) for coef >= 0 and args >= 1, decided on
// rigorous logarithm enclosures.
std::int64_t floor_log2_product(const Rational& coef, const std::vector<Rational>& args);

// min(floor(C w log2(3/eps)), n, decision-tree cap).
int default_d_max(const Rational& C, int w, int n, const Rational& eps);
// floor(100 C w log2(k+2) log2(3/eps)).
std::int64_t default_u_star(const Rational& C, int w, int k, const Rational& eps);

// Fourier weight of every S outside the union of S_{d,u} over d <= d_cut,
// u <= u_cut (subsets above d_max or in no family always count as outside).
DyadicRational tail_weight(const FamilyClassification& cls, int d_cut, std::int64_t u_cut);

struct CheckRow {
  std::string tag;
  std::string subject;
  std::string lhs;
  std::string bound;
  double lhs_decimal = 0;
  double bound_decimal = 0;
  bool holds = false;
  bool asserted = true;  // false: report-only
  std::string detail;
};

// Deterministic: the same config gives byte-identical text() and csv for
// any worker count.
struct Report {
  Json document;
  std::vector<std::string> failures;  // "instance/tag/subject" of asserted rows that fail
  std::string csv;
  bool ok() const { return failures.empty(); }
  std::string text() const { return document.dump(2) + "\n"; }
};

Report run_verify(const ExperimentConfig& config);
Report run_concentration_sweep(const ExperimentConfig& config);

// 1000-style randomized sweep of budget_lemma_bound over families that meet
// its preconditions; returns the number of violations.
struct BudgetSweep {
  int families = 0;
  int violations = 0;
};
BudgetSweep budget_lemma_sweep(int families, std::uint64_t seed);

}  // namespace dnfourier
