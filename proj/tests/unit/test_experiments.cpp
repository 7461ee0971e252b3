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

#include "dnfourier/errors.hpp"
#include "dnfourier/experiments.hpp"

using namespace dnfourier;

namespace {

InstanceSource generated(std::string name, GeneratorSpec spec, bool report_only = false) {
  InstanceSource s;
  s.name = std::move(name);
  s.generator = spec;
  s.report_only = report_only;
  return s;
}

InstanceSource inline_dnf(std::string name, std::string_view text) {
  InstanceSource s;
  s.name = std::move(name);
  s.inline_dnf = parse_dnf_text(text);
  return s;
}

const Json* find_coefficient(const Json& spectrum, VarMask mask) {
  for (const Json& c : spectrum) {
    if (c["mask"].get<VarMask>() == mask) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("verify on Tribes(2,2)") {
  ExperimentConfig config;
  config.instances.push_back(generated("tribes", {GeneratorFamily::kTribes, 0, 2, 2, 1, 0, true, 0}));
  config.budget_families = 50;
  Report r = run_verify(config);
  CHECK(r.ok());
  const Json& inst = r.document["instances"][0];
  CHECK(inst["bias"]["exact"] == "7/2^4");
  const Json* c1 = find_coefficient(inst["spectrum"], 0b0001);
  REQUIRE(c1 != nullptr);
  // -3/16 in lowest terms over 2^4.
  CHECK((*c1)["numerator"] == "-3");
  CHECK((*c1)["log_denominator"] == 4);
  for (const Json& mask : inst["unassigned_zero_coefficient"]) {
    CHECK(find_coefficient(inst["spectrum"], mask.get<VarMask>()) == nullptr);
  }
  CHECK(r.document["summary"]["failed"] == 0);
}

TEST_CASE("verify on the constant-0 DNF and an empty-term DNF") {
  ExperimentConfig config;
  config.instances.push_back(inline_dnf("zero", "n=3\n"));
  config.instances.push_back(inline_dnf("one", "n=3\n*\n"));
  config.budget_families = 10;
  Report r = run_verify(config);
  CHECK(r.ok());
}

TEST_CASE("verify on a random read-2 DNF keeps the tail monotone") {
  ExperimentConfig config;
  config.instances.push_back(generated("r", {GeneratorFamily::kRandomReadK, 8, 4, 3, 2, 0, false, 7}));
  config.checks = {"tail_monotone", "subset_abs_bound", "family_one_norm"};
  Report r = run_verify(config);
  CHECK(r.ok());
  for (const Json& row : r.document["instances"][0]["checks"]) {
    CHECK(row["holds"] == true);
  }
}

TEST_CASE("reports do not depend on the worker count") {
  ExperimentConfig config;
  config.instances.push_back(generated("r", {GeneratorFamily::kRandomReadK, 9, 5, 3, 2, 0, false, 11}));
  config.instances.push_back(generated("t", {GeneratorFamily::kTribes, 0, 3, 2, 1, 0, true, 0}));
  config.budget_families = 100;
  config.workers = 1;
  Report one = run_verify(config);
  config.workers = 8;
  Report many = run_verify(config);
  CHECK(one.text() == many.text());
  CHECK(one.csv == many.csv);
  config.workers = 1;
  Report sweep_one = run_concentration_sweep(config);
  config.workers = 8;
  CHECK(sweep_one.text() == run_concentration_sweep(config).text());
}

TEST_CASE("config parsing") {
  Json j = Json::parse(R"({"eps":"1/4","C":2,"checks":["st_inequality"],"workers":3,
    "instances":[{"name":"a","generator":{"family":"tribes","s":2,"w":2}},{"dnf":{"n":2,"terms":[[1]]}},{"file":"x.txt"}]})");
  ExperimentConfig c = config_from_json(j, "/data");
  CHECK(c.eps == Rational(1, 4));
  CHECK(c.C == Rational(2));
  CHECK(c.workers == 3);
  REQUIRE(c.instances.size() == 3);
  CHECK(c.instances[0].generator.has_value());
  CHECK(c.instances[1].inline_dnf.has_value());
  CHECK(*c.instances[2].file == std::filesystem::path("/data/x.txt"));
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"eps":0})")), ParseError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"checks":["nope"]})")), ParseError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"d_max":13})")), ParseError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"instances":[{"name":"empty"}]})")), ParseError);
}

TEST_CASE("floor of scaled log products") {
  CHECK(floor_log2_product(Rational(1), {Rational(8)}) == 3);
  CHECK(floor_log2_product(Rational(1), {Rational(24)}) == 4);
  CHECK(floor_log2_product(Rational(100), {Rational(3), Rational(24)}) == 726);  // 100 * 1.58496 * 4.58496
  CHECK(floor_log2_product(Rational(1), {Rational(1)}) == 0);
  CHECK(floor_log2_product(Rational(0), {Rational(5)}) == 0);
  CHECK(floor_log2_product(Rational(1, 2), {Rational(4), Rational(4)}) == 2);
}

TEST_CASE("default cutoffs") {
  // w=2, eps=1/8: log2(24) = 4.585, so C w log2(3/eps) = 9.17.
  CHECK(default_d_max(Rational(1), 2, 4, Rational(1, 8)) == 4);
  CHECK(default_d_max(Rational(1), 2, 20, Rational(1, 8)) == 9);
  CHECK(default_d_max(Rational(4), 3, 20, Rational(1, 8)) == 12);
  // 100 * 2 * log2(3) * log2(24) = 1453.4
  CHECK(default_u_star(Rational(1), 2, 1, Rational(1, 8)) == 1453);
}

TEST_CASE("budget sweep") {
  BudgetSweep s = budget_lemma_sweep(1000, 0);
  CHECK(s.families == 1000);
  CHECK(s.violations == 0);
}

TEST_CASE("concentration sweep examples") {
  ExperimentConfig config;
  config.instances.push_back(generated("t1", {GeneratorFamily::kTribes, 0, 2, 1, 1, 0, true, 0}));
  config.instances.push_back(generated("t22", {GeneratorFamily::kTribes, 0, 2, 2, 1, 0, true, 0}));
  config.instances.push_back(generated("t23", {GeneratorFamily::kTribes, 0, 3, 2, 1, 0, true, 0}));
  config.instances.push_back(generated("pool", {GeneratorFamily::kDensePool, 0, 8, 3, 0, 6, true, 1}, true));
  config.c_sweep = {Rational(1)};
  Report r = run_concentration_sweep(config);
  CHECK(r.ok());
  const Json& rows = r.document["rows"];
  REQUIRE(rows.size() == 4);
  // Tribes(1,2) = x1 OR x2: everything sits at degree <= n.
  CHECK(rows[0]["tail_weight"].back()["weight_outside"] == "0");
  CHECK(rows[1]["min_coeffs_for_eps"].get<std::uint64_t>() <= rows[2]["min_coeffs_for_eps"].get<std::uint64_t>());
  CHECK(rows[3]["report_only"] == true);
  for (const Json& row : rows) CHECK(row["tail_monotone"] == true);
}

TEST_CASE("default sweep instances") {
  Report r = run_concentration_sweep(ExperimentConfig{});
  CHECK(r.ok());
  CHECK(r.document["rows"].size() == 8 * 3);
}
