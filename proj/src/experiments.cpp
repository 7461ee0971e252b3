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

#include "dnfourier/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "dnfourier/encoder.hpp"
#include "dnfourier/errors.hpp"
#include "dnfourier/fourier.hpp"
#include "dnfourier/restriction.hpp"

namespace dnfourier {

namespace {

const std::vector<std::string> kTags = {
    "sparse_concentration",    // 1-norm M gives concentration on ceil(M^2/eps) coefficients
    "approximation_transfer",  // eps1-approximation plus eps2-concentration gives 2(eps1+eps2)
    "width_truncation",        // dropping wide terms costs at most #dropped 2^-(w'+1), and <= eps
    "low_degree_concentration",
    "evasive_bound",
    "cover_probability",
    "degree_count",
    "degree_one_norm",
    "full_depth_pairs",
    "encoder_round_trip",
    "family_count_bound",
    "family_one_norm",
    "family_two_norm",
    "family_cauchy",
    "subset_abs_bound",
    "subset_cover_values",
    "subset_num_covers",
    "read_cover_count",
    "read_cover_chain",
    "exact_width_cover",
    "st_inequality",
    "tail_monotone",
    "twonorm_tail_simplified",
    "high_u_tail",
    "budget_lemma",
};

Rational rational_field(const Json& j, const char* key, Rational fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw ParseError(std::string("field '") + key + "' must be a rational string such as \"1/8\" or an integer");
}

std::string subset_name(VarMask subset) { return "S=" + std::to_string(subset); }

std::string family_label(FamilyKey key) { return "d=" + std::to_string(key.d) + ",u=" + std::to_string(key.u); }

CheckRow dyadic_row(std::string tag, std::string subject, const DyadicRational& lhs, const DyadicRational& bound,
                    bool holds, bool asserted = true) {
  CheckRow row;
  row.tag = std::move(tag);
  row.subject = std::move(subject);
  row.lhs = lhs.to_string();
  row.bound = bound.to_string();
  row.lhs_decimal = lhs.to_double();
  row.bound_decimal = bound.to_double();
  row.holds = holds;
  row.asserted = asserted;
  return row;
}

CheckRow dyadic_row(std::string tag, std::string subject, const DyadicRational& lhs, const DyadicRational& bound) {
  return dyadic_row(std::move(tag), std::move(subject), lhs, bound, lhs <= bound);
}

CheckRow rational_row(std::string tag, std::string subject, const Rational& lhs, const Rational& bound, bool holds,
                      bool asserted) {
  CheckRow row;
  row.tag = std::move(tag);
  row.subject = std::move(subject);
  row.lhs = rational_to_string(lhs);
  row.bound = rational_to_string(bound);
  row.lhs_decimal = rational_to_double(lhs);
  row.bound_decimal = rational_to_double(bound);
  row.holds = holds;
  row.asserted = asserted;
  return row;
}

Json row_json(const CheckRow& row) {
  Json j;
  j["tag"] = row.tag;
  j["subject"] = row.subject;
  j["lhs"] = row.lhs;
  j["bound"] = row.bound;
  j["lhs_decimal"] = row.lhs_decimal;
  j["bound_decimal"] = row.bound_decimal;
  j["holds"] = row.holds;
  j["asserted"] = row.asserted;
  if (!row.detail.empty()) j["detail"] = row.detail;
  return j;
}

Json dyadic_json(const DyadicRational& value) {
  Json j;
  j["exact"] = value.to_string();
  j["decimal"] = value.to_double();
  return j;
}

Json metrics_json(const Dnf& dnf) {
  Json j;
  j["n"] = dnf.num_vars();
  j["s"] = dnf.size();
  j["w"] = dnf.width();
  j["k"] = dnf.read();
  return j;
}

Json source_json(const InstanceSource& source) {
  Json j;
  if (source.file) j["file"] = source.file->filename().string();
  if (source.generator) j["generator"] = to_json(*source.generator);
  if (source.inline_dnf) j["inline"] = true;
  return j;
}

class Selection {
 public:
  explicit Selection(const std::vector<std::string>& checks) : checks_(checks) {}
  bool operator()(const std::string& tag) const {
    return checks_.empty() || std::find(checks_.begin(), checks_.end(), tag) != checks_.end();
  }

 private:
  const std::vector<std::string>& checks_;
};

// Per-subset results, filled independently and concatenated in subset order.
struct SubsetRows {
  std::vector<CheckRow> rows;
  std::uint64_t witnesses = 0;
  std::uint64_t round_trip_failures = 0;
  std::uint64_t claim_failures = 0;
  std::string first_problem;
};

SubsetRows subset_checks(const FamilyClassification& cls, const BooleanFunction& f, const SubsetProfile& p,
                         SwitchingEncoder& encoder, const Selection& selected) {
  SubsetRows out;
  const Dnf& dnf = cls.dnf();
  const VarMask subset = p.subset;
  const std::string name = subset_name(subset);

  if (selected("evasive_bound")) {
    BoundCheck c = evasive_bound_check(f, cls.spectrum(), subset);
    out.rows.push_back(dyadic_row("evasive_bound", name, c.lhs, c.rhs, c.holds));
  }
  if (selected("cover_probability")) {
    BoundCheck c = cover_probability_check(dnf, cls.spectrum(), subset);
    out.rows.push_back(dyadic_row("cover_probability", name, c.lhs, c.rhs, c.holds));
  }
  if (selected("encoder_round_trip")) {
    const int n = dnf.num_vars();
    const VarMask fixed = (n >= 64 ? ~VarMask{0} : (VarMask{1} << n) - 1) & ~subset;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << (n - p.d)); ++t) {
      Restriction r{subset, deposit_bits(t, fixed)};
      if (!encoder.is_full_depth(r)) continue;
      ++out.witnesses;
      try {
        EncodeResult enc = encoder.encode(r);
        Restriction back = encoder.decode(enc.encoding);
        const bool sigma_ok = enc.encoding.sigma.empty() || enc.encoding.sigma.back() <= enc.cover.union_size;
        if (back.free_vars != r.free_vars || back.fixed_values != r.fixed_values || !sigma_ok) {
          ++out.round_trip_failures;
          if (out.first_problem.empty()) out.first_problem = name + " x=" + std::to_string(r.fixed_values);
        }
      } catch (const InvariantViolation& e) {
        ++out.claim_failures;
        if (out.first_problem.empty()) out.first_problem = e.what();
      } catch (const DecodeError& e) {
        ++out.round_trip_failures;
        if (out.first_problem.empty()) out.first_problem = e.what();
      }
    }
  }
  if (p.family_u && (selected("subset_abs_bound") || selected("subset_cover_values") || selected("subset_num_covers"))) {
    AbsFourierCheck c = check_abs_fourier_u(cls, subset);
    const std::string subject = name + " in " + family_label(c.key);
    if (selected("subset_abs_bound")) {
      out.rows.push_back(dyadic_row("subset_abs_bound", subject, c.abs_coeff, c.abs_bound, c.abs_holds));
    }
    if (selected("subset_cover_values")) {
      out.rows.push_back(
          dyadic_row("subset_cover_values", subject, c.probability, c.cover_values_bound, c.cover_values_holds));
    }
    if (selected("subset_num_covers")) {
      out.rows.push_back(dyadic_row("subset_num_covers", subject, DyadicRational(BigInt(c.distinct_covers), 0),
                                    DyadicRational(BigInt(c.num_covers), 0), c.num_covers_holds));
    }
  }
  if (selected("read_cover_count") || selected("read_cover_chain")) {
    ReadCoverBound c = read_cover_count_bound(dnf, subset);
    if (selected("read_cover_count")) {
      out.rows.push_back(dyadic_row("read_cover_count", name, DyadicRational(BigInt(c.count), 0),
                                    DyadicRational(c.bound, 0), c.holds));
    }
    if (selected("read_cover_chain")) {
      CheckRow row = dyadic_row("read_cover_chain", name, DyadicRational(c.bound, 0),
                                DyadicRational(c.binomial_bound, 0), c.chain_holds);
      row.detail = "sum_{i<=d} binom(kd,i) <= binom(kd+d,d) <= (e(k+1))^d";
      out.rows.push_back(std::move(row));
    }
  }
  if (selected("exact_width_cover") && dnf.has_uniform_width() && dnf.width() > 0) {
    for (int u = p.d; u <= dnf.width() * p.d; ++u) {
      ExactWidthCoverBound c = exact_width_cover_bound(dnf, subset, u);
      out.rows.push_back(dyadic_row("exact_width_cover", name + ",u=" + std::to_string(u),
                                    DyadicRational(BigInt(c.count), 0), DyadicRational(c.bound, 0), c.holds));
    }
  }
  return out;
}

struct InstanceResult {
  Json document;
  std::vector<CheckRow> rows;
  std::string csv;
};

void append_family_csv(std::ostringstream& csv, const std::string& instance, const FamilyClassification& cls) {
  for (const auto& [key, stats] : cls.families()) {
    ExactCheck one = check_onenorm_u(cls, key.d, key.u);
    ExactCheck two = check_twonorm_u(cls, key.d, key.u);
    ExactCheck cauchy = check_family_cauchy(cls, key.d, key.u);
    ExactCheck count = check_onenorm_u_count(cls, key.d, key.u);
    csv << instance << ',' << key.d << ',' << key.u << ',' << stats.members.size() << ','
        << stats.one_norm.to_string() << ',' << stats.one_norm.to_double() << ',' << stats.two_norm_sq.to_string() << ','
        << stats.two_norm_sq.to_double() << ',' << stats.max_abs_coeff.to_string() << ','
        << stats.max_abs_coeff.to_double() << ',' << stats.max_num_covers << ',' << one.bound.to_string() << ','
        << one.bound.to_double() << ',' << two.bound.to_string() << ',' << two.bound.to_double() << ','
        << (one.holds ? 1 : 0) << ',' << (two.holds ? 1 : 0) << ',' << (cauchy.holds ? 1 : 0) << ','
        << (count.holds ? 1 : 0) << '\n';
  }
}

InstanceResult verify_instance(const std::string& name, const InstanceSource& source, const Dnf& dnf,
                               const ExperimentConfig& config) {
  const Selection selected(config.checks);
  check_variable_count(dnf.num_vars());
  const int n = dnf.num_vars();
  const int w = dnf.width();
  const int k = dnf.read();
  const Rational& eps = config.eps;

  const int d_max = config.d_max ? std::min(*config.d_max, n) : default_d_max(config.C, w, n, eps);
  if (d_max > kDecisionTreeCap) throw CapExceeded("d_max exceeds the decision-tree cap");
  const std::int64_t u_star = config.u_star ? *config.u_star : default_u_star(config.C, w, k, eps);

  const BooleanFunction f = evaluate(dnf);
  const FamilyClassification cls = classify_families(dnf, d_max, config.workers);
  const FourierSpectrum& spectrum = cls.spectrum();

  InstanceResult result;
  std::vector<CheckRow>& rows = result.rows;

  // Spectrum-level facts.
  const std::uint64_t min_coeffs = min_coeffs_for_eps(spectrum, eps);
  const DyadicRational one_norm = spectrum.one_norm();
  if (selected("sparse_concentration")) {
    Rational m2 = one_norm.to_rational() * one_norm.to_rational() / eps;
    BigInt ceiling = boost::multiprecision::numerator(m2) / boost::multiprecision::denominator(m2);
    if (Rational(ceiling) < m2) ceiling += 1;
    rows.push_back(dyadic_row("sparse_concentration", "M^2/eps", DyadicRational(BigInt(min_coeffs), 0),
                              DyadicRational(ceiling, 0)));
  }
  if (selected("approximation_transfer") || selected("width_truncation")) {
    // Width log2(s/eps), floored; s = 0 leaves nothing to drop.
    const int cut = dnf.size() == 0 ? w : static_cast<int>(floor_log2(Rational(dnf.size()) / eps));
    const Dnf g = truncate_width(dnf, std::max(cut, 0));
    const BooleanFunction g_table = evaluate(g);
    const DyadicRational distance = hamming_distance_fraction(f, g_table);
    const int dropped = dnf.size() - g.size();
    if (selected("width_truncation")) {
      const std::string subject = "w'=" + std::to_string(cut);
      rows.push_back(dyadic_row("width_truncation", subject + " vs dropped*2^-(w'+1)", distance,
                                DyadicRational(BigInt(dropped), static_cast<unsigned>(std::max(cut, 0) + 1))));
      rows.push_back(rational_row("width_truncation", subject + " vs eps", distance.to_rational(), eps,
                                  compare(distance, eps) <= 0, true));
    }
    if (selected("approximation_transfer")) {
      const DyadicRational eps2 = weight_above_degree(fourier_transform(g_table), d_max);
      const DyadicRational lhs = weight_above_degree(spectrum, d_max);
      rows.push_back(dyadic_row("approximation_transfer", "family=deg<=" + std::to_string(d_max), lhs,
                                DyadicRational(2) * (distance + eps2)));
    }
  }
  if (selected("low_degree_concentration")) {
    const int cutoff = static_cast<int>(std::min<std::int64_t>(floor_log2_product(config.C * w, {Rational(1) / eps}), n));
    const DyadicRational tail = weight_above_degree(spectrum, cutoff);
    rows.push_back(rational_row("low_degree_concentration", "deg>" + std::to_string(cutoff), tail.to_rational(), eps,
                                compare(tail, eps) <= 0, false));
  }

  // Per-subset checks, one encoder per worker.
  const std::vector<SubsetProfile>& profiles = cls.profiles();
  std::vector<SubsetRows> per_subset(profiles.size());
  {
    std::string first_error;
#pragma omp parallel num_threads(std::max(1, config.workers))
    {
      SwitchingEncoder encoder(dnf, f);
#pragma omp for schedule(dynamic, 2)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(profiles.size()); ++i) {
        try {
          per_subset[static_cast<std::size_t>(i)] =
              subset_checks(cls, f, profiles[static_cast<std::size_t>(i)], encoder, selected);
        } catch (const std::exception& e) {
#pragma omp critical(verify_error)
          if (first_error.empty()) first_error = e.what();
        }
      }
    }
    if (!first_error.empty()) throw InvariantViolation(first_error);
  }
  for (const SubsetRows& s : per_subset) rows.insert(rows.end(), s.rows.begin(), s.rows.end());

  // Per-degree checks.
  for (int d = 0; d <= d_max; ++d) {
    const std::string subject = "d=" + std::to_string(d);
    if (selected("degree_count")) {
      ExactCheck c = check_onenorm_degree_count(cls, d);
      rows.push_back(dyadic_row("degree_count", subject, c.lhs, c.bound, c.holds));
    }
    if (selected("degree_one_norm")) {
      ExactCheck c = check_onenorm_degree(cls, d);
      rows.push_back(dyadic_row("degree_one_norm", subject, c.lhs, c.bound, c.holds));
    }
    if (selected("full_depth_pairs")) {
      ExactCheck c = check_full_depth_pairs(cls, d);
      rows.push_back(dyadic_row("full_depth_pairs", subject, c.lhs, c.bound, c.holds));
    }
    if (selected("encoder_round_trip")) {
      std::uint64_t witnesses = 0;
      std::uint64_t failures = 0;
      std::string problem;
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        if (profiles[i].d != d) continue;
        witnesses += per_subset[i].witnesses;
        failures += per_subset[i].round_trip_failures + per_subset[i].claim_failures;
        if (problem.empty()) problem = per_subset[i].first_problem;
      }
      CheckRow row = dyadic_row("encoder_round_trip", subject, DyadicRational(BigInt(failures), 0), DyadicRational(0));
      row.detail = std::to_string(witnesses) + " full-depth restrictions encoded and decoded";
      if (!problem.empty()) row.detail += "; first problem: " + problem;
      rows.push_back(std::move(row));
    }
  }

  // Per-family checks.
  for (const auto& [key, stats] : cls.families()) {
    const std::string subject = family_label(key);
    if (selected("family_count_bound")) {
      ExactCheck c = check_onenorm_u_count(cls, key.d, key.u);
      rows.push_back(dyadic_row("family_count_bound", subject, c.lhs, c.bound, c.holds));
    }
    if (selected("family_one_norm")) {
      ExactCheck c = check_onenorm_u(cls, key.d, key.u);
      rows.push_back(dyadic_row("family_one_norm", subject, c.lhs, c.bound, c.holds));
    }
    if (selected("family_two_norm")) {
      ExactCheck c = check_twonorm_u(cls, key.d, key.u);
      rows.push_back(dyadic_row("family_two_norm", subject, c.lhs, c.bound, c.holds));
    }
    if (selected("family_cauchy")) {
      ExactCheck c = check_family_cauchy(cls, key.d, key.u);
      rows.push_back(dyadic_row("family_cauchy", subject, c.lhs, c.bound, c.holds));
    }
  }

  if (selected("st_inequality")) {
    StInequalityCheck c = st_inequality_check(dnf);
    CheckRow row = c.vacuous ? rational_row("st_inequality", "f", c.lhs.to_rational(), 0, true, true)
                             : rational_row("st_inequality", "f", c.lhs.to_rational(), c.rhs_lower, c.holds, true);
    if (c.vacuous) {
      row.bound = "inf";
      row.bound_decimal = 0;
      row.detail = "f is constant 1; the bound is infinite";
    } else {
      row.detail = "bound is a certified lower end of k ln(1/(1-Pr[f]))";
    }
    rows.push_back(std::move(row));
  }

  // Tail-weight table over u-cutoffs.
  const int max_cut = std::max(w * d_max, 0);
  Json tail_table = Json::array();
  std::vector<DyadicRational> tails;
  for (int cut = 0; cut <= max_cut; ++cut) {
    tails.push_back(tail_weight(cls, d_max, cut));
    Json entry;
    entry["u_cutoff"] = cut;
    entry["weight_outside"] = tails.back().to_string();
    entry["weight_outside_decimal"] = tails.back().to_double();
    tail_table.push_back(std::move(entry));
  }
  if (selected("tail_monotone")) {
    int increases = 0;
    for (std::size_t i = 1; i < tails.size(); ++i) increases += tails[i - 1] < tails[i] ? 1 : 0;
    CheckRow row = dyadic_row("tail_monotone", "u_cutoff=0.." + std::to_string(max_cut),
                              DyadicRational(increases), DyadicRational(0));
    row.detail = "number of increases along the cutoff";
    rows.push_back(std::move(row));
  }

  // Report-only tail statements whose premises need large w.
  const int d_cut = std::min<int>(d_max, static_cast<int>(default_d_max(config.C, w, n, eps)));
  if (selected("twonorm_tail_simplified")) {
    std::uint64_t max_covers = 0;
    for (const SubsetProfile& p : profiles) {
      if (p.d > d_cut) continue;
      for (const auto& [u, count] : cover_counts_by_union(dnf, p.subset)) max_covers = std::max(max_covers, count);
    }
    std::map<int, DyadicRational> weight_by_u;
    for (const auto& [key, stats] : cls.families()) {
      if (key.d <= d_cut) weight_by_u[key.u] += stats.two_norm_sq;
    }
    for (const auto& [u, weight] : weight_by_u) {
      // Compared squared: weight^2 <= 2^-u max numCovers^2.
      const DyadicRational lhs = weight * weight;
      const DyadicRational bound =
          DyadicRational(BigInt(max_covers) * BigInt(max_covers), 0) * DyadicRational::power_of_two(-u);
      CheckRow row = dyadic_row("twonorm_tail_simplified", "u=" + std::to_string(u), lhs, bound, lhs <= bound, false);
      row.detail = "squared sides; premise u >= 100 C w log2(3/eps) and large w";
      rows.push_back(std::move(row));
    }
  }
  if (selected("high_u_tail")) {
    DyadicRational high = 0;
    for (const auto& [key, stats] : cls.families()) {
      if (key.d <= d_cut && key.u > u_star) high += stats.two_norm_sq;
    }
    rows.push_back(rational_row("high_u_tail", "u>" + std::to_string(u_star), high.to_rational(), eps / 3,
                                compare(high, eps / 3) <= 0, false));
  }

  // Document.
  Json doc;
  doc["name"] = name;
  doc["source"] = source_json(source);
  doc["dnf"] = to_json(dnf);
  doc["metrics"] = metrics_json(dnf);
  doc["bias"] = dyadic_json(f.bias());
  doc["d_max"] = d_max;
  doc["u_star"] = u_star;
  doc["min_coeffs_for_eps"] = min_coeffs;
  doc["fourier_one_norm"] = dyadic_json(one_norm);
  if (n <= 10) doc["spectrum"] = to_json(spectrum);
  Json families = Json::array();
  for (const auto& [key, stats] : cls.families()) {
    Json fam;
    fam["d"] = key.d;
    fam["u"] = key.u;
    fam["members"] = stats.members;
    fam["one_norm"] = stats.one_norm.to_string();
    fam["two_norm_sq"] = stats.two_norm_sq.to_string();
    fam["max_abs_coeff"] = stats.max_abs_coeff.to_string();
    fam["max_num_covers"] = stats.max_num_covers;
    families.push_back(std::move(fam));
  }
  doc["families"] = std::move(families);
  std::vector<VarMask> unassigned;
  for (const SubsetProfile& p : profiles) {
    if (!p.family_u) unassigned.push_back(p.subset);
  }
  doc["unassigned_zero_coefficient"] = unassigned;
  doc["tail_weight"] = std::move(tail_table);
  Json check_rows = Json::array();
  for (const CheckRow& row : rows) check_rows.push_back(row_json(row));
  doc["checks"] = std::move(check_rows);
  result.document = std::move(doc);

  std::ostringstream csv;
  append_family_csv(csv, name, cls);
  result.csv = csv.str();
  return result;
}

constexpr const char* kCsvHeader =
    "instance,d,u,count,one_norm,one_norm_decimal,two_norm_sq,two_norm_sq_decimal,max_abs_coeff,"
    "max_abs_coeff_decimal,max_num_covers,bound_337,bound_337_decimal,bound_43,bound_43_decimal,"
    "holds_one_norm,holds_two_norm,holds_cauchy,holds_count\n";

std::string instance_name(const InstanceSource& source, std::size_t index) {
  return source.name.empty() ? "instance" + std::to_string(index) : source.name;
}

Json config_summary(const ExperimentConfig& config) {
  Json j;
  j["eps"] = rational_to_string(config.eps);
  j["C"] = rational_to_string(config.C);
  j["d_max"] = config.d_max ? Json(*config.d_max) : Json(nullptr);
  j["u_star"] = config.u_star ? Json(*config.u_star) : Json(nullptr);
  j["checks"] = config.checks;
  return j;
}

}  // namespace

const std::vector<std::string>& check_tags() { return kTags; }

ExperimentConfig config_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  ExperimentConfig config;
  try {
    config.eps = rational_field(j, "eps", config.eps);
    config.C = rational_field(j, "C", config.C);
    if (j.contains("C_sweep")) {
      config.c_sweep.clear();
      for (const Json& c : j.at("C_sweep")) {
        config.c_sweep.push_back(c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<std::int64_t>()));
      }
    }
    if (j.contains("d_max") && !j.at("d_max").is_null()) config.d_max = j.at("d_max").get<int>();
    if (j.contains("u_star") && !j.at("u_star").is_null()) config.u_star = j.at("u_star").get<int>();
    if (j.contains("checks")) config.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("report")) config.report = base_dir / j.at("report").get<std::string>();
    if (j.contains("csv")) config.csv = base_dir / j.at("csv").get<std::string>();
    if (j.contains("workers")) config.workers = j.at("workers").get<int>();
    if (j.contains("budget_families")) config.budget_families = j.at("budget_families").get<int>();
    if (j.contains("budget_seed")) config.budget_seed = j.at("budget_seed").get<std::uint64_t>();
    if (j.contains("instances")) {
      for (const Json& inst : j.at("instances")) {
        InstanceSource source;
        if (inst.contains("name")) source.name = inst.at("name").get<std::string>();
        if (inst.contains("report_only")) source.report_only = inst.at("report_only").get<bool>();
        int given = 0;
        if (inst.contains("file")) {
          source.file = base_dir / inst.at("file").get<std::string>();
          ++given;
        }
        if (inst.contains("generator")) {
          source.generator = generator_spec_from_json(inst.at("generator"));
          ++given;
        }
        if (inst.contains("dnf")) {
          source.inline_dnf = dnf_from_json(inst.at("dnf"));
          ++given;
        }
        if (given != 1) throw ParseError("each instance needs exactly one of file, generator, dnf");
        config.instances.push_back(std::move(source));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (config.eps <= 0 || config.eps > 1) throw ParseError("eps must lie in (0, 1]");
  if (config.C < 0) throw ParseError("C must be non-negative");
  if (config.d_max && (*config.d_max < 0 || *config.d_max > kDecisionTreeCap)) {
    throw ParseError("d_max must lie in [0, " + std::to_string(kDecisionTreeCap) + "]");
  }
  if (config.u_star && *config.u_star < 0) throw ParseError("u_star must be non-negative");
  if (config.workers < 1) throw ParseError("workers must be positive");
  for (const std::string& tag : config.checks) {
    if (std::find(kTags.begin(), kTags.end(), tag) == kTags.end()) throw ParseError("unknown check tag '" + tag + "'");
  }
  return config;
}

Dnf load_instance(const InstanceSource& source) {
  if (source.file) return read_dnf_file(*source.file);
  if (source.generator) return generate(*source.generator);
  if (source.inline_dnf) return *source.inline_dnf;
  throw PreconditionError("instance has no source");
}

std::int64_t floor_log2_product(const Rational& coef, const std::vector<Rational>& args) {
  if (coef < 0) throw PreconditionError("coefficient must be non-negative");
  for (const Rational& a : args) {
    if (a < 1) throw PreconditionError("logarithm arguments must be >= 1");
  }
  if (coef == 0) return 0;
  auto floor_of = [](const Rational& x) {
    BigInt q = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
    if (Rational(q) > x) q -= 1;
    return static_cast<std::int64_t>(q);
  };
  auto exact_log2 = [](const Rational& a) -> std::optional<std::int64_t> {
    const BigInt& p = boost::multiprecision::numerator(a);
    const BigInt& q = boost::multiprecision::denominator(a);
    if ((p & (p - 1)) != 0 || (q & (q - 1)) != 0) return std::nullopt;
    return static_cast<std::int64_t>(boost::multiprecision::msb(p)) -
           static_cast<std::int64_t>(boost::multiprecision::msb(q));
  };
  std::int64_t last = 0;
  for (int bits = 64; bits <= 4096; bits *= 2) {
    const LogEnclosure ln2 = ln_enclosure(Rational(2), bits);
    Rational lower = coef;
    Rational upper = coef;
    for (const Rational& a : args) {
      if (auto exact = exact_log2(a)) {
        lower *= *exact;
        upper *= *exact;
        continue;
      }
      const LogEnclosure ln = ln_enclosure(a, bits);
      lower *= ln.lower / ln2.upper;
      upper *= ln.upper / ln2.lower;
    }
    const std::int64_t lo = floor_of(lower);
    last = floor_of(upper);
    if (lo == last) return lo;
  }
  // Unresolved only when the product sits on an integer; the upper end is then exact.
  return last;
}

int default_d_max(const Rational& C, int w, int n, const Rational& eps) {
  const std::int64_t cutoff = floor_log2_product(C * w, {Rational(3) / eps});
  return static_cast<int>(std::min<std::int64_t>({cutoff, n, kDecisionTreeCap}));
}

std::int64_t default_u_star(const Rational& C, int w, int k, const Rational& eps) {
  return floor_log2_product(100 * C * w, {Rational(k + 2), Rational(3) / eps});
}

DyadicRational tail_weight(const FamilyClassification& cls, int d_cut, std::int64_t u_cut) {
  const FourierSpectrum& spectrum = cls.spectrum();
  const unsigned n = static_cast<unsigned>(cls.num_vars());
  BigInt inside = 0;
  for (const SubsetProfile& p : cls.profiles()) {
    if (p.d <= d_cut && p.family_u && *p.family_u <= u_cut) {
      inside += BigInt(p.scaled_coefficient) * p.scaled_coefficient;
    }
  }
  return spectrum.total_weight() - DyadicRational(inside, 2 * n);
}

BudgetSweep budget_lemma_sweep(int families, std::uint64_t seed) {
  SplitMix64 rng(seed);
  BudgetSweep sweep;
  for (int i = 0; i < families; ++i) {
    const int l = 1 + static_cast<int>(rng.below(12));
    std::vector<int> sizes;
    std::int64_t total = 0;
    Rational weight = 0;
    for (int r = 0; r < l; ++r) {
      sizes.push_back(static_cast<int>(rng.below(9)));
      total += sizes.back();
      weight += Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(sizes.back()));
    }
    const Rational F = weight + Rational(static_cast<std::int64_t>(rng.below(8)), 8);
    std::int64_t v = total + static_cast<std::int64_t>(rng.below(6));
    if (Rational(v) <= F) {
      const Rational next = F + 1;
      v = static_cast<std::int64_t>(boost::multiprecision::numerator(next) / boost::multiprecision::denominator(next));
    }
    ++sweep.families;
    if (!budget_lemma_bound(sizes, v, F).holds) ++sweep.violations;
  }
  return sweep;
}

Report run_verify(const ExperimentConfig& config) {
  Report report;
  Json doc;
  doc["mode"] = "verify";
  doc["config"] = config_summary(config);
  std::ostringstream csv;
  csv << kCsvHeader;
  Json instances = Json::array();
  std::size_t total_rows = 0;
  std::size_t asserted_rows = 0;
  const Selection selected(config.checks);
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    const InstanceSource& source = config.instances[i];
    const std::string name = instance_name(source, i);
    InstanceResult result = verify_instance(name, source, load_instance(source), config);
    for (const CheckRow& row : result.rows) {
      ++total_rows;
      if (!row.asserted) continue;
      ++asserted_rows;
      if (!row.holds) report.failures.push_back(name + "/" + row.tag + "/" + row.subject);
    }
    csv << result.csv;
    instances.push_back(std::move(result.document));
  }
  doc["instances"] = std::move(instances);
  if (selected("budget_lemma") && config.budget_families > 0) {
    BudgetSweep sweep = budget_lemma_sweep(config.budget_families, config.budget_seed);
    CheckRow row = dyadic_row("budget_lemma", std::to_string(sweep.families) + " random families",
                              DyadicRational(sweep.violations), DyadicRational(0));
    row.detail = "violations of l <= 4v/log2(v/F), seed " + std::to_string(config.budget_seed);
    ++total_rows;
    ++asserted_rows;
    if (!row.holds) report.failures.push_back("global/budget_lemma/" + row.subject);
    doc["global_checks"] = Json::array({row_json(row)});
  }
  Json summary;
  summary["rows"] = total_rows;
  summary["asserted"] = asserted_rows;
  summary["failed"] = report.failures.size();
  summary["failures"] = report.failures;
  doc["summary"] = std::move(summary);
  report.document = std::move(doc);
  report.csv = csv.str();
  return report;
}

Report run_concentration_sweep(const ExperimentConfig& config) {
  std::vector<InstanceSource> instances = config.instances;
  if (instances.empty()) {
    for (int w = 1; w <= 4; ++w) {
      InstanceSource s;
      s.name = "tribes_w" + std::to_string(w) + "_t2";
      s.generator = GeneratorSpec{GeneratorFamily::kTribes, 0, 2, w, 1, 0, true, 0};
      instances.push_back(std::move(s));
    }
    for (int k = 1; k <= 3; ++k) {
      InstanceSource s;
      s.name = "read_k" + std::to_string(k);
      s.generator = GeneratorSpec{GeneratorFamily::kRandomReadK, 8, 4, 3, k, 0, false, static_cast<std::uint64_t>(k)};
      instances.push_back(std::move(s));
    }
    InstanceSource dense;
    dense.name = "dense_pool";
    dense.generator = GeneratorSpec{GeneratorFamily::kDensePool, 0, 8, 3, 0, 6, true, 1};
    dense.report_only = true;
    instances.push_back(std::move(dense));
  }

  Report report;
  Json doc;
  doc["mode"] = "sweep";
  Json summary_config = config_summary(config);
  Json c_values = Json::array();
  for (const Rational& c : config.c_sweep) c_values.push_back(rational_to_string(c));
  summary_config["C_sweep"] = std::move(c_values);
  doc["config"] = std::move(summary_config);

  Json rows = Json::array();
  std::ostringstream csv;
  csv << "instance,n,s,w,k,C,min_coeffs,d_cut,u_star,captured_at_u_star,captured_decimal,smallest_u_cutoff,"
         "read_log_hypothesis,read_loglog_hypothesis\n";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const InstanceSource& source = instances[i];
    const std::string name = instance_name(source, i);
    const Dnf dnf = load_instance(source);
    check_variable_count(dnf.num_vars());
    const int n = dnf.num_vars();
    const int w = dnf.width();
    const int k = dnf.read();
    const int d_max = std::min(config.d_max ? std::min(*config.d_max, n) : n, kDecisionTreeCap);
    const FamilyClassification cls = classify_families(dnf, d_max, config.workers);
    const std::uint64_t min_coeffs = min_coeffs_for_eps(cls.spectrum(), config.eps);
    const DyadicRational total = cls.spectrum().total_weight();

    // Read hypotheses of the headline bounds, reported only:
    //   k <= w / (4 log2(e w))  and  k <= log2 w / (16 log2 log2 w).
    const double wd = static_cast<double>(w);
    const bool read_log = w > 0 && k <= wd / (4.0 * std::log2(std::exp(1.0) * wd));
    const bool read_loglog = w > 2 && k <= std::log2(wd) / (16.0 * std::log2(std::log2(wd)));

    for (const Rational& C : config.c_sweep) {
      const int d_cut = std::min(default_d_max(C, w, n, config.eps), d_max);
      const std::int64_t u_star = config.u_star ? *config.u_star : default_u_star(C, w, k, config.eps);
      const DyadicRational captured = total - tail_weight(cls, d_cut, u_star);
      Json table = Json::array();
      std::optional<int> smallest;
      DyadicRational previous = total + DyadicRational(1);
      bool monotone = true;
      for (int cut = 0; cut <= std::max(w * d_cut, 0); ++cut) {
        const DyadicRational tail = tail_weight(cls, d_cut, cut);
        monotone = monotone && tail <= previous;
        previous = tail;
        if (!smallest && compare(tail, config.eps) <= 0) smallest = cut;
        Json entry;
        entry["u_cutoff"] = cut;
        entry["weight_outside"] = tail.to_string();
        entry["weight_outside_decimal"] = tail.to_double();
        table.push_back(std::move(entry));
      }
      if (!source.report_only && !monotone) report.failures.push_back(name + "/tail_monotone/C=" + rational_to_string(C));

      Json row;
      row["instance"] = name;
      row["source"] = source_json(source);
      row["report_only"] = source.report_only;
      row["metrics"] = metrics_json(dnf);
      row["C"] = rational_to_string(C);
      row["eps"] = rational_to_string(config.eps);
      row["min_coeffs_for_eps"] = min_coeffs;
      row["d_cut"] = d_cut;
      row["u_star"] = u_star;
      row["captured_at_u_star"] = dyadic_json(captured);
      row["smallest_u_cutoff_within_eps"] = smallest ? Json(*smallest) : Json(nullptr);
      row["tail_weight"] = std::move(table);
      row["tail_monotone"] = monotone;
      row["read_log_hypothesis"] = read_log;
      row["read_loglog_hypothesis"] = read_loglog;
      rows.push_back(std::move(row));

      csv << name << ',' << n << ',' << dnf.size() << ',' << w << ',' << k << ',' << rational_to_string(C) << ','
          << min_coeffs << ',' << d_cut << ',' << u_star << ',' << captured.to_string() << ',' << captured.to_double()
          << ',' << (smallest ? std::to_string(*smallest) : std::string("none")) << ',' << (read_log ? 1 : 0) << ','
          << (read_loglog ? 1 : 0) << '\n';
    }
  }
  doc["rows"] = std::move(rows);
  Json summary;
  summary["failed"] = report.failures.size();
  summary["failures"] = report.failures;
  doc["summary"] = std::move(summary);
  report.document = std::move(doc);
  report.csv = csv.str();
  return report;
}

}  // namespace dnfourier
