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

// dnfourier: command-line front end.
//
// Exit status: 0 success, 1 a checked inequality or round trip failed,
// 2 usage, parse, or cap errors.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dnfourier/covers.hpp"
#include "dnfourier/encoder.hpp"
#include "dnfourier/errors.hpp"
#include "dnfourier/experiments.hpp"
#include "dnfourier/fourier.hpp"
#include "dnfourier/generators.hpp"
#include "dnfourier/restriction.hpp"
#include "dnfourier/serialize.hpp"

namespace {

using namespace dnfourier;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::uint64_t parse_mask(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t mask = 0;
  try {
    mask = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    throw ParseError("bad subset mask '" + text + "'");
  }
  if (used != text.size()) throw ParseError("bad subset mask '" + text + "'");
  return mask;
}

struct GenOptions {
  std::string config;
  std::string family = "random_read_k";
  GeneratorSpec spec;
  std::string format = "text";
  std::string output;
};

int run_gen(const GenOptions& opt, const CLI::App& cmd) {
  GeneratorSpec spec = opt.spec;
  if (!opt.config.empty()) {
    spec = generator_spec_from_json(Json::parse(read_text_file(opt.config)));
  }
  if (opt.config.empty() || cmd.count("--family")) spec.family = parse_family(opt.family);
  const Dnf dnf = generate(spec);
  emit(opt.output, opt.format == "json" ? to_json(dnf).dump(2) + "\n" : to_text(dnf));
  return kExitOk;
}

int run_spectrum(const std::string& file, const std::string& output) {
  const Dnf dnf = read_dnf_file(file);
  check_variable_count(dnf.num_vars());
  const BooleanFunction f = evaluate(dnf);
  const FourierSpectrum spectrum = fourier_transform(f);
  Json doc;
  doc["n"] = dnf.num_vars();
  doc["metrics"] = {{"s", dnf.size()}, {"w", dnf.width()}, {"k", dnf.read()}};
  doc["function"] = to_json(f);
  doc["bias"] = f.bias().to_string();
  doc["fourier_one_norm"] = spectrum.one_norm().to_string();
  doc["degree"] = spectrum.degree();
  doc["spectrum"] = to_json(spectrum);
  emit(output, doc.dump(2) + "\n");
  return kExitOk;
}

struct RunOptions {
  std::string config;
  std::optional<std::string> eps;
  std::optional<std::string> C;
  std::optional<int> d_max;
  std::optional<int> u_star;
  std::optional<int> workers;
  std::vector<std::string> checks;
  std::optional<std::string> report;
  std::optional<std::string> csv;
};

ExperimentConfig load_config(const RunOptions& opt) {
  const std::filesystem::path path(opt.config);
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(opt.config + ": " + e.what());
  }
  if (opt.eps) j["eps"] = *opt.eps;
  if (opt.C) j["C"] = *opt.C;
  if (opt.d_max) j["d_max"] = *opt.d_max;
  if (opt.u_star) j["u_star"] = *opt.u_star;
  if (opt.workers) j["workers"] = *opt.workers;
  if (!opt.checks.empty()) j["checks"] = opt.checks;
  ExperimentConfig config = config_from_json(j, path.parent_path());
  // Output paths given on the command line are taken relative to the shell.
  if (opt.report) config.report = *opt.report;
  if (opt.csv) config.csv = *opt.csv;
  return config;
}

int finish(const Report& report, const ExperimentConfig& config) {
  emit(config.report.string(), report.text());
  if (!config.csv.empty()) write_text_file(config.csv, report.csv);
  for (const std::string& failure : report.failures) std::cerr << "FAILED " << failure << '\n';
  return report.ok() ? kExitOk : kExitCheckFailed;
}

struct EncDecOptions {
  std::string file;
  std::optional<int> d_max;
  std::string jsonl;
};

int run_encdec(const EncDecOptions& opt) {
  const Dnf dnf = read_dnf_file(opt.file);
  check_variable_count(dnf.num_vars());
  const int n = dnf.num_vars();
  const int d_max = std::min({opt.d_max.value_or(n), n, kDecisionTreeCap});
  SwitchingEncoder encoder(dnf);
  std::ofstream corpus;
  if (!opt.jsonl.empty()) {
    corpus.open(opt.jsonl, std::ios::binary);
    if (!corpus) throw Error("cannot write " + opt.jsonl);
  }
  const std::string dnf_ref = std::filesystem::path(opt.file).filename().string();
  const VarMask all = (VarMask{1} << n) - 1;
  Json per_degree = Json::array();
  std::uint64_t failures = 0;
  for (int d = 0; d <= d_max; ++d) {
    std::uint64_t witnesses = 0;
    std::uint64_t bad = 0;
    for (VarMask subset = 0; subset <= all; ++subset) {
      if (popcount(subset) != d) continue;
      for (std::uint64_t t = 0; t < (std::uint64_t{1} << (n - d)); ++t) {
        Restriction r{subset, deposit_bits(t, all & ~subset)};
        if (!encoder.is_full_depth(r)) continue;
        ++witnesses;
        try {
          EncodeResult enc = encoder.encode(r);
          Restriction back = encoder.decode(enc.encoding);
          if (back.free_vars != r.free_vars || back.fixed_values != r.fixed_values) ++bad;
          if (corpus.is_open()) {
            Json line;
            line["dnf_ref"] = dnf_ref;
            line["S_mask"] = subset;
            line["xsbar_mask"] = r.fixed_values;
            line["encoding"] = to_json(enc.encoding);
            corpus << line.dump() << '\n';
          }
        } catch (const InvariantViolation& e) {
          ++bad;
          std::cerr << "claim failed for S=" << subset << ": " << e.what() << '\n';
        } catch (const DecodeError& e) {
          ++bad;
          std::cerr << "decode failed for S=" << subset << ": " << e.what() << '\n';
        }
      }
    }
    per_degree.push_back({{"d", d}, {"full_depth_restrictions", witnesses}, {"failures", bad}});
    failures += bad;
  }
  Json doc;
  doc["dnf"] = dnf_ref;
  doc["per_degree"] = std::move(per_degree);
  doc["failures"] = failures;
  std::cout << doc.dump(2) << '\n';
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

struct CoversOptions {
  std::string file;
  std::string set;
  std::optional<int> u;
  bool all_terms = false;
};

int run_covers(const CoversOptions& opt) {
  const Dnf dnf = read_dnf_file(opt.file);
  const VarMask subset = parse_mask(opt.set);
  const CoverScope scope = opt.all_terms ? CoverScope::kAllTerms : CoverScope::kTermsMeetingSet;
  const auto counts = cover_counts_by_union(dnf, subset, scope);
  Json doc;
  doc["S_mask"] = subset;
  doc["d"] = popcount(subset);
  doc["scope"] = opt.all_terms ? "all_terms" : "terms_meeting_set";
  Json by_u = Json::array();
  std::uint64_t total = 0;
  for (const auto& [u, count] : counts) {
    by_u.push_back({{"u", u}, {"num_covers", count}});
    total += count;
  }
  doc["num_covers_by_u"] = std::move(by_u);
  doc["total"] = total;
  if (opt.u) {
    auto it = counts.find(*opt.u);
    doc["u"] = *opt.u;
    doc["num_covers"] = it == counts.end() ? 0 : it->second;
  }
  bool ok = true;
  if (!opt.all_terms) {
    ReadCoverBound read = read_cover_count_bound(dnf, subset);
    doc["read_bound"] = {{"count", read.count},
                         {"bound", read.bound.str()},
                         {"holds", read.holds},
                         {"chain_holds", read.chain_holds}};
    ok = read.holds && read.chain_holds;
  }
  std::cout << doc.dump(2) << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

void add_run_options(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("config", opt.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--eps", opt.eps, "Concentration error, e.g. 1/8");
  cmd->add_option("--C", opt.C, "Degree-cutoff constant");
  cmd->add_option("--d-max", opt.d_max, "Largest |S| to classify");
  cmd->add_option("--u-star", opt.u_star, "Union-size cutoff");
  cmd->add_option("--workers", opt.workers, "OpenMP worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--check", opt.checks, "Restrict to these check tags (repeatable)");
  cmd->add_option("--report", opt.report, "Report path ('-' for stdout)");
  cmd->add_option("--csv", opt.csv, "Per-family CSV path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Fourier and cover analysis of small DNF formulas"};
  app.require_subcommand(1);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a DNF instance");
  gen_cmd->add_option("--config", gen.config, "Generator spec (JSON)")->check(CLI::ExistingFile);
  gen_cmd->add_option("--family", gen.family, "tribes | random_read_k | dense_pool");
  gen_cmd->add_option("--n", gen.spec.n, "Variables (random_read_k)");
  gen_cmd->add_option("--s", gen.spec.s, "Terms (tribes: number of tribes)");
  gen_cmd->add_option("--w", gen.spec.w, "Width");
  gen_cmd->add_option("--k", gen.spec.k, "Read bound (random_read_k)");
  gen_cmd->add_option("--pool-size", gen.spec.pool_size, "Variable pool (dense_pool)");
  gen_cmd->add_flag("--exact-width", gen.spec.exact_width, "Every term has width exactly w");
  gen_cmd->add_option("--seed", gen.spec.seed, "64-bit seed");
  gen_cmd->add_option("--format", gen.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  gen_cmd->add_option("-o,--output", gen.output, "Output path (default stdout)");

  std::string spectrum_file;
  std::string spectrum_output;
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Exact Fourier spectrum of a DNF");
  spectrum_cmd->add_option("dnf-file", spectrum_file, "DNF file (text or JSON)")->required()->check(CLI::ExistingFile);
  spectrum_cmd->add_option("-o,--output", spectrum_output, "Output path (default stdout)");

  RunOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the exact check battery");
  add_run_options(verify_cmd, verify);

  RunOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Concentration measurements over an instance sweep");
  add_run_options(sweep_cmd, sweep);

  EncDecOptions encdec;
  CLI::App* encdec_cmd = app.add_subcommand("encdec-test", "Exhaustive encode/decode round trips");
  encdec_cmd->add_option("dnf-file", encdec.file, "DNF file")->required()->check(CLI::ExistingFile);
  encdec_cmd->add_option("--d-max", encdec.d_max, "Largest |S| to enumerate");
  encdec_cmd->add_option("--jsonl", encdec.jsonl, "Write every encoding as a JSON line");

  CoversOptions covers;
  CLI::App* covers_cmd = app.add_subcommand("covers", "Count covers of a variable set");
  covers_cmd->add_option("dnf-file", covers.file, "DNF file")->required()->check(CLI::ExistingFile);
  covers_cmd->add_option("--set", covers.set, "Subset mask, bit i = variable i+1 (decimal or 0x..)")->required();
  covers_cmd->add_option("--u", covers.u, "Report this union size only");
  covers_cmd->add_flag("--all-terms", covers.all_terms, "Allow terms disjoint from the set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen, *gen_cmd);
    if (*spectrum_cmd) return run_spectrum(spectrum_file, spectrum_output);
    if (*verify_cmd) {
      const ExperimentConfig config = load_config(verify);
      return finish(run_verify(config), config);
    }
    if (*sweep_cmd) {
      const ExperimentConfig config = load_config(sweep);
      return finish(run_concentration_sweep(config), config);
    }
    if (*encdec_cmd) return run_encdec(encdec);
    if (*covers_cmd) return run_covers(covers);
  } catch (const InvariantViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
