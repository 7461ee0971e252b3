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

#include "dnfourier/serialize.hpp"

#include <fstream>
#include <sstream>

#include "dnfourier/errors.hpp"

namespace dnfourier {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace

Json to_json(const BooleanFunction& f) {
  Json j;
  j["n"] = f.num_vars();
  j["table_hex"] = f.to_hex();
  return j;
}

BooleanFunction function_from_json(const Json& j) {
  return BooleanFunction::from_hex(field<int>(j, "n"), field<std::string>(j, "table_hex"));
}

Json to_json(const FourierSpectrum& spectrum) {
  Json out = Json::array();
  for (VarMask mask = 0; mask < spectrum.size(); ++mask) {
    if (spectrum.scaled(mask) == 0) continue;
    DyadicRational c = spectrum.coefficient(mask);
    Json entry;
    entry["mask"] = mask;
    entry["numerator"] = c.numerator().str();
    entry["log_denominator"] = c.log_denominator();
    out.push_back(std::move(entry));
  }
  return out;
}

FourierSpectrum spectrum_from_json(int n, const Json& j) {
  check_variable_count(n);
  if (!j.is_array()) throw ParseError("spectrum must be a JSON array");
  std::vector<std::int64_t> scaled(std::size_t{1} << n, 0);
  for (const Json& entry : j) {
    const auto mask = field<std::uint64_t>(entry, "mask");
    if (mask >= scaled.size()) throw ParseError("spectrum mask beyond 2^n");
    BigInt numerator;
    try {
      numerator = BigInt(field<std::string>(entry, "numerator"));
    } catch (const std::runtime_error& e) {
      throw ParseError(std::string("bad numerator: ") + e.what());
    }
    DyadicRational c(numerator, field<unsigned>(entry, "log_denominator"));
    if (c.log_denominator() > static_cast<unsigned>(n)) throw ParseError("coefficient is not a multiple of 2^-n");
    scaled[mask] = static_cast<std::int64_t>(c.scaled(n).numerator());
  }
  return FourierSpectrum(n, std::move(scaled));
}

Json to_json(const Dnf& dnf) {
  Json j;
  j["n"] = dnf.num_vars();
  Json terms = Json::array();
  for (const Term& t : dnf.terms()) {
    Json lits = Json::array();
    for (const Literal& lit : t.literals()) lits.push_back(lit.positive ? lit.var + 1 : -(lit.var + 1));
    terms.push_back(std::move(lits));
  }
  j["terms"] = std::move(terms);
  return j;
}

Dnf dnf_from_json(const Json& j) {
  const int n = field<int>(j, "n");
  if (n < 0 || n > kDnfVariableLimit) throw ParseError("n out of range");
  const Json& terms_json = j.at("terms");
  if (!terms_json.is_array()) throw ParseError("terms must be an array");
  std::vector<Term> terms;
  for (const Json& term : terms_json) {
    if (!term.is_array()) throw ParseError("each term must be an array of literals");
    std::vector<Literal> literals;
    for (const Json& lit_json : term) {
      if (!lit_json.is_number_integer()) throw ParseError("literal must be an integer");
      const int lit = lit_json.get<int>();
      if (lit == 0 || lit > n || -lit > n) throw ParseError("literal " + std::to_string(lit) + " out of range");
      literals.push_back({std::abs(lit) - 1, lit > 0});
    }
    try {
      terms.emplace_back(std::move(literals));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
  return Dnf(n, std::move(terms));
}

Json to_json(const Encoding& e) {
  Json j;
  j["x_sat"] = e.x_sat;
  j["sigma"] = e.sigma;
  Json a = Json::array();
  for (bool bit : e.a) a.push_back(bit ? 1 : 0);
  j["a"] = std::move(a);
  return j;
}

Encoding encoding_from_json(const Json& j) {
  Encoding e;
  e.x_sat = field<std::uint64_t>(j, "x_sat");
  e.sigma = field<std::vector<int>>(j, "sigma");
  for (int bit : field<std::vector<int>>(j, "a")) {
    if (bit != 0 && bit != 1) throw ParseError("a entries must be 0 or 1");
    e.a.push_back(bit == 1);
  }
  return e;
}

Json to_json(const GeneratorSpec& spec) {
  Json j;
  j["family"] = family_name(spec.family);
  j["n"] = spec.n;
  j["s"] = spec.s;
  j["w"] = spec.w;
  j["k"] = spec.k;
  j["pool_size"] = spec.pool_size;
  j["exact_width"] = spec.exact_width;
  j["seed"] = spec.seed;
  return j;
}

GeneratorSpec generator_spec_from_json(const Json& j) {
  GeneratorSpec spec;
  spec.family = parse_family(field<std::string>(j, "family"));
  spec.n = field_or(j, "n", 0);
  spec.s = field_or(j, "s", 0);
  spec.w = field_or(j, "w", 0);
  spec.k = field_or(j, "k", 0);
  spec.pool_size = field_or(j, "pool_size", 0);
  spec.exact_width = field_or(j, "exact_width", false);
  spec.seed = field_or<std::uint64_t>(j, "seed", 0);
  return spec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
  if (!out) throw Error("write failed for " + path.string());
}

Dnf read_dnf_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return dnf_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
  return parse_dnf_text(text);
}

}  // namespace dnfourier
