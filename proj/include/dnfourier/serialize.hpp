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

#include <filesystem>
#include <string>

#include "json.hpp"

#include "dnfourier/boolean_function.hpp"
#include "dnfourier/dnf.hpp"
#include "dnfourier/encoder.hpp"
#include "dnfourier/fourier.hpp"
#include "dnfourier/generators.hpp"

namespace dnfourier {

using Json = nlohmann::ordered_json;

// {"n": int, "table_hex": string}; table_hex is read most-significant digit
// first, so bit 0 of the last digit is f(0).
Json to_json(const BooleanFunction& f);
BooleanFunction function_from_json(const Json& j);

// Nonzero coefficients only, ascending mask:
// [{"mask": int, "numerator": string, "log_denominator": int}, ...].
// Numerators are decimal strings so they survive any JSON reader.
Json to_json(const FourierSpectrum& spectrum);
FourierSpectrum spectrum_from_json(int n, const Json& j);

// {"n": int, "terms": [[lit, ...], ...]} with signed 1-based literals.
Json to_json(const Dnf& dnf);
Dnf dnf_from_json(const Json& j);

// {"x_sat": int, "sigma": [int, ...], "a": [0|1, ...]}.
Json to_json(const Encoding& e);
Encoding encoding_from_json(const Json& j);

// {"family": name, "n", "s", "w", "k", "pool_size", "exact_width", "seed"};
// absent numeric fields default to 0.
Json to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const Json& j);

// DNF file in either format; JSON is recognized by a leading '{'.
Dnf read_dnf_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace dnfourier
