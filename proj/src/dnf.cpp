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

#include "dnfourier/dnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "dnfourier/errors.hpp"

namespace dnfourier {

Term::Term(std::vector<Literal> literals) : literals_(std::move(literals)) {
  for (const Literal& lit : literals_) {
    if (lit.var < 0 || lit.var >= kDnfVariableLimit) {
      throw PreconditionError("literal variable " + std::to_string(lit.var + 1) + " out of range");
    }
    VarMask bit = VarMask{1} << lit.var;
    if (vars() & bit) {
      bool complementary = lit.positive ? (negative_ & bit) : (positive_ & bit);
      throw PreconditionError(std::string(complementary ? "complementary literals" : "repeated variable") +
                              " on x" + std::to_string(lit.var + 1) + " in one term");
    }
    (lit.positive ? positive_ : negative_) |= bit;
  }
}

TermStatus Term::status(VarMask fixed, std::uint64_t values) const {
  const VarMask decided = vars() & fixed;
  if ((values & decided) != (positive_ & decided)) return TermStatus::kFalsified;
  return decided == vars() ? TermStatus::kSatisfied : TermStatus::kAlive;
}

Dnf::Dnf(int n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
  if (n < 0 || n > kDnfVariableLimit) throw CapExceeded("DNF variable count out of range");
  const VarMask universe = n == 64 ? ~VarMask{0} : (VarMask{1} << n) - 1;
  for (const Term& t : terms_) {
    if (t.vars() & ~universe) throw PreconditionError("term mentions a variable beyond n");
  }
}

int Dnf::width() const {
  int w = 0;
  for (const Term& t : terms_) w = std::max(w, t.width());
  return w;
}

int Dnf::read() const {
  std::vector<int> occurrences(static_cast<std::size_t>(n_), 0);
  for (const Term& t : terms_) {
    for (const Literal& lit : t.literals()) ++occurrences[static_cast<std::size_t>(lit.var)];
  }
  return occurrences.empty() ? 0 : *std::max_element(occurrences.begin(), occurrences.end());
}

bool Dnf::has_uniform_width() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.width() == terms_.front().width(); });
}

bool Dnf::operator()(std::uint64_t x) const {
  return std::any_of(terms_.begin(), terms_.end(), [x](const Term& t) { return t.satisfied_by(x); });
}

BooleanFunction evaluate_serial(const Dnf& dnf) {
  check_variable_count(dnf.num_vars());
  return BooleanFunction::from_predicate(dnf.num_vars(), [&](std::uint64_t x) { return dnf(x); });
}

BooleanFunction evaluate(const Dnf& dnf) {
  const int n = dnf.num_vars();
  check_variable_count(n);
  std::vector<std::uint64_t> words(word_count(n), 0);
  const std::int64_t blocks = static_cast<std::int64_t>(words.size());
  const std::uint64_t size = std::uint64_t{1} << n;
  const auto& terms = dnf.terms();

#pragma omp parallel for schedule(static) if (blocks >= 256)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::uint64_t base = static_cast<std::uint64_t>(b) << 6;
    const std::uint64_t end = std::min<std::uint64_t>(base + 64, size);
    std::uint64_t word = 0;
    for (std::uint64_t x = base; x < end; ++x) {
      for (const Term& t : terms) {
        if (t.satisfied_by(x)) {
          word |= std::uint64_t{1} << (x - base);
          break;
        }
      }
    }
    words[static_cast<std::size_t>(b)] = word;
  }
  return BooleanFunction(n, std::move(words));
}

Dnf truncate_width(const Dnf& dnf, int w) {
  if (w < 0) throw PreconditionError("truncation width must be non-negative");
  std::vector<Term> kept;
  for (const Term& t : dnf.terms()) {
    if (t.width() <= w) kept.push_back(t);
  }
  return Dnf(dnf.num_vars(), std::move(kept));
}

std::vector<std::size_t> satisfied_terms(const Dnf& dnf, std::uint64_t x) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < dnf.terms().size(); ++j) {
    if (dnf.term(j).satisfied_by(x)) out.push_back(j);
  }
  return out;
}

namespace {

std::string_view strip(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  return line;
}

int parse_int(std::string_view token, int line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad integer '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Dnf parse_dnf_text(std::string_view text) {
  int n = -1;
  std::vector<Term> terms;
  int line_no = 0;
  while (!text.empty()) {
    auto newline = text.find('\n');
    std::string_view raw = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
    ++line_no;
    std::string_view line = strip(raw);
    if (line.empty()) continue;
    if (n < 0) {
      if (line.substr(0, 2) != "n=") throw ParseError("line " + std::to_string(line_no) + ": expected n=<int>");
      n = parse_int(strip(line.substr(2)), line_no);
      if (n < 0 || n > kDnfVariableLimit) throw ParseError("n out of range");
      continue;
    }
    std::vector<Literal> literals;
    if (line != "*") {
      std::size_t pos = 0;
      while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (start == pos) break;
        int lit = parse_int(line.substr(start, pos - start), line_no);
        if (lit == 0 || lit > n || -lit > n) {
          throw ParseError("line " + std::to_string(line_no) + ": literal " + std::to_string(lit) + " out of range");
        }
        literals.push_back({std::abs(lit) - 1, lit > 0});
      }
    }
    try {
      terms.emplace_back(std::move(literals));
    } catch (const PreconditionError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (n < 0) throw ParseError("missing n=<int> header");
  return Dnf(n, std::move(terms));
}

std::string to_text(const Dnf& dnf) {
  std::ostringstream out;
  out << "n=" << dnf.num_vars() << '\n';
  for (const Term& t : dnf.terms()) {
    if (t.literals().empty()) {
      out << "*\n";
      continue;
    }
    for (std::size_t i = 0; i < t.literals().size(); ++i) {
      const Literal& lit = t.literals()[i];
      if (i) out << ' ';
      out << (lit.positive ? lit.var + 1 : -(lit.var + 1));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dnfourier
