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

#include "dnfourier/fourier.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "dnfourier/errors.hpp"

namespace dnfourier {

namespace {

// Below this many entries the OpenMP fork/join costs more than the work.
constexpr std::int64_t kParallelThreshold = std::int64_t{1} << 14;

std::vector<std::int64_t> load_table(const BooleanFunction& f) {
  std::vector<std::int64_t> values(f.table_size());
  for (std::uint64_t x = 0; x < values.size(); ++x) values[x] = f(x) ? 1 : 0;
  return values;
}

}  // namespace

FourierSpectrum::FourierSpectrum(int n, std::vector<std::int64_t> scaled) : n_(n), scaled_(std::move(scaled)) {
  check_variable_count(n);
  if (scaled_.size() != (std::size_t{1} << n)) throw PreconditionError("spectrum length is not 2^n");
}

DyadicRational FourierSpectrum::total_weight() const {
  std::int64_t sum = 0;
  for (std::int64_t c : scaled_) sum += c * c;
  return DyadicRational(BigInt(sum), 2 * static_cast<unsigned>(n_));
}

DyadicRational FourierSpectrum::one_norm() const {
  std::int64_t sum = 0;
  for (std::int64_t c : scaled_) sum += std::abs(c);
  return DyadicRational(BigInt(sum), static_cast<unsigned>(n_));
}

int FourierSpectrum::degree() const {
  int best = -1;
  for (std::uint64_t s = 0; s < scaled_.size(); ++s) {
    if (scaled_[s] != 0) best = std::max(best, popcount(s));
  }
  return best;
}

DyadicRational FourierSpectrum::evaluate(std::uint64_t x) const {
  std::int64_t sum = 0;
  for (std::uint64_t s = 0; s < scaled_.size(); ++s) {
    sum += (popcount(x & s) & 1) ? -scaled_[s] : scaled_[s];
  }
  return DyadicRational(BigInt(sum), static_cast<unsigned>(n_));
}

FourierSpectrum fourier_transform_serial(const BooleanFunction& f) {
  std::vector<std::int64_t> a = load_table(f);
  const std::size_t size = a.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        std::int64_t u = a[i];
        std::int64_t v = a[i + half];
        a[i] = u + v;
        a[i + half] = u - v;
      }
    }
  }
  return FourierSpectrum(f.num_vars(), std::move(a));
}

FourierSpectrum fourier_transform(const BooleanFunction& f) {
  std::vector<std::int64_t> a(f.table_size());
  const std::int64_t size = static_cast<std::int64_t>(a.size());
  auto words = f.words();

#pragma omp parallel for schedule(static) if (size >= kParallelThreshold)
  for (std::int64_t x = 0; x < size; ++x) a[x] = (words[x >> 6] >> (x & 63)) & 1;

  // Each stage pairs index i (bit `half` clear) with i + half; the pair
  // number p enumerates those i without gaps.
  const std::int64_t pairs = size / 2;
  for (std::int64_t half = 1; half < size; half <<= 1) {
#pragma omp parallel for schedule(static) if (size >= kParallelThreshold)
    for (std::int64_t p = 0; p < pairs; ++p) {
      std::int64_t i = ((p & ~(half - 1)) << 1) | (p & (half - 1));
      std::int64_t u = a[i];
      std::int64_t v = a[i + half];
      a[i] = u + v;
      a[i + half] = u - v;
    }
  }
  return FourierSpectrum(f.num_vars(), std::move(a));
}

DyadicRational one_norm_at_degree(const FourierSpectrum& spectrum, int d) {
  if (d < 0 || d > spectrum.num_vars()) throw PreconditionError("degree out of range");
  std::int64_t sum = 0;
  for (std::uint64_t s = 0; s < spectrum.size(); ++s) {
    if (popcount(s) == d) sum += std::abs(spectrum.scaled(s));
  }
  return DyadicRational(BigInt(sum), static_cast<unsigned>(spectrum.num_vars()));
}

DyadicRational weight_above_degree(const FourierSpectrum& spectrum, int d) {
  if (d < 0 || d > spectrum.num_vars()) throw PreconditionError("degree out of range");
  std::int64_t sum = 0;
  for (std::uint64_t s = 0; s < spectrum.size(); ++s) {
    if (popcount(s) > d) sum += spectrum.scaled(s) * spectrum.scaled(s);
  }
  return DyadicRational(BigInt(sum), 2 * static_cast<unsigned>(spectrum.num_vars()));
}

DyadicRational weight_outside(const FourierSpectrum& spectrum, const std::vector<bool>& in_family) {
  if (in_family.size() != spectrum.size()) throw DimensionMismatch("family mask length is not 2^n");
  std::int64_t sum = 0;
  for (std::uint64_t s = 0; s < spectrum.size(); ++s) {
    if (!in_family[s]) sum += spectrum.scaled(s) * spectrum.scaled(s);
  }
  return DyadicRational(BigInt(sum), 2 * static_cast<unsigned>(spectrum.num_vars()));
}

std::vector<VarMask> coefficients_by_magnitude(const FourierSpectrum& spectrum) {
  std::vector<VarMask> order(spectrum.size());
  std::iota(order.begin(), order.end(), VarMask{0});
  std::stable_sort(order.begin(), order.end(), [&](VarMask a, VarMask b) {
    return std::abs(spectrum.scaled(a)) > std::abs(spectrum.scaled(b));
  });
  return order;
}

std::uint64_t min_coeffs_for_eps(const FourierSpectrum& spectrum, const Rational& eps) {
  if (eps <= 0 || eps > 1) throw PreconditionError("eps must lie in (0, 1]");
  const unsigned log_den = 2 * static_cast<unsigned>(spectrum.num_vars());
  // Discarded weight <= eps  <=>  discarded_scaled <= eps * 2^(2n); compare
  // against the exact floor of the right-hand side.
  const Rational budget_exact = eps * Rational(BigInt(1) << log_den);
  const BigInt budget = boost::multiprecision::numerator(budget_exact) /
                        boost::multiprecision::denominator(budget_exact);

  std::int64_t discarded = 0;
  for (std::int64_t c : spectrum.scaled()) discarded += c * c;
  if (discarded <= budget) return 0;
  std::uint64_t kept = 0;
  for (VarMask s : coefficients_by_magnitude(spectrum)) {
    discarded -= spectrum.scaled(s) * spectrum.scaled(s);
    ++kept;
    if (discarded <= budget) break;
  }
  return kept;
}

}  // namespace dnfourier
