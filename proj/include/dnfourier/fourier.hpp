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
#include <span>
#include <vector>

#include "dnfourier/boolean_function.hpp"
#include "dnfourier/dyadic.hpp"

namespace dnfourier {

// Exact Fourier spectrum of a {0,1}-valued function.
//
// Stored scaled by 2^n: scaled(S) = 2^n * f^(S) = sum_x f(x) (-1)^|x & S|,
// always an integer with |scaled(S)| <= 2^n. Parseval gives
// sum_S scaled(S)^2 = 2^n * #ones <= 2^(2n), so every partial sum of squares
// fits comfortably in 64 bits for n <= 30.
class FourierSpectrum {
 public:
  FourierSpectrum(int n, std::vector<std::int64_t> scaled);

  int num_vars() const { return n_; }
  std::uint64_t size() const { return scaled_.size(); }

  std::int64_t scaled(VarMask subset) const { return scaled_[subset]; }
  std::span<const std::int64_t> scaled() const { return scaled_; }
  DyadicRational coefficient(VarMask subset) const {
    return DyadicRational(BigInt(scaled_[subset]), static_cast<unsigned>(n_));
  }

  // sum_S f^(S)^2.
  DyadicRational total_weight() const;
  // sum_S |f^(S)|.
  DyadicRational one_norm() const;
  // Largest |S| with f^(S) != 0, or -1 for the zero function.
  int degree() const;

  // f(x) = sum_S f^(S) x^S, evaluated exactly.
  DyadicRational evaluate(std::uint64_t x) const;

  friend bool operator==(const FourierSpectrum&, const FourierSpectrum&) = default;

 private:
  int n_;
  std::vector<std::int64_t> scaled_;
};

// Fast Walsh-Hadamard transform, O(n 2^n). OpenMP-parallel over butterflies.
FourierSpectrum fourier_transform(const BooleanFunction& f);
// Single-threaded in-place butterfly; reference for fourier_transform.
FourierSpectrum fourier_transform_serial(const BooleanFunction& f);

// sum_{|S| = d} |f^(S)|.
DyadicRational one_norm_at_degree(const FourierSpectrum& spectrum, int d);
// sum_{|S| > d} f^(S)^2.
DyadicRational weight_above_degree(const FourierSpectrum& spectrum, int d);
// sum_{S not in family} f^(S)^2; `in_family[S]` marks the kept subsets.
DyadicRational weight_outside(const FourierSpectrum& spectrum, const std::vector<bool>& in_family);

// Smallest M such that keeping the M largest-magnitude coefficients (ties
// broken by ascending mask) leaves discarded weight <= eps.
std::uint64_t min_coeffs_for_eps(const FourierSpectrum& spectrum, const Rational& eps);

// Coefficients ordered by decreasing |f^(S)|, ties by ascending mask.
std::vector<VarMask> coefficients_by_magnitude(const FourierSpectrum& spectrum);

}  // namespace dnfourier
