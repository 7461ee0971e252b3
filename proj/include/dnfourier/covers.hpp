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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dnfourier/dnf.hpp"
#include "dnfourier/dyadic.hpp"
#include "dnfourier/errors.hpp"
#include "dnfourier/fourier.hpp"
#include "dnfourier/restriction.hpp"

namespace dnfourier {

// Which terms a cover of S may draw from.
//   kTermsMeetingSet  only terms sharing a variable with S; every cover the
//                     encoder can output has this form, and the read-k
//                     counting bounds assume it (default)
//   kAllTerms         any term, read off the set-system definition verbatim
enum class CoverScope { kTermsMeetingSet, kAllTerms };

// Upper limit on enumerated term subsets per call.
inline constexpr std::uint64_t kCoverEnumerationCap = std::uint64_t{1} << 26;

// u -> #{T : S within the union of T, |T| <= |S|, |union of T| = u}.
std::map<int, std::uint64_t> cover_counts_by_union(const Dnf& dnf, VarMask subset,
                                                   CoverScope scope = CoverScope::kTermsMeetingSet);
std::uint64_t num_covers(const Dnf& dnf, VarMask subset, int union_size,
                         CoverScope scope = CoverScope::kTermsMeetingSet);

struct FamilyKey {
  int d = 0;
  int u = 0;
  friend auto operator<=>(const FamilyKey&, const FamilyKey&) = default;
};

// Everything the family checks need to know about one subset S.
struct SubsetProfile {
  VarMask subset = 0;
  int d = 0;
  std::int64_t scaled_coefficient = 0;  // 2^n f^(S)
  std::uint64_t full_depth_count = 0;   // #x_Sbar with DT(f_{S|x_Sbar}) = |S|
  std::map<int, std::uint64_t> full_depth_by_union;      // u -> #x_Sbar
  std::map<int, std::uint64_t> distinct_covers_by_union;  // u -> #distinct cover(S, x_Sbar)
  // Argmax of full_depth_by_union (ties to the smaller u); empty when S has
  // no full-depth witness, in which case its coefficient is zero.
  std::optional<int> family_u;
};

struct FamilyStats {
  FamilyKey key;
  std::vector<VarMask> members;  // ascending
  DyadicRational one_norm;
  DyadicRational two_norm_sq;
  DyadicRational max_abs_coeff;
  std::uint64_t max_num_covers = 0;  // over members, at union size key.u
};

// Partition of all S with |S| <= d_max into the families S_{d,u}.
class FamilyClassification {
 public:
  FamilyClassification(Dnf dnf, FourierSpectrum spectrum, int d_max, std::vector<SubsetProfile> profiles);

  const Dnf& dnf() const { return dnf_; }
  const FourierSpectrum& spectrum() const { return spectrum_; }
  int d_max() const { return d_max_; }
  int num_vars() const { return dnf_.num_vars(); }
  int width() const { return width_; }

  // Ascending mask order over every S with |S| <= d_max.
  const std::vector<SubsetProfile>& profiles() const { return profiles_; }
  const SubsetProfile& profile(VarMask subset) const;
  const std::map<FamilyKey, FamilyStats>& families() const { return families_; }
  // Empty stats (zero norms, no members) for keys without members.
  FamilyStats family(FamilyKey key) const;

  // #{(S, x_Sbar) : |S| = d, DT = d}.
  std::uint64_t full_depth_pairs(int d) const;
  // #{(S, x_Sbar) : |S| = d, DT = d, u(S, x_Sbar) = u}.
  std::uint64_t full_depth_pairs(int d, int u) const;

 private:
  Dnf dnf_;
  FourierSpectrum spectrum_;
  int d_max_;
  int width_;
  std::vector<SubsetProfile> profiles_;
  std::map<VarMask, std::size_t> index_;
  std::map<FamilyKey, FamilyStats> families_;
};

// Enumerates every S with |S| <= d_max and every x_Sbar; `workers` OpenMP
// threads share the subsets, and the result does not depend on the count.
FamilyClassification classify_families(const Dnf& dnf, int d_max, int workers = 1);

struct ExactCheck {
  DyadicRational lhs;
  DyadicRational bound;
  bool holds = false;
};

// sum_{S in S_{d,u}} |f^(S)| <= (wd+1) binom(u,d) 2^(2d).
ExactCheck check_onenorm_u(const FamilyClassification& cls, int d, int u);
ExactCheck check_onenorm_u(const Dnf& dnf, int d, int u);
// sum_{S in S_{d,u}} |f^(S)| <= (wd+1) 2^-(n-d) #{(S,x): |S|=d, DT=d, u(S,x)=u}.
ExactCheck check_onenorm_u_count(const FamilyClassification& cls, int d, int u);
// sum_{S in S_{d,u}} f^(S)^2 <= (wd+1)^2 binom(u,d) 2^(3d) 2^-u max numCovers.
ExactCheck check_twonorm_u(const FamilyClassification& cls, int d, int u);
ExactCheck check_twonorm_u(const Dnf& dnf, int d, int u);
// sum f^2 <= (sum |f^|) * max |f^| within S_{d,u}.
ExactCheck check_family_cauchy(const FamilyClassification& cls, int d, int u);

// Degree-level 1-norm checks over all |S| = d.
// sum |f^(S)| <= 2^-(n-d) #{(S,x): DT = d}.
ExactCheck check_onenorm_degree_count(const FamilyClassification& cls, int d);
// sum |f^(S)| <= binom(wd,d) 2^(2d).
ExactCheck check_onenorm_degree(const FamilyClassification& cls, int d);
// #{(S,x): |S|=d, DT=d} <= 2^n binom(wd,d) 2^d.
ExactCheck check_full_depth_pairs(const FamilyClassification& cls, int d);

// Per-subset chain for S in S_{d,u}:
//   |f^(S)| <= (wd+1) P                    (abs_holds)
//   P <= 2^-(u-d) #distinct cover values   (cover_values_holds)
//   #distinct cover values <= numCovers(S) (num_covers_holds)
// with P = Pr_x[DT = d and u(S,x) = u].
struct AbsFourierCheck {
  VarMask subset = 0;
  FamilyKey key;
  DyadicRational abs_coeff;
  DyadicRational probability;
  std::uint64_t distinct_covers = 0;
  std::uint64_t num_covers = 0;
  DyadicRational abs_bound;          // (wd+1) P
  DyadicRational cover_values_bound;  // 2^-(u-d) #distinct
  DyadicRational num_covers_bound;    // 2^-(u-d) numCovers
  bool abs_holds = false;
  bool cover_values_holds = false;
  bool num_covers_holds = false;
  bool holds() const { return abs_holds && cover_values_holds && num_covers_holds; }
};

// Throws PreconditionError when S lies in no family (no full-depth witness);
// then f^(S) = 0 and there is nothing to bound.
AbsFourierCheck check_abs_fourier_u(const FamilyClassification& cls, VarMask subset);
AbsFourierCheck check_abs_fourier_u(const Dnf& dnf, VarMask subset);

// numCovers(S) summed over u against sum_{i<=d} binom(kd, i), followed by
// sum_{i<=d} binom(kd,i) <= binom(kd+d, d) <= (e(k+1))^d. The last step is
// certified with a rational lower bound on e.
struct ReadCoverBound {
  std::uint64_t count = 0;
  BigInt bound;
  BigInt binomial_bound;
  bool holds = false;
  bool chain_holds = false;
};
ReadCoverBound read_cover_count_bound(const Dnf& dnf, VarMask subset);

// For DNFs whose terms all have width exactly w: numCovers(S) at union size u
// against sum_{i <= floor(ku/w)} binom(kd, i).
struct ExactWidthCoverBound {
  std::uint64_t count = 0;
  BigInt bound;
  bool holds = false;
};
ExactWidthCoverBound exact_width_cover_bound(const Dnf& dnf, VarMask subset, int union_size);

// sum_j 2^-|T_j| <= k ln(1 / (1 - Pr[f])), decided with a rational enclosure
// of the logarithm. Vacuously true when f is constant 1.
struct StInequalityCheck {
  DyadicRational lhs;
  DyadicRational bias;
  int read = 0;
  bool vacuous = false;
  Rational rhs_lower;
  Rational rhs_upper;
  bool holds = false;
};
StInequalityCheck st_inequality_check(const Dnf& dnf);

// Rigorous enclosure [lower, upper] of ln(q) for rational q >= 1, of width
// at most about 2^-precision_bits.
struct LogEnclosure {
  Rational lower;
  Rational upper;
};
LogEnclosure ln_enclosure(const Rational& q, int precision_bits);

// Set-size budget lemma: given sizes |A_1..A_l| with sum |A_r| <= v and
// sum 2^-|A_r| <= F < v, checks l <= 4v / log2(v/F) exactly.
enum class BudgetViolation { kSizeBudget, kWeightBudget, kNonPositiveWeight, kGap };

class BudgetPreconditionError : public PreconditionError {
 public:
  BudgetPreconditionError(BudgetViolation kind, const std::string& what) : PreconditionError(what), kind_(kind) {}
  BudgetViolation kind() const { return kind_; }

 private:
  BudgetViolation kind_;
};

struct BudgetCheck {
  std::size_t count = 0;
  double bound = 0;  // 4v / log2(v/F), for display only
  bool holds = false;
};
BudgetCheck budget_lemma_bound(const std::vector<int>& sizes, std::int64_t v, const Rational& weight_budget);

}  // namespace dnfourier
