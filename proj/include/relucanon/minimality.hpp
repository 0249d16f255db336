// Copyright 2026 The relucanon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * @file minimality.hpp
 * @brief Minimal width of a response and all of its minimal representations.
 *
 * For a form with n terms, the orientation pattern sigma decides the affine
 * correction a_sigma (see sigma_affine). Writing
 *   J        = {sigma : a_sigma = 0},
 *   J(m)     = {sigma : a_sigma in R m},
 *   J(m, m') = {sigma : a_sigma in R m + R m'},
 * for directions m, m' occurring among the terms, the minimal width is
 *   n      if J is nonempty                                    (case I),
 *   n + 1  if J is empty but some J(m) is nonempty             (case II),
 *   n + 2  otherwise                                           (case III),
 * and the minimal effective tuples modulo permutation are in bijection with
 * explicit index sets built from these. `enumerate_minimal` produces one
 * family per element of those sets; `classify` adds the manifold dimension
 * and component count of each stratum.
 *
 * Affine inputs (no terms) need two neurons. Constant inputs are outside the
 * theory proper and are reported as case Constant with width 2.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relucanon/canonical.hpp"
#include "relucanon/linalg.hpp"
#include "relucanon/network.hpp"

namespace relucanon {

inline constexpr std::size_t kDefaultEnumerationCap = 24;

namespace detail {

inline void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error(ErrorCode::kEnumerationCapExceeded,
                std::to_string(n) + " terms exceed the enumeration cap " + std::to_string(cap),
                static_cast<long>(n));
  }
}

// Basis of the linear functionals vanishing on span(generators).
inline std::vector<RatVec> annihilator(const std::vector<RatVec>& generators, std::size_t dim) {
  auto sol = solve(generators, zeros(generators.size()), dim);
  return sol ? sol->kernel : std::vector<RatVec>{};
}

// Depth-first search over sign patterns, +1 before -1 at every position, so
// the output is in lexicographic order. A branch is cut as soon as the
// running a_sigma cannot be brought into span(targets) by the remaining
// terms.
class SignSearch {
 public:
  SignSearch(const CanonicalForm& cf, const std::vector<RatVec>& targets) : cf_(cf) {
    const std::size_t n = cf.size();
    dirs_.reserve(n);
    for (const auto& t : cf.terms) dirs_.push_back(t.breakline.direction.as_vector());
    guards_.resize(n + 1);
    std::vector<RatVec> gens = targets;
    for (std::size_t j = n + 1; j-- > 0;) {
      guards_[j] = annihilator(gens, cf.d0);
      if (j > 0) gens.push_back(dirs_[j - 1]);
    }
  }

  std::vector<SignPattern> run() {
    std::vector<SignPattern> out;
    std::vector<int> bits(cf_.size(), 1);
    recurse(0, cf_.affine, bits, out);
    return out;
  }

 private:
  bool feasible(std::size_t j, const RatVec& residual) const {
    for (const auto& l : guards_[j]) {
      if (!dot(l, residual).is_zero()) return false;
    }
    return true;
  }

  void recurse(std::size_t j, const RatVec& residual, std::vector<int>& bits,
               std::vector<SignPattern>& out) const {
    if (!feasible(j, residual)) return;
    if (j == cf_.size()) {
      out.push_back(SignPattern{bits});
      return;
    }
    bits[j] = 1;
    recurse(j + 1, residual, bits, out);
    bits[j] = -1;
    recurse(j + 1, residual + cf_.terms[j].kink * dirs_[j], bits, out);
    bits[j] = 1;
  }

  const CanonicalForm& cf_;
  std::vector<RatVec> dirs_;
  std::vector<std::vector<RatVec>> guards_;  // guards_[j] annihilates span(dirs_[j..], targets)
};

}  // namespace detail

inline std::vector<SignPattern> compute_J(const CanonicalForm& cf,
                                          std::size_t cap = kDefaultEnumerationCap) {
  detail::check_cap(cf.size(), cap);
  return detail::SignSearch(cf, {}).run();
}

inline std::vector<SignPattern> compute_J_single(const CanonicalForm& cf,
                                                 const PrimitiveDirection& m,
                                                 std::size_t cap = kDefaultEnumerationCap) {
  detail::check_cap(cf.size(), cap);
  require_same_length(m.size(), cf.d0, "compute_J_single direction");
  return detail::SignSearch(cf, {m.as_vector()}).run();
}

inline std::vector<SignPattern> compute_J_pair(const CanonicalForm& cf, const PrimitiveDirection& m,
                                               const PrimitiveDirection& m2,
                                               std::size_t cap = kDefaultEnumerationCap) {
  detail::check_cap(cf.size(), cap);
  require_same_length(m.size(), cf.d0, "compute_J_pair direction");
  require_same_length(m2.size(), cf.d0, "compute_J_pair direction");
  if (m == m2) throw Error(ErrorCode::kEqualDirections, "compute_J_pair needs distinct directions");
  return detail::SignSearch(cf, {m.as_vector(), m2.as_vector()}).run();
}

// Every sign pattern of length n in lexicographic order (+1 first).
inline std::vector<SignPattern> all_sign_patterns(std::size_t n,
                                                  std::size_t cap = kDefaultEnumerationCap) {
  detail::check_cap(n, cap);
  std::vector<SignPattern> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    SignPattern s = SignPattern::all_positive(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << (n - 1 - j))) s.bits[j] = -1;
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Distinct term directions in increasing order, and the term indices of each.
struct DirectionGroup {
  PrimitiveDirection direction;
  std::vector<std::size_t> indices;
};

inline std::vector<DirectionGroup> direction_groups(const CanonicalForm& cf) {
  std::vector<DirectionGroup> groups;
  for (std::size_t j = 0; j < cf.size(); ++j) {
    const auto& d = cf.terms[j].breakline.direction;
    if (groups.empty() || !(groups.back().direction == d)) groups.push_back({d, {}});
    groups.back().indices.push_back(j);
  }
  return groups;
}

enum class MinimalityCase { kI, kII, kIII, kAffine, kConstant };

inline const char* case_name(MinimalityCase c) {
  switch (c) {
    case MinimalityCase::kI: return "I";
    case MinimalityCase::kII: return "II";
    case MinimalityCase::kIII: return "III";
    case MinimalityCase::kAffine: return "Affine";
    case MinimalityCase::kConstant: return "Constant";
  }
  return "?";
}

enum class FamilyKind { kExact, kCaseII, kCaseIIIA, kCaseIIIB, kAffine, kConstant };

inline const char* family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::kExact: return "Exact";
    case FamilyKind::kCaseII: return "CaseII";
    case FamilyKind::kCaseIIIA: return "CaseIIIA";
    case FamilyKind::kCaseIIIB: return "CaseIIIB";
    case FamilyKind::kAffine: return "Affine";
    case FamilyKind::kConstant: return "Constant";
  }
  return "?";
}

// One element of the bijection index set. Kinds with a free offset
// (CaseIIIA, Affine) hold the rule `base + pair on (line_direction, r)` and
// its instantiations at the requested offsets; the others hold one tuple.
struct RepresentationFamily {
  FamilyKind kind = FamilyKind::kExact;
  SignPattern sigma;
  std::vector<std::size_t> indices;  // j (CaseII) or j1, j2 (CaseIIIB), 0-based
  std::vector<EffectiveTuple> tuples;
  std::vector<Rational> offsets;     // r of each tuple, parametric kinds only

  EffectiveTuple base;               // parametric kinds: the first n neurons, bias b_sigma
  std::optional<PrimitiveDirection> line_direction;
  Rational slope;                    // a_sigma = slope * line_direction

  bool parametric() const { return line_direction.has_value(); }

  // The member with the added pair on the breakline (line_direction, r).
  EffectiveTuple instantiate(const Rational& r) const {
    if (!parametric()) return tuples.front();
    EffectiveTuple t = base;
    Breakline bl{*line_direction, r};
    t.neurons.push_back(Neuron{bl, slope, 1});
    t.neurons.push_back(Neuron{bl, -slope, -1});
    t.bias += slope * r;
    return t;
  }
};

struct ManifoldStratum {
  std::size_t dim = 0;
  BigInt count;  // connected components
};

struct MinimalityReport {
  MinimalityCase which = MinimalityCase::kI;
  std::size_t n = 0;
  std::size_t min_width = 0;
  std::vector<RepresentationFamily> families;
  std::vector<ManifoldStratum> components;
  bool extension = false;  // Constant: beyond the affine/non-affine theory
};

struct EnumerationOptions {
  std::size_t cap = kDefaultEnumerationCap;
  std::vector<Rational> r_samples{Rational(0)};
};

namespace detail {

inline RepresentationFamily parametric_family(FamilyKind kind, SignPattern sigma,
                                              EffectiveTuple base, const RatVec& a_sigma,
                                              const std::vector<Rational>& r_samples) {
  RepresentationFamily fam;
  fam.kind = kind;
  fam.sigma = std::move(sigma);
  fam.base = std::move(base);
  auto [d, s] = primitive_direction(a_sigma);
  fam.line_direction = std::move(d);
  fam.slope = s;
  for (const auto& r : r_samples) {
    fam.tuples.push_back(fam.instantiate(r));
    fam.offsets.push_back(r);
  }
  return fam;
}

inline MinimalityReport classify_impl(const CanonicalForm& cf, const EnumerationOptions& opt) {
  cf.validate();
  MinimalityReport rep;
  const std::size_t n = cf.size();
  rep.n = n;

  if (n == 0) {
    rep.min_width = 2;
    if (!is_zero(cf.affine)) {
      rep.which = MinimalityCase::kAffine;
      EffectiveTuple base;
      base.d0 = cf.d0;
      base.bias = cf.bias;
      rep.families.push_back(
          parametric_family(FamilyKind::kAffine, SignPattern{}, base, cf.affine, opt.r_samples));
      rep.components.push_back({3, BigInt(2)});
    } else {
      rep.which = MinimalityCase::kConstant;
      rep.extension = true;
      RepresentationFamily fam;
      fam.kind = FamilyKind::kConstant;
      EffectiveTuple t;
      t.d0 = cf.d0;
      t.bias = cf.bias;
      Breakline bl{PrimitiveDirection::axis(cf.d0, 0), Rational(0)};
      t.neurons.push_back(Neuron{bl, Rational(1), 1});
      t.neurons.push_back(Neuron{bl, Rational(-1), 1});
      fam.tuples.push_back(std::move(t));
      rep.families.push_back(std::move(fam));
    }
    return rep;
  }

  check_cap(n, opt.cap);

  auto j_set = compute_J(cf, opt.cap);
  if (!j_set.empty()) {
    rep.which = MinimalityCase::kI;
    rep.min_width = n;
    for (auto& sigma : j_set) {
      RepresentationFamily fam;
      fam.kind = FamilyKind::kExact;
      auto sa = sigma_affine(cf, sigma);
      fam.tuples.push_back(sigma_tuple(cf, sigma, sa.b));
      fam.sigma = std::move(sigma);
      rep.families.push_back(std::move(fam));
    }
    rep.components.push_back({n, factorial(n) * BigInt(static_cast<unsigned long>(rep.families.size()))});
    return rep;
  }

  const auto groups = direction_groups(cf);

  // Case II: one extra neuron doubling breakline j with opposite orientation.
  for (const auto& g : groups) {
    auto jm = compute_J_single(cf, g.direction, opt.cap);
    if (jm.empty()) continue;
    const RatVec dvec = g.direction.as_vector();
    for (std::size_t j : g.indices) {
      for (const auto& sigma : jm) {
        if (sigma[j] != 1) continue;
        auto sa = sigma_affine(cf, sigma);
        auto coeff = in_span(sa.a, {dvec});
        const Rational delta = coeff->front();
        EffectiveTuple t = sigma_tuple(cf, sigma, delta * cf.terms[j].breakline.offset + sa.b);
        t.neurons[j].kink += delta;
        t.neurons.push_back(Neuron{cf.terms[j].breakline, -delta, -1});
        RepresentationFamily fam;
        fam.kind = FamilyKind::kCaseII;
        fam.sigma = sigma;
        fam.indices = {j};
        fam.tuples.push_back(std::move(t));
        rep.families.push_back(std::move(fam));
      }
    }
  }
  if (!rep.families.empty()) {
    rep.which = MinimalityCase::kII;
    rep.min_width = n + 1;
    rep.components.push_back(
        {n + 1, factorial(n + 1) * BigInt(static_cast<unsigned long>(rep.families.size()))});
    return rep;
  }

  // Case III.
  rep.which = MinimalityCase::kIII;
  rep.min_width = n + 2;
  for (auto& sigma : all_sign_patterns(n, opt.cap)) {
    auto sa = sigma_affine(cf, sigma);
    EffectiveTuple base = sigma_tuple(cf, sigma, sa.b);
    rep.families.push_back(parametric_family(FamilyKind::kCaseIIIA, std::move(sigma),
                                             std::move(base), sa.a, opt.r_samples));
  }
  BigInt two_pow_n;
  mpz_ui_pow_ui(two_pow_n.get_mpz_t(), 2, n);
  rep.components.push_back({n + 3, factorial(n + 2) * two_pow_n});

  std::size_t pair_families = 0;
  for (std::size_t g1 = 0; g1 < groups.size(); ++g1) {
    for (std::size_t g2 = g1 + 1; g2 < groups.size(); ++g2) {
      auto jp = compute_J_pair(cf, groups[g1].direction, groups[g2].direction, opt.cap);
      if (jp.empty()) continue;
      const RatVec d1 = groups[g1].direction.as_vector();
      const RatVec d2 = groups[g2].direction.as_vector();
      for (std::size_t j1 : groups[g1].indices) {
        for (std::size_t j2 : groups[g2].indices) {
          for (const auto& sigma : jp) {
            if (sigma[j1] != 1 || sigma[j2] != 1) continue;
            auto sa = sigma_affine(cf, sigma);
            auto coeff = in_span(sa.a, {d1, d2});
            const Rational delta1 = (*coeff)[0];
            const Rational delta2 = (*coeff)[1];
            const auto& bl1 = cf.terms[j1].breakline;
            const auto& bl2 = cf.terms[j2].breakline;
            EffectiveTuple t =
                sigma_tuple(cf, sigma, delta1 * bl1.offset + delta2 * bl2.offset + sa.b);
            t.neurons[j1].kink += delta1;
            t.neurons[j2].kink += delta2;
            t.neurons.push_back(Neuron{bl1, -delta1, -1});
            t.neurons.push_back(Neuron{bl2, -delta2, -1});
            RepresentationFamily fam;
            fam.kind = FamilyKind::kCaseIIIB;
            fam.sigma = sigma;
            fam.indices = {j1, j2};
            fam.tuples.push_back(std::move(t));
            rep.families.push_back(std::move(fam));
            ++pair_families;
          }
        }
      }
    }
  }
  if (pair_families > 0) {
    rep.components.push_back(
        {n + 2, factorial(n + 2) * BigInt(static_cast<unsigned long>(pair_families))});
  }
  return rep;
}

}  // namespace detail

inline MinimalityReport classify(const CanonicalForm& cf, const EnumerationOptions& opt = {}) {
  return detail::classify_impl(cf, opt);
}

inline std::vector<RepresentationFamily> enumerate_minimal(const CanonicalForm& cf,
                                                           const EnumerationOptions& opt = {}) {
  return detail::classify_impl(cf, opt).families;
}

inline bool verify_representation(const CanonicalForm& cf, const EffectiveTuple& t) {
  require_same_length(t.d0, cf.d0, "verify_representation dimension");
  return canonicalize(t) == cf;
}

// Neurons sorted by (breakline, orientation, kink); equal tuples modulo
// neuron permutation have equal representatives.
inline EffectiveTuple permutation_representative(EffectiveTuple t) {
  std::sort(t.neurons.begin(), t.neurons.end());
  return t;
}

inline bool same_modulo_permutation(const EffectiveTuple& a, const EffectiveTuple& b) {
  return permutation_representative(a) == permutation_representative(b);
}

}  // namespace relucanon
