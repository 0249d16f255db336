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
 * @file canonical.hpp
 * @brief Canonical form of a network response and functional equivalence.
 *
 * Every response of a shallow ReLU network can be written uniquely as
 *   f(x) = sum_i kink_i (d_i . x - q_i)_+ + affine . x + bias
 * with pairwise distinct breaklines (d_i, q_i) and nonzero kinks. Terms are
 * kept sorted by breakline so that two forms are equal iff the functions are.
 */

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relucanon/breakline.hpp"
#include "relucanon/linalg.hpp"
#include "relucanon/network.hpp"

namespace relucanon {

struct Term {
  Breakline breakline;
  Rational kink;

  friend bool operator==(const Term&, const Term&) = default;
};

struct CanonicalForm {
  std::size_t d0 = 0;
  std::vector<Term> terms;  // strictly increasing breaklines, nonzero kinks
  RatVec affine;
  Rational bias;

  std::size_t size() const { return terms.size(); }
  bool is_affine() const { return terms.empty(); }

  void validate() const {
    if (d0 == 0) throw Error(ErrorCode::kInvalidInput, "d0 must be positive");
    require_same_length(affine.size(), d0, "canonical affine part");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      require_same_length(terms[i].breakline.dim(), d0, "canonical term direction");
      if (terms[i].kink.is_zero()) {
        throw Error(ErrorCode::kInvalidInput, "canonical term has zero kink",
                    static_cast<long>(i));
      }
      if (i > 0 && !(terms[i - 1].breakline < terms[i].breakline)) {
        throw Error(ErrorCode::kInvalidInput, "canonical terms not strictly sorted",
                    static_cast<long>(i));
      }
    }
  }

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

// Builds a form from unsorted, possibly repeated terms; equal breaklines are
// merged and zero kinks dropped.
inline CanonicalForm make_form(std::size_t d0, const std::vector<Term>& terms, RatVec affine,
                               Rational bias) {
  std::map<Breakline, Rational> kinks;
  for (const auto& t : terms) {
    require_same_length(t.breakline.dim(), d0, "term direction");
    kinks[t.breakline] += t.kink;
  }
  CanonicalForm cf;
  cf.d0 = d0;
  cf.affine = std::move(affine);
  cf.bias = std::move(bias);
  require_same_length(cf.affine.size(), d0, "affine part");
  for (auto& [bl, k] : kinks) {
    if (!k.is_zero()) cf.terms.push_back(Term{bl, k});
  }
  return cf;
}

// A negatively oriented neuron contributes k (-(d.x - q))_+ =
// k (d.x - q)_+ - k d.x + k q.
inline CanonicalForm canonicalize(const EffectiveTuple& t) {
  t.validate();
  std::vector<Term> terms;
  terms.reserve(t.width());
  RatVec affine = zeros(t.d0);
  Rational bias = t.bias;
  for (const auto& n : t.neurons) {
    terms.push_back(Term{n.breakline, n.kink});
    if (n.orientation < 0) {
      for (std::size_t i = 0; i < t.d0; ++i) affine[i] -= n.kink * Rational(n.breakline.direction[i]);
      bias += n.kink * n.breakline.offset;
    }
  }
  return make_form(t.d0, terms, std::move(affine), std::move(bias));
}

inline CanonicalForm canonicalize(const ShallowNet& net) { return canonicalize(effective_tuple(net)); }

inline Rational evaluate_cf(const CanonicalForm& cf, std::span<const Rational> x) {
  require_same_length(x.size(), cf.d0, "evaluate_cf input");
  Rational out = dot(cf.affine, x) + cf.bias;
  for (const auto& t : cf.terms) {
    Rational level = t.breakline.level(x);
    if (level.sign() > 0) out += t.kink * level;
  }
  return out;
}

// Orientation pattern over the terms of a form, entries +1 / -1.
struct SignPattern {
  std::vector<int> bits;

  std::size_t size() const { return bits.size(); }
  int operator[](std::size_t i) const { return bits[i]; }

  static SignPattern all_positive(std::size_t n) { return SignPattern{std::vector<int>(n, 1)}; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (i) s += ",";
      s += bits[i] > 0 ? "+1" : "-1";
    }
    return s + ")";
  }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

struct SigmaAffine {
  RatVec a;
  Rational b;
};

// a_sigma = affine + sum_{sigma_j = -1} kink_j d_j,
// b_sigma = bias - sum_{sigma_j = -1} kink_j q_j.
inline SigmaAffine sigma_affine(const CanonicalForm& cf, const SignPattern& sigma) {
  if (sigma.size() != cf.size()) {
    throw Error(ErrorCode::kLengthMismatch, "sign pattern length " + std::to_string(sigma.size()) +
                                                " vs " + std::to_string(cf.size()) + " terms");
  }
  SigmaAffine out{cf.affine, cf.bias};
  for (std::size_t j = 0; j < cf.size(); ++j) {
    if (sigma[j] > 0) continue;
    if (sigma[j] != -1) throw Error(ErrorCode::kInvalidInput, "sign entries must be +1 or -1");
    const auto& t = cf.terms[j];
    for (std::size_t i = 0; i < cf.d0; ++i) out.a[i] += t.kink * Rational(t.breakline.direction[i]);
    out.b -= t.kink * t.breakline.offset;
  }
  return out;
}

// The terms with orientations sigma and the given output bias.
inline EffectiveTuple sigma_tuple(const CanonicalForm& cf, const SignPattern& sigma,
                                  const Rational& bias) {
  if (sigma.size() != cf.size()) throw Error(ErrorCode::kLengthMismatch, "sign pattern length");
  EffectiveTuple t;
  t.d0 = cf.d0;
  t.bias = bias;
  for (std::size_t j = 0; j < cf.size(); ++j) {
    t.neurons.push_back(Neuron{cf.terms[j].breakline, cf.terms[j].kink, sigma[j]});
  }
  return t;
}

// All terms positively oriented; a nonzero affine part is realized by a pair
// of opposite neurons through the origin.
inline EffectiveTuple realize(const CanonicalForm& cf) {
  EffectiveTuple t = sigma_tuple(cf, SignPattern::all_positive(cf.size()), cf.bias);
  if (!is_zero(cf.affine)) {
    EffectiveTuple pair = affine_pair_tuple(cf.affine, Rational(0), Rational(0));
    t.neurons.insert(t.neurons.end(), pair.neurons.begin(), pair.neurons.end());
    t.bias += pair.bias;
  }
  return t;
}

enum class Verdict { kEqual, kEqualUpToAffine, kDifferent };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kEqual: return "equal";
    case Verdict::kEqualUpToAffine: return "affine";
    case Verdict::kDifferent: return "different";
  }
  return "different";
}

struct Equivalence {
  Verdict verdict = Verdict::kEqual;
  RatVec affine_diff;   // first minus second, for kEqualUpToAffine
  Rational bias_diff;
  std::optional<Breakline> witness;  // for kDifferent
  Rational witness_kinks[2];         // effective kinks of the witness in each input
};

inline Equivalence equivalence(const CanonicalForm& x, const CanonicalForm& y) {
  require_same_length(x.d0, y.d0, "equivalence input dimension");
  Equivalence out;
  if (x.terms != y.terms) {
    out.verdict = Verdict::kDifferent;
    std::map<Breakline, std::pair<Rational, Rational>> kinks;
    for (const auto& t : x.terms) kinks[t.breakline].first = t.kink;
    for (const auto& t : y.terms) kinks[t.breakline].second = t.kink;
    for (const auto& [bl, k] : kinks) {
      if (k.first != k.second) {
        out.witness = bl;
        out.witness_kinks[0] = k.first;
        out.witness_kinks[1] = k.second;
        break;
      }
    }
    return out;
  }
  out.affine_diff = x.affine - y.affine;
  out.bias_diff = x.bias - y.bias;
  out.verdict = (is_zero(out.affine_diff) && out.bias_diff.is_zero()) ? Verdict::kEqual
                                                                       : Verdict::kEqualUpToAffine;
  return out;
}

inline Equivalence equivalence(const EffectiveTuple& x, const EffectiveTuple& y) {
  return equivalence(canonicalize(x), canonicalize(y));
}

inline Equivalence equivalence(const ShallowNet& x, const ShallowNet& y) {
  return equivalence(canonicalize(x), canonicalize(y));
}

}  // namespace relucanon
