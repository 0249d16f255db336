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
 * @file network.hpp
 * @brief Shallow ReLU networks and their effective (geometric) tuples.
 *
 * A ShallowNet holds raw weights (W1, b1, W2, b2) and computes
 *   x -> b2 + sum_j W2[j] * max(W1[j] . x + b1[j], 0).
 * An EffectiveTuple stores, per neuron, the breakline (d, q) with d the
 * primitive integer normal, the kink and the orientation, so that the same
 * response reads
 *   x -> bias + sum_j kink_j * (orient_j * (d_j . x - q_j))_+.
 * `expand` maps a tuple plus positive per-neuron scales back to raw weights;
 * every scale vector yields the same tuple again.
 */

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "relucanon/breakline.hpp"
#include "relucanon/error.hpp"
#include "relucanon/linalg.hpp"

namespace relucanon {

struct ShallowNet {
  std::size_t d0 = 0;
  std::size_t d1 = 0;
  Matrix w1;  // d1 x d0
  RatVec b1;  // d1
  RatVec w2;  // d1
  Rational b2;

  void validate() const {
    if (d0 == 0) throw Error(ErrorCode::kInvalidInput, "d0 must be positive");
    require_same_length(w1.size(), d1, "W1 rows");
    require_same_length(b1.size(), d1, "b1");
    require_same_length(w2.size(), d1, "W2");
    for (const auto& row : w1) require_same_length(row.size(), d0, "W1 row");
  }

  friend bool operator==(const ShallowNet&, const ShallowNet&) = default;
};

struct Neuron {
  Breakline breakline;
  Rational kink;
  int orientation = 1;  // +1 or -1

  friend bool operator==(const Neuron&, const Neuron&) = default;
  friend std::strong_ordering operator<=>(const Neuron& a, const Neuron& b) {
    if (auto c = a.breakline <=> b.breakline; c != 0) return c;
    if (auto c = a.orientation <=> b.orientation; c != 0) return c;
    return a.kink <=> b.kink;
  }
};

struct EffectiveTuple {
  std::size_t d0 = 0;
  std::vector<Neuron> neurons;
  Rational bias;

  std::size_t width() const { return neurons.size(); }

  void validate() const {
    if (d0 == 0) throw Error(ErrorCode::kInvalidInput, "d0 must be positive");
    for (std::size_t j = 0; j < neurons.size(); ++j) {
      const auto& n = neurons[j];
      require_same_length(n.breakline.dim(), d0, "neuron direction");
      if (n.kink.is_zero()) {
        throw Error(ErrorCode::kDegenerateNeuron, "neuron " + std::to_string(j) + " has zero kink",
                    static_cast<long>(j));
      }
      if (n.orientation != 1 && n.orientation != -1) {
        throw Error(ErrorCode::kInvalidInput, "orientation must be +1 or -1",
                    static_cast<long>(j));
      }
    }
  }

  friend bool operator==(const EffectiveTuple&, const EffectiveTuple&) = default;
};

inline Rational evaluate_net(const ShallowNet& net, std::span<const Rational> x) {
  require_same_length(x.size(), net.d0, "evaluate_net input");
  Rational out = net.b2;
  for (std::size_t j = 0; j < net.d1; ++j) {
    Rational pre = dot(net.w1[j], x) + net.b1[j];
    if (pre.sign() > 0) out += net.w2[j] * pre;
  }
  return out;
}

inline Rational evaluate_tuple(const EffectiveTuple& t, std::span<const Rational> x) {
  require_same_length(x.size(), t.d0, "evaluate_tuple input");
  Rational out = t.bias;
  for (const auto& n : t.neurons) {
    Rational level = n.breakline.level(x);
    if (level.sign() * n.orientation > 0) out += n.kink * level * Rational(n.orientation);
  }
  return out;
}

inline EffectiveTuple effective_tuple(const ShallowNet& net) {
  net.validate();
  EffectiveTuple t;
  t.d0 = net.d0;
  t.bias = net.b2;
  t.neurons.reserve(net.d1);
  for (std::size_t j = 0; j < net.d1; ++j) {
    if (net.w2[j].is_zero() || is_zero(net.w1[j])) {
      throw Error(ErrorCode::kDegenerateNeuron, "neuron " + std::to_string(j) + " is degenerate",
                  static_cast<long>(j));
    }
    // w1 = s d, so w2 (w1.x + b1)_+ = w2 |s| (sign(s) (d.x + b1/s))_+.
    auto [d, s] = primitive_direction(net.w1[j]);
    Neuron n;
    n.breakline = Breakline{std::move(d), -net.b1[j] / s};
    n.kink = s.abs() * net.w2[j];
    n.orientation = s.sign();
    t.neurons.push_back(std::move(n));
  }
  return t;
}

// Removes neurons with w2_j = 0 or w1_j = 0, folding the constant
// w2_j * (b1_j)_+ of each into b2. The response is unchanged.
inline ShallowNet drop_degenerate(const ShallowNet& net) {
  net.validate();
  ShallowNet out;
  out.d0 = net.d0;
  out.b2 = net.b2;
  for (std::size_t j = 0; j < net.d1; ++j) {
    if (net.w2[j].is_zero()) continue;
    if (is_zero(net.w1[j])) {
      out.b2 += net.w2[j] * relu(net.b1[j]);
      continue;
    }
    out.w1.push_back(net.w1[j]);
    out.b1.push_back(net.b1[j]);
    out.w2.push_back(net.w2[j]);
  }
  out.d1 = out.w2.size();
  return out;
}

inline ShallowNet expand(const EffectiveTuple& t, std::span<const Rational> scales) {
  t.validate();
  require_same_length(scales.size(), t.width(), "expand scales");
  ShallowNet net;
  net.d0 = t.d0;
  net.d1 = t.width();
  net.b2 = t.bias;
  for (std::size_t j = 0; j < t.width(); ++j) {
    const auto& n = t.neurons[j];
    if (scales[j].sign() <= 0) {
      throw Error(ErrorCode::kNonPositiveScale, "scale " + std::to_string(j) + " is not positive",
                  static_cast<long>(j));
    }
    Rational signed_scale = Rational(n.orientation) * scales[j];
    net.w1.push_back(signed_scale * n.breakline.direction.as_vector());
    net.b1.push_back(-signed_scale * n.breakline.offset);
    net.w2.push_back(n.kink / scales[j]);
  }
  return net;
}

inline ShallowNet expand(const EffectiveTuple& t) {
  RatVec ones(t.width(), Rational(1));
  return expand(t, ones);
}

// Two neurons on the breakline (d, r3) with d = primitive_direction(a),
// a = s d: s (d.x - r3)_+ - s (-(d.x - r3))_+ = a.x - s r3. The first is
// positively oriented, the second negatively; scales r1, r2 are the free
// positive factors of each neuron.
inline EffectiveTuple affine_pair_tuple(const RatVec& a, const Rational& b, const Rational& r3) {
  auto [d, s] = primitive_direction(a);
  EffectiveTuple t;
  t.d0 = a.size();
  Breakline bl{std::move(d), r3};
  t.neurons.push_back(Neuron{bl, s, 1});
  t.neurons.push_back(Neuron{bl, -s, -1});
  t.bias = b + s * r3;
  return t;
}

inline ShallowNet affine_family(const RatVec& a, const Rational& b, const Rational& r1,
                                const Rational& r2, const Rational& r3) {
  if (r1.sign() <= 0) throw Error(ErrorCode::kNonPositiveScale, "r1 must be positive", 0);
  if (r2.sign() <= 0) throw Error(ErrorCode::kNonPositiveScale, "r2 must be positive", 1);
  RatVec scales{r1, r2};
  return expand(affine_pair_tuple(a, b, r3), scales);
}

namespace detail {

// Portable draws from mt19937_64: the standard distributions are
// implementation-defined, raw engine output is not.
inline long draw_int(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

inline Rational draw_rational(std::mt19937_64& rng, long bound) {
  long num = draw_int(rng, -bound, bound);
  long den = draw_int(rng, 1, bound);
  return Rational(BigInt(num), BigInt(den));
}

inline Rational draw_nonzero_rational(std::mt19937_64& rng, long bound) {
  for (;;) {
    Rational r = draw_rational(rng, bound);
    if (!r.is_zero()) return r;
  }
}

}  // namespace detail

// Deterministic in `seed`; numerators in [-bound, bound], denominators in
// [1, bound]; every hidden neuron is non-degenerate.
inline ShallowNet random_net(std::size_t d0, std::size_t d1, std::uint64_t seed, long bound) {
  if (d0 == 0 || d1 == 0) throw Error(ErrorCode::kInvalidInput, "d0 and d1 must be positive");
  if (bound < 1) throw Error(ErrorCode::kInvalidInput, "bound must be at least 1");
  std::mt19937_64 rng(seed);
  ShallowNet net;
  net.d0 = d0;
  net.d1 = d1;
  for (std::size_t j = 0; j < d1; ++j) {
    RatVec row;
    do {
      row.clear();
      for (std::size_t i = 0; i < d0; ++i) row.push_back(detail::draw_rational(rng, bound));
    } while (is_zero(row));
    net.w1.push_back(std::move(row));
    net.b1.push_back(detail::draw_rational(rng, bound));
    net.w2.push_back(detail::draw_nonzero_rational(rng, bound));
  }
  net.b2 = detail::draw_rational(rng, bound);
  return net;
}

}  // namespace relucanon
