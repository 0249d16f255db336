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
 * @file synthesis.hpp
 * @brief Builds a shallow network from a black-box piecewise-affine function.
 *
 * Given an evaluator and the declared breaklines, the breaklines are peeled
 * from last to first: the gradient jump across breakline k is measured at a
 * point on it avoiding every other declared breakline, must be a multiple
 * kink_k * d_k, and kink_k (d_k . x - q_k)_+ is subtracted. The remainder
 * must be affine. All arithmetic is exact.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "relucanon/arrangement.hpp"
#include "relucanon/canonical.hpp"
#include "relucanon/error.hpp"
#include "relucanon/network.hpp"
#include "relucanon/pwa.hpp"

namespace relucanon {

using Evaluator = std::function<Rational(const RatVec&)>;

enum class SynthesisFailure { kNotTransversal, kNotRepresentable, kMissingBreakline };
enum class RepresentabilityReason { kNone, kJumpNotParallel, kJumpMismatch, kResidualNotAffine };

inline const char* synthesis_failure_name(SynthesisFailure f) {
  switch (f) {
    case SynthesisFailure::kNotTransversal: return "NotTransversal";
    case SynthesisFailure::kNotRepresentable: return "NotRepresentable";
    case SynthesisFailure::kMissingBreakline: return "MissingBreakline";
  }
  return "NotRepresentable";
}

inline const char* representability_reason_name(RepresentabilityReason r) {
  switch (r) {
    case RepresentabilityReason::kNone: return "none";
    case RepresentabilityReason::kJumpNotParallel: return "JumpNotParallel";
    case RepresentabilityReason::kJumpMismatch: return "JumpMismatch";
    case RepresentabilityReason::kResidualNotAffine: return "ResidualNotAffine";
  }
  return "none";
}

class SynthesisError : public std::runtime_error {
 public:
  SynthesisError(SynthesisFailure failure, RepresentabilityReason reason, std::string message)
      : std::runtime_error(std::move(message)), failure_(failure), reason_(reason) {}

  SynthesisFailure failure() const { return failure_; }
  RepresentabilityReason reason() const { return reason_; }

  std::optional<TransversalityViolation> violation;
  std::optional<std::size_t> breakline;  // 0-based, for jump failures
  std::optional<RatVec> point;           // witness point where relevant

 private:
  SynthesisFailure failure_;
  RepresentabilityReason reason_;
};

struct JumpOptions {
  int max_halvings = 20;
};

namespace detail {

// Affine fit on the simplex {c, c + (h/2) e_k}, checked at one more point
// inside the same ball. nullopt if f is not affine there.
inline std::optional<AffineMap> local_fit(const Evaluator& f, const RatVec& c, const Rational& h) {
  const std::size_t dim = c.size();
  const Rational half = h / Rational(2);
  std::vector<RatVec> pts{c};
  for (std::size_t k = 0; k < dim; ++k) {
    RatVec p = c;
    p[k] += half;
    pts.push_back(std::move(p));
  }
  RatVec vals;
  for (const auto& p : pts) vals.push_back(f(p));
  auto fit = affine_fit(pts, vals);
  if (!fit) return std::nullopt;
  RatVec v = c;
  for (auto& e : v) e -= half / Rational(static_cast<long>(dim));
  if (f(v) != (*fit)(v)) return std::nullopt;
  return fit;
}

}  // namespace detail

// Gradient of f on the positive side of bl minus that on the negative side,
// measured near x (which must lie on bl). The step is halved until the fits
// on both sides are locally consistent at two scales and meet f at x.
inline RatVec jump_vector(const Evaluator& f, const Breakline& bl, const RatVec& x,
                          Rational step, const JumpOptions& opt = {}) {
  require_same_length(x.size(), bl.dim(), "jump_vector point");
  if (!bl.level(x).is_zero()) throw Error(ErrorCode::kInvalidInput, "point is not on the breakline");
  if (step.sign() <= 0) throw Error(ErrorCode::kInvalidInput, "step must be positive");
  const RatVec d = bl.direction.as_vector();
  const Rational fx = f(x);
  for (int attempt = 0; attempt <= opt.max_halvings; ++attempt) {
    auto side = [&](int sign, const Rational& h) -> std::optional<AffineMap> {
      RatVec c = x + (Rational(sign) * h) * d;
      return detail::local_fit(f, c, h);
    };
    const Rational h2 = step / Rational(2);
    auto plus = side(1, step);
    auto minus = side(-1, step);
    // f is continuous, so both one-sided pieces must pass through f(x);
    // this rejects fits taken in a cell beyond a nearby kink.
    if (plus && minus && (*plus)(x) == fx && (*minus)(x) == fx && side(1, h2) == plus &&
        side(-1, h2) == minus) {
      return plus->gradient - minus->gradient;
    }
    step = h2;
  }
  throw Error(ErrorCode::kNotLocallyAffine, "no locally affine neighbourhood found");
}

struct SynthesisOptions {
  std::uint64_t seed = 0;
  bool check_transversality = true;
  std::size_t postcondition_points = 1000;
};

namespace detail {

// Largest step keeping every probe of jump_vector strictly on the same side
// of each other breakline as x.
inline Rational safe_step(const std::vector<Breakline>& bls, std::size_t k, const RatVec& x) {
  BigInt dmax = 0;
  for (const auto& e : bls[k].direction.entries()) dmax = std::max<BigInt>(dmax, abs(e));
  Rational step(1);
  for (std::size_t j = 0; j < bls.size(); ++j) {
    if (j == k) continue;
    BigInt l1 = 0;
    for (const auto& e : bls[j].direction.entries()) l1 += abs(e);
    Rational bound = bls[j].level(x).abs() / (Rational(2) * Rational(l1) * (Rational(dmax) + 1));
    if (bound < step) step = bound;
  }
  return step;
}

inline RatVec random_point(std::mt19937_64& rng, std::size_t dim) {
  RatVec x;
  for (std::size_t i = 0; i < dim; ++i) x.push_back(draw_rational(rng, 16));
  return x;
}

// True if f restricted to the segment a -> b is affine on every piece cut
// out by the declared breaklines.
inline bool segment_consistent(const Evaluator& f, const std::vector<Breakline>& bls,
                               const RatVec& a, const RatVec& b) {
  const RatVec dir = b - a;
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (const auto& bl : bls) {
    Rational slope = bl.direction.dot(dir);
    if (slope.is_zero()) continue;
    Rational t = -bl.level(a) / slope;
    if (t.sign() > 0 && t < Rational(1)) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto at = [&](const Rational& t) { return f(a + t * dir); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational lo = cuts[i];
    const Rational w = cuts[i + 1] - lo;
    const Rational v0 = at(lo);
    const Rational v1 = at(lo + w);
    for (long s = 1; s <= 5; ++s) {
      Rational u(BigInt(s), BigInt(6));
      if (at(lo + u * w) != v0 + u * (v1 - v0)) return false;
    }
  }
  return true;
}

// The fit simplex itself may straddle an undeclared kink, so every simplex
// edge from the base and every vertex-to-witness segment is inspected.
[[noreturn]] inline void fail_residual(const Evaluator& residual, const std::vector<Breakline>& bls,
                                       const std::vector<RatVec>& simplex, const RatVec& witness) {
  bool bends = false;
  for (std::size_t i = 0; i < simplex.size() && !bends; ++i) {
    bends = !segment_consistent(residual, bls, simplex[i], witness) ||
            (i > 0 && !segment_consistent(residual, bls, simplex[0], simplex[i]));
  }
  if (bends) {
    SynthesisError err(SynthesisFailure::kMissingBreakline, RepresentabilityReason::kNone,
                       "function bends off the declared breaklines near " + format_vec(witness));
    err.point = witness;
    throw err;
  }
  SynthesisError err(SynthesisFailure::kNotRepresentable,
                     RepresentabilityReason::kResidualNotAffine,
                     "residual after peeling is not affine at " + format_vec(witness));
  err.point = witness;
  throw err;
}

}  // namespace detail

// Effective tuple realizing f, one positively oriented neuron per breakline
// with nonzero kink, plus an affine pair if the affine remainder is not
// constant. Throws SynthesisError.
inline EffectiveTuple synthesize(const Evaluator& f, std::size_t d0,
                                 const std::vector<Breakline>& breaklines,
                                 const SynthesisOptions& opt = {}) {
  if (d0 == 0) throw Error(ErrorCode::kInvalidInput, "d0 must be positive");
  for (const auto& bl : breaklines) require_same_length(bl.dim(), d0, "breakline dimension");
  if (opt.check_transversality) {
    if (auto v = check_transversality(breaklines)) {
      SynthesisError err(SynthesisFailure::kNotTransversal, RepresentabilityReason::kNone,
                         "breaklines are not transversal");
      err.violation = std::move(v);
      err.point = err.violation->point;
      throw err;
    }
  }

  std::vector<Term> peeled;
  auto residual = [&](const RatVec& x) {
    Rational v = f(x);
    for (const auto& t : peeled) v -= t.kink * relu(t.breakline.level(x));
    return v;
  };
  const Evaluator residual_fn = residual;

  std::vector<Rational> kinks(breaklines.size());
  for (std::size_t k = breaklines.size(); k-- > 0;) {
    const auto& bl = breaklines[k];
    auto pts = admissible_points(breaklines, k, opt.seed + k, 2);
    auto jump_at = [&](const RatVec& x, const Rational& shrink) {
      try {
        return jump_vector(residual_fn, bl, x, detail::safe_step(breaklines, k, x) / shrink);
      } catch (const Error&) {
        SynthesisError err(SynthesisFailure::kMissingBreakline, RepresentabilityReason::kNone,
                           "function is not affine near breakline " + std::to_string(k) +
                               " away from the declared breaklines");
        err.breakline = k;
        err.point = x;
        throw err;
      }
    };
    const RatVec jump = jump_at(pts[0], Rational(1));
    auto coeff = in_span(jump, {bl.direction.as_vector()});
    if (!coeff) {
      SynthesisError err(SynthesisFailure::kNotRepresentable,
                         RepresentabilityReason::kJumpNotParallel,
                         "jump across breakline " + std::to_string(k) + " is not normal to it");
      err.breakline = k;
      err.point = pts[0];
      throw err;
    }
    // The jump must be the same everywhere along the breakline.
    // In dimension 1 the breakline is a point; compare two step sizes there.
    const RatVec other = pts.size() > 1 ? jump_at(pts[1], Rational(1)) : jump_at(pts[0], Rational(4));
    if (other != jump) {
      SynthesisError err(SynthesisFailure::kNotRepresentable, RepresentabilityReason::kJumpMismatch,
                         "jump across breakline " + std::to_string(k) + " varies along it");
      err.breakline = k;
      err.point = pts.size() > 1 ? pts[1] : pts[0];
      throw err;
    }
    kinks[k] = coeff->front();
    if (!kinks[k].is_zero()) peeled.push_back(Term{bl, kinks[k]});
  }

  // The residual must now be a single affine map.
  std::mt19937_64 rng(opt.seed ^ 0x5eedULL);
  const RatVec base = detail::random_point(rng, d0);
  std::vector<RatVec> simplex{base};
  for (std::size_t i = 0; i < d0; ++i) {
    RatVec p = base;
    p[i] += Rational(1);
    simplex.push_back(std::move(p));
  }
  RatVec vals;
  for (const auto& p : simplex) vals.push_back(residual_fn(p));
  const AffineMap remainder = *affine_fit(simplex, vals);
  for (std::size_t i = 0; i < 2 * d0; ++i) {
    RatVec v = detail::random_point(rng, d0);
    if (residual_fn(v) != remainder(v)) detail::fail_residual(residual_fn, breaklines, simplex, v);
  }

  EffectiveTuple out;
  out.d0 = d0;
  out.bias = remainder.constant;
  for (std::size_t k = 0; k < breaklines.size(); ++k) {
    if (!kinks[k].is_zero()) out.neurons.push_back(Neuron{breaklines[k], kinks[k], 1});
  }
  if (!is_zero(remainder.gradient)) {
    EffectiveTuple pair = affine_pair_tuple(remainder.gradient, Rational(0), Rational(0));
    out.neurons.insert(out.neurons.end(), pair.neurons.begin(), pair.neurons.end());
    out.bias += pair.bias;
  }

  for (std::size_t i = 0; i < opt.postcondition_points; ++i) {
    RatVec x = detail::random_point(rng, d0);
    if (f(x) != evaluate_tuple(out, x)) detail::fail_residual(f, breaklines, simplex, x);
  }
  return out;
}

// An expression together with its declared breaklines; empty `breaklines`
// together with auto_breaklines means "take them from the expression".
struct PwaSpec {
  PwaExpr expr;
  std::vector<Breakline> breaklines;
  bool auto_breaklines = false;

  std::vector<Breakline> resolved_breaklines() const {
    return auto_breaklines ? flat_breaklines(expr) : breaklines;
  }
};

inline EffectiveTuple synthesize(const PwaSpec& spec, const SynthesisOptions& opt = {}) {
  const std::size_t d0 = pwa_dim(spec.expr);
  const PwaExpr& e = spec.expr;
  Evaluator f = [&e](const RatVec& x) { return eval_pwa(e, x); };
  return synthesize(f, d0, spec.resolved_breaklines(), opt);
}

}  // namespace relucanon
