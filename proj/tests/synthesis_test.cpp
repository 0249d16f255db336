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

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace relucanon {
namespace {

using testing::Rng;

RatVec V(std::initializer_list<long> xs) {
  RatVec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Breakline bl(std::vector<BigInt> d, Rational q) {
  return Breakline{PrimitiveDirection::from_integers(std::move(d)), std::move(q)};
}

Evaluator expr_fn(const std::string& text) {
  auto e = std::make_shared<PwaExpr>(parse_pwa(text));
  return [e](const RatVec& x) { return eval_pwa(*e, x); };
}

TEST(JumpVector, Examples) {
  EXPECT_EQ(jump_vector(expr_fn("relu(affine([1],0))"), bl({1}, 0), V({0}), 1), V({1}));
  EXPECT_EQ(jump_vector(expr_fn("2 * relu(affine([1],0)) + -affine([1],0)"), bl({1}, 0), V({0}), 1),
            V({2}));
}

TEST(JumpVector, CounterexampleJumpsDifferAlongTheAxis) {
  auto f = expr_fn(testing::kCounterexampleExpr);
  const Breakline axis = bl({0, 1}, 0);
  const RatVec left = jump_vector(f, axis, V({-1, 0}), Rational(1, 4));
  const RatVec right = jump_vector(f, axis, V({1, 0}), Rational(1, 4));
  EXPECT_EQ(left, V({0, -1}));
  EXPECT_EQ(right, V({0, 1}));
  // Same values straight from the case definition.
  Evaluator g = testing::counterexample_by_cases;
  EXPECT_EQ(jump_vector(g, axis, V({-1, 0}), Rational(1, 4)), left);
  EXPECT_EQ(jump_vector(g, axis, V({1, 0}), Rational(1, 4)), right);
}

TEST(JumpVector, TooLargeStepIsHalvedAndBadInputRejected) {
  // A second kink at x = 1/16 sits inside the first step.
  auto f = expr_fn("relu(affine([1],0)) + 5 * relu(affine([1],-1/16))");
  EXPECT_EQ(jump_vector(f, bl({1}, 0), V({0}), 4), V({1}));
  EXPECT_THROW(jump_vector(f, bl({1}, 0), V({1}), 1), Error);
  EXPECT_THROW(jump_vector(f, bl({1}, 0), V({0}), 0), Error);
  try {
    // Curvature everywhere: never locally affine.
    Evaluator sq = [](const RatVec& x) { return x[0] * x[0]; };
    jump_vector(sq, bl({1}, 0), V({0}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotLocallyAffine);
  }
}

TEST(Synthesize, Relu) {
  PwaSpec spec{parse_pwa("relu(affine([1],0))"), {bl({1}, 0)}, false};
  auto t = synthesize(spec);
  EXPECT_EQ(t, (EffectiveTuple{1, {{bl({1}, 0), 1, 1}}, 0}));
}

TEST(Synthesize, AbsUsesOneKinkAndTwoAffineNeurons) {
  PwaSpec spec{parse_pwa("max(affine([1],0), -affine([1],0))"), {bl({1}, 0)}, false};
  auto t = synthesize(spec);
  EXPECT_EQ(t.width(), 3u);
  EXPECT_EQ(canonicalize(t), make_form(1, {{bl({1}, 0), 2}}, V({-1}), 0));
  PwaSpec autospec{spec.expr, {}, true};
  EXPECT_EQ(synthesize(autospec), t);
}

TEST(Synthesize, CounterexampleIsRejected) {
  PwaSpec spec{parse_pwa(testing::kCounterexampleExpr), testing::counterexample_breaklines(), false};
  try {
    synthesize(spec);
    FAIL();
  } catch (const SynthesisError& e) {
    EXPECT_EQ(e.failure(), SynthesisFailure::kNotTransversal);
    ASSERT_TRUE(e.violation);
    EXPECT_EQ(e.violation->subset, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(e.violation->point, V({0, 0}));
  }
  SynthesisOptions unchecked;
  unchecked.check_transversality = false;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    unchecked.seed = seed;
    try {
      synthesize(spec, unchecked);
      FAIL();
    } catch (const SynthesisError& e) {
      EXPECT_EQ(e.failure(), SynthesisFailure::kNotRepresentable) ;
      EXPECT_TRUE(e.reason() == RepresentabilityReason::kJumpNotParallel ||
                  e.reason() == RepresentabilityReason::kJumpMismatch) << seed << " " << e.what();
    }
  }
}

TEST(Synthesize, OmittedBreaklineIsDetected) {
  auto f = expr_fn("relu(affine([1,0],0)) + relu(affine([0,1],-1))");
  try {
    synthesize(f, 2, {bl({1, 0}, 0)});
    FAIL();
  } catch (const SynthesisError& e) {
    EXPECT_EQ(e.failure(), SynthesisFailure::kMissingBreakline);
  }
}

TEST(Synthesize, JumpNotNormalIsNotRepresentable) {
  // (x)_+ restricted to the half plane y > 0: kink along x = 0 only for y > 0,
  // and a kink of direction (1,0) across y = 0.
  auto f = expr_fn("relu(min(affine([1,0],0), affine([0,1],0)))");
  SynthesisOptions opt;
  try {
    synthesize(f, 2, {bl({1, 0}, 0), bl({0, 1}, 0)}, opt);
    FAIL();
  } catch (const SynthesisError& e) {
    EXPECT_EQ(e.failure(), SynthesisFailure::kNotRepresentable);
  }
}

TEST(Synthesize, ZeroKinkBreaklinesAreDropped) {
  auto f = expr_fn("relu(affine([1,1],0))");
  auto t = synthesize(f, 2, {bl({1, 1}, 0), bl({1, 0}, 3)});
  EXPECT_EQ(t.width(), 1u);
}

TEST(Properties, RoundTripRecoversTheCanonicalForm) {
  Rng rng(71);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t d0 = 1 + trial % 3;
    std::size_t n = 1 + trial % 5;
    auto bls = testing::draw_transversal(rng, d0, n);
    auto cf = testing::form_from(d0, bls, rng);
    SynthesisOptions opt;
    opt.seed = trial;
    opt.postcondition_points = 200;
    auto t = synthesize(testing::evaluator_of(cf), d0, bls, opt);
    EXPECT_EQ(canonicalize(t), cf);
    EXPECT_LE(t.width(), n + 2);
    EXPECT_EQ(synthesize(testing::evaluator_of(cf), d0, bls, opt), t);
  }
}

TEST(Properties, JumpIsConstantAlongEachBreakline) {
  Rng rng(72);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t d0 = 2 + trial % 2;
    auto bls = testing::draw_transversal(rng, d0, 1 + trial % 5);
    auto cf = testing::form_from(d0, bls, rng);
    auto f = testing::evaluator_of(cf);
    for (std::size_t i = 0; i < bls.size(); ++i) {
      auto pts = admissible_points(bls, i, trial, 2);
      ASSERT_EQ(pts.size(), 2u);
      auto a = jump_vector(f, bls[i], pts[0], detail::safe_step(bls, i, pts[0]));
      auto b = jump_vector(f, bls[i], pts[1], detail::safe_step(bls, i, pts[1]));
      EXPECT_EQ(a, b);
      const Term* term = nullptr;
      for (const auto& t : cf.terms) {
        if (t.breakline == bls[i]) term = &t;
      }
      ASSERT_NE(term, nullptr);
      EXPECT_EQ(a, term->kink * bls[i].direction.as_vector());
    }
  }
}

}  // namespace
}  // namespace relucanon
