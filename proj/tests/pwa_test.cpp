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
using Kind = PwaExpr::Kind;

RatVec V(std::initializer_list<long> xs) {
  RatVec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Breakline bl(std::vector<BigInt> d, Rational q) {
  return Breakline{PrimitiveDirection::from_integers(std::move(d)), std::move(q)};
}

std::string strip(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

TEST(ParsePwa, Examples) {
  auto a = parse_pwa("relu(affine([1],0))");
  EXPECT_EQ(a, PwaExpr::unary(Kind::kRelu, PwaExpr::affine(V({1}), 0)));

  auto b = parse_pwa("max(affine([1,0],0), affine([0,1],0)) + affine([0,0],1)");
  ASSERT_EQ(b.kind, Kind::kSum);
  ASSERT_EQ(b.children.size(), 2u);
  EXPECT_EQ(b.children[0].kind, Kind::kMax);
  EXPECT_EQ(b.children[1], PwaExpr::affine(V({0, 0}), 1));
}

TEST(ParsePwa, ErrorsCarryPositions) {
  try {
    parse_pwa("relu(");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
    EXPECT_FALSE(e.expected().empty());
  }
  for (std::string bad : {"", "affine([1],)", "max(affine([1],0))", "relu(affine([1],0)))",
                          "affine([1,x],0)", "2 * ", "min(affine([1],0),,)", "foo(1)"}) {
    try {
      parse_pwa(bad);
      ADD_FAILURE() << bad;
    } catch (const ParseError& e) {
      EXPECT_GE(e.position(), 1u) << bad;
      EXPECT_LE(e.position(), bad.size() + 1) << bad;
    }
  }
  EXPECT_THROW(parse_pwa("affine([1],0) + affine([1,2],0)"), Error);
}

TEST(ParsePwa, PrecedenceAndNumbers) {
  auto e = parse_pwa("-2 * affine([1],0) + 1/2 * -relu(affine([1],-1.5))");
  EXPECT_EQ(eval_pwa(e, V({3})), Rational(-6) - Rational(3, 4));
  auto n = parse_pwa("--affine([1],0)");
  EXPECT_EQ(eval_pwa(n, V({4})), Rational(4));
  auto s = parse_pwa(" ( affine( [ 1 ] , 0 ) + affine([1],1) ) ");
  EXPECT_EQ(eval_pwa(s, V({2})), Rational(5));
}

TEST(PrintPwa, RoundTripsOnCorpus) {
  const std::vector<std::string> corpus = {
      "relu(affine([1],0))",
      "max(affine([1,0],0), affine([0,1],0)) + affine([0,0],1)",
      "min(affine([1,-1],1/2), relu(affine([2,3],-4)))",
      "-relu(affine([1],0))",
      "3/4 * max(affine([1],0), -affine([1],0))",
      "-(affine([1],0) + affine([1],2))",
      "2 * (affine([1],0) + relu(affine([1],1)))",
      testing::kCounterexampleExpr,
      "relu(relu(relu(affine([0,0,1],7))))",
  };
  for (const auto& text : corpus) {
    auto e = parse_pwa(text);
    EXPECT_EQ(strip(print_pwa(e)), strip(text)) << text;
    EXPECT_EQ(parse_pwa(print_pwa(e)), e) << text;
  }
}

TEST(EvalPwa, Examples) {
  EXPECT_EQ(eval_pwa(parse_pwa("relu(affine([1],0))"), V({-1})), Rational(0));
  EXPECT_EQ(eval_pwa(parse_pwa("max(affine([1,0],0), affine([0,1],0))"), V({2, 5})), Rational(5));
  auto cx = parse_pwa(testing::kCounterexampleExpr);
  EXPECT_EQ(eval_pwa(cx, V({1, 1})), Rational(1));
  try {
    eval_pwa(cx, V({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(EvalPwa, CounterexampleMatchesItsCaseDefinition) {
  auto cx = parse_pwa(testing::kCounterexampleExpr);
  Rng rng(61);
  for (long x = -4; x <= 4; ++x) {
    for (long y = -4; y <= 4; ++y) {
      EXPECT_EQ(eval_pwa(cx, V({x, y})), testing::counterexample_by_cases(V({x, y}))) << x << "," << y;
    }
  }
  for (int k = 0; k < 2000; ++k) {
    RatVec p = testing::draw_point(rng, 2, 6);
    EXPECT_EQ(eval_pwa(cx, p), testing::counterexample_by_cases(p));
  }
}

TEST(FlatBreaklines, Examples) {
  EXPECT_EQ(flat_breaklines(parse_pwa("relu(affine([1],0))")), std::vector<Breakline>{bl({1}, 0)});
  EXPECT_EQ(flat_breaklines(parse_pwa("max(affine([1,0],0),affine([0,1],0))")),
            std::vector<Breakline>{bl({1, -1}, 0)});
  try {
    flat_breaklines(parse_pwa("relu(max(affine([1],0),affine([1],1)))"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFlat);
  }
  // Constant arguments and duplicates contribute nothing new.
  auto both = flat_breaklines(
      parse_pwa("relu(affine([0],2)) + relu(affine([2],-2)) + 3 * relu(-affine([1],-1))"));
  EXPECT_EQ(both, std::vector<Breakline>{bl({1}, 1)});
}

TEST(FlatBreaklines, KinksOnlyOnReportedLines) {
  // Around a point off every reported breakline the function is affine.
  Rng rng(62);
  auto e = parse_pwa(
      "relu(affine([1,2],1)) + -max(affine([1,0],0), affine([0,1],1)) + 2 * min(affine([1,1],0), "
      "affine([0,0],3))");
  auto bls = flat_breaklines(e);
  EXPECT_EQ(bls.size(), 3u);
  Evaluator f = [&](const RatVec& x) { return eval_pwa(e, x); };
  for (int k = 0; k < 200; ++k) {
    RatVec x = testing::draw_point(rng, 2, 6);
    bool clear = true;
    for (const auto& b : bls) clear = clear && !b.level(x).is_zero();
    if (!clear) continue;
    Rational h(1, 1000000);
    std::vector<RatVec> pts{x, x, x};
    pts[1][0] += h;
    pts[2][1] += h;
    RatVec vals{f(pts[0]), f(pts[1]), f(pts[2])};
    auto fit = affine_fit(pts, vals);
    ASSERT_TRUE(fit);
    RatVec probe = x;
    probe[0] -= h / 3;
    probe[1] -= h / 5;
    EXPECT_EQ(f(probe), (*fit)(probe));
  }
}

}  // namespace
}  // namespace relucanon
