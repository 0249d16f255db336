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

#include <sstream>

#include <gtest/gtest.h>

#include "relucanon/cli.hpp"
#include "relucanon/json.hpp"
#include "test_support.hpp"

namespace relucanon {
namespace {

using testing::Rng;

std::string data(const char* name) { return std::string(RELUCANON_DATA_DIR) + "/" + name; }

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Json, RationalsAreStringsAndIntegersAreAccepted) {
  EXPECT_EQ(to_json(Rational(-3, 4)), Json("-3/4"));
  EXPECT_EQ(rational_from_json(Json("6/8")), Rational(3, 4));
  EXPECT_EQ(rational_from_json(Json(5)), Rational(5));
  EXPECT_THROW(rational_from_json(Json(1.5)), Error);
  EXPECT_THROW(rational_from_json(Json("x")), Error);
}

TEST(Json, NetTupleAndFormRoundTrip) {
  Rng rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d0 = 1 + trial % 3;
    auto net = random_net(d0, 1 + trial % 5, trial, 6);
    auto t = effective_tuple(net);
    auto cf = canonicalize(t);
    EXPECT_EQ(net_from_json(Json::parse(to_json(net).dump())), net);
    EXPECT_EQ(tuple_from_json(Json::parse(to_json(t).dump())), t);
    EXPECT_EQ(cf_from_json(Json::parse(to_json(cf).dump())), cf);
    EXPECT_EQ(cf_from_any_json(to_json(net)), cf);
    EXPECT_EQ(cf_from_any_json(to_json(cf)), cf);
  }
}

TEST(Json, ReportsAndFamiliesRoundTrip) {
  Rng rng(82);
  for (int trial = 0; trial < 60; ++trial) {
    auto cf = testing::draw_form(rng, 1 + trial % 3, trial % 4);
    EnumerationOptions opt;
    opt.r_samples = {Rational(0), Rational(-1, 2)};
    auto rep = classify(cf, opt);
    auto j = to_json(rep);
    auto back = report_from_json(Json::parse(j.dump()));
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(back.families.size(), rep.families.size());
    for (std::size_t i = 0; i < rep.families.size(); ++i) {
      EXPECT_EQ(back.families[i].tuples, rep.families[i].tuples);
      EXPECT_EQ(back.families[i].sigma, rep.families[i].sigma);
    }
  }
}

TEST(Json, SpecRoundTripAndValidation) {
  auto spec = spec_from_json(cli::detail::read_json_file(data("abs_spec.json")));
  EXPECT_EQ(spec.breaklines.size(), 1u);
  auto again = spec_from_json(Json::parse(to_json(spec).dump()));
  EXPECT_EQ(again.expr, spec.expr);
  EXPECT_EQ(again.breaklines, spec.breaklines);
  auto autospec = spec_from_json(cli::detail::read_json_file(data("hinge_sum_spec.json")));
  EXPECT_TRUE(autospec.auto_breaklines);
  EXPECT_THROW(spec_from_json(Json::parse(R"({"expr": "relu("})")), Error);
  EXPECT_THROW(net_from_json(Json::parse(R"({"d0": 1})")), Error);
}

TEST(Cli, EquivOfScaledReluIsEqual) {
  auto r = run({"equiv", data("relu.json"), data("relu_scaled.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).at("verdict"), "equal");
}

TEST(Cli, EquivExitCodes) {
  auto diff = run({"equiv", data("relu.json"), data("abs.json")});
  EXPECT_EQ(diff.code, 1);
  auto j = Json::parse(diff.out);
  EXPECT_EQ(j.at("verdict"), "different");
  EXPECT_TRUE(j.contains("witness"));
}

TEST(Cli, ClassifyAbs) {
  auto r = run({"classify", data("abs.json")});
  EXPECT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("case"), "II");
  EXPECT_EQ(j.at("min_width"), 2);
  auto rep = report_from_json(j);
  ASSERT_EQ(rep.families.size(), 1u);
  EXPECT_TRUE(verify_representation(cf_from_any_json(cli::detail::read_json_file(data("abs.json"))),
                                    rep.families[0].tuples[0]));
}

TEST(Cli, SynthCounterexample) {
  auto r = run({"synth", data("counterexample.json")});
  EXPECT_EQ(r.code, 1);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("error"), "NotTransversal");
  EXPECT_EQ(j.at("violation").at("subset"), Json::parse("[0,1,2]"));
  auto u = run({"synth", data("counterexample.json"), "--unchecked"});
  EXPECT_EQ(u.code, 1);
  EXPECT_EQ(Json::parse(u.out).at("error"), "NotRepresentable");
}

TEST(Cli, SynthAbsRoundTripsThroughCanon) {
  auto r = run({"synth", data("abs_spec.json"), "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto t = tuple_from_json(Json::parse(r.out));
  EXPECT_EQ(t.width(), 3u);
  EXPECT_EQ(canonicalize(t), cf_from_any_json(cli::detail::read_json_file(data("abs.json"))));
  auto h = run({"synth", data("hinge_sum_spec.json")});
  EXPECT_EQ(h.code, 0) << h.out << h.err;
}

TEST(Cli, CanonEvalEnumAndRandom) {
  auto c = run({"canon", data("relu_scaled.json")});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(cf_from_json(Json::parse(c.out)), canonicalize(net_from_json(
                                                  cli::detail::read_json_file(data("relu.json")))));
  auto e = run({"eval", data("abs.json"), "--x", "-5/2"});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "5/2\n");
  auto en = run({"enum", data("two_relus_affine.json"), "--r", "0,1,-2"});
  EXPECT_EQ(en.code, 0);
  auto fams = Json::parse(en.out).at("families");
  EXPECT_EQ(fams.size(), 5u);
  EXPECT_EQ(fams[0].at("tuples").size(), 3u);
  auto rn = run({"random", "--d0", "2", "--d1", "4", "--seed", "3", "--bound", "5", "--transversal"});
  EXPECT_EQ(rn.code, 0);
  auto net = net_from_json(Json::parse(rn.out));
  EXPECT_EQ(net.d1, 4u);
  EXPECT_FALSE(check_transversality(cli::detail::net_breaklines(net)));
}

TEST(Cli, UsageAndInputErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"canon"}).code, 2);
  EXPECT_EQ(run({"canon", data("missing.json")}).code, 2);
  EXPECT_EQ(run({"eval", data("abs.json"), "--x", "1,2"}).code, 2);
  EXPECT_EQ(run({"classify", data("two_relus_affine.json"), "--cap", "1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  const std::vector<std::vector<std::string>> commands = {
      {"canon", data("abs.json")},
      {"classify", data("relu_plus_y.json")},
      {"enum", data("two_relus_affine.json"), "--r", "0,1/2"},
      {"synth", data("abs_spec.json"), "--seed", "11"},
      {"synth", data("counterexample.json"), "--unchecked", "--seed", "2"},
      {"random", "--d0", "3", "--d1", "5", "--seed", "9", "--transversal"},
  };
  for (const auto& cmd : commands) {
    auto a = run(cmd);
    auto b = run(cmd);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NO_THROW(Json::parse(a.out));
  }
}

}  // namespace
}  // namespace relucanon
