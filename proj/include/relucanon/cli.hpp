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

// Command-line front end. `run` is the whole program, kept in the library so
// tests can drive it in-process. Exit codes: 0 success, 1 semantic negative
// (diagnostic JSON on stdout), 2 usage or input error (message on stderr).

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relucanon/arrangement.hpp"
#include "relucanon/canonical.hpp"
#include "relucanon/json.hpp"
#include "relucanon/minimality.hpp"
#include "relucanon/network.hpp"
#include "relucanon/synthesis.hpp"

namespace relucanon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kRandomRetries = 1000;

namespace detail {

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw Error(ErrorCode::kParseError, "empty list");
  return out;
}

// Canonical form of a network, an effective tuple or a canonical form file.
inline CanonicalForm load_function(const Json& j) {
  if (j.is_object() && j.contains("neurons")) return canonicalize(tuple_from_json(j));
  return cf_from_any_json(j);
}

inline std::vector<Breakline> net_breaklines(const ShallowNet& net) {
  std::vector<Breakline> out;
  for (const auto& t : canonicalize(net).terms) out.push_back(t.breakline);
  return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact canonical forms, minimality and synthesis for shallow ReLU networks",
               "relucanon"};
  app.require_subcommand(1);

  std::string file_a;
  std::string file_b;

  auto* canon = app.add_subcommand("canon", "Canonical form of a network");
  canon->add_option("net", file_a, "network, tuple or canonical form JSON")->required();

  std::size_t cap = kDefaultEnumerationCap;
  auto* classify_cmd = app.add_subcommand("classify", "Minimality report");
  classify_cmd->add_option("input", file_a, "network or canonical form JSON")->required();
  classify_cmd->add_option("--cap", cap, "largest number of terms to enumerate");

  std::string r_list = "0";
  auto* enum_cmd = app.add_subcommand("enum", "Minimal representation families");
  enum_cmd->add_option("input", file_a, "network or canonical form JSON")->required();
  enum_cmd->add_option("--r", r_list, "comma separated offsets for free families");
  enum_cmd->add_option("--cap", cap, "largest number of terms to enumerate");

  auto* equiv = app.add_subcommand("equiv", "Functional equivalence of two networks");
  equiv->add_option("a", file_a)->required();
  equiv->add_option("b", file_b)->required();

  std::uint64_t seed = 0;
  bool unchecked = false;
  std::size_t points = 1000;
  auto* synth = app.add_subcommand("synth", "Synthesize a network from a function spec");
  synth->add_option("spec", file_a, "PWA spec JSON")->required();
  synth->add_option("--seed", seed, "seed for sample points");
  synth->add_flag("--unchecked", unchecked, "skip the transversality check");
  synth->add_option("--points", points, "verification points");

  std::string x_list;
  auto* eval = app.add_subcommand("eval", "Evaluate a network at a point");
  eval->add_option("input", file_a, "network, tuple or canonical form JSON")->required();
  eval->add_option("--x", x_list, "comma separated rational coordinates")->required();

  std::size_t d0 = 0;
  std::size_t d1 = 0;
  long bound = 4;
  bool transversal = false;
  auto* random = app.add_subcommand("random", "Seeded random network");
  random->add_option("--d0", d0)->required();
  random->add_option("--d1", d1)->required();
  random->add_option("--seed", seed);
  random->add_option("--bound", bound);
  random->add_flag("--transversal", transversal, "retry until the breaklines are transversal");

  std::vector<const char*> argv{"relucanon"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*canon) {
      detail::emit(out, to_json(detail::load_function(detail::read_json_file(file_a))));
      return kExitOk;
    }
    if (*classify_cmd) {
      EnumerationOptions opt;
      opt.cap = cap;
      detail::emit(out, to_json(classify(detail::load_function(detail::read_json_file(file_a)), opt)));
      return kExitOk;
    }
    if (*enum_cmd) {
      EnumerationOptions opt;
      opt.cap = cap;
      opt.r_samples = detail::parse_list(r_list);
      auto cf = detail::load_function(detail::read_json_file(file_a));
      detail::emit(out, families_to_json(enumerate_minimal(cf, opt)));
      return kExitOk;
    }
    if (*equiv) {
      auto a = detail::load_function(detail::read_json_file(file_a));
      auto b = detail::load_function(detail::read_json_file(file_b));
      auto e = equivalence(a, b);
      detail::emit(out, to_json(e));
      return e.verdict == Verdict::kDifferent ? kExitNegative : kExitOk;
    }
    if (*synth) {
      PwaSpec spec = spec_from_json(detail::read_json_file(file_a));
      SynthesisOptions opt;
      opt.seed = seed;
      opt.check_transversality = !unchecked;
      opt.postcondition_points = points;
      try {
        detail::emit(out, to_json(synthesize(spec, opt)));
        return kExitOk;
      } catch (const SynthesisError& e) {
        detail::emit(out, to_json(e));
        return kExitNegative;
      }
    }
    if (*eval) {
      auto cf = detail::load_function(detail::read_json_file(file_a));
      out << evaluate_cf(cf, detail::parse_list(x_list)).str() << '\n';
      return kExitOk;
    }
    if (*random) {
      for (int attempt = 0; attempt < kRandomRetries; ++attempt) {
        ShallowNet net = random_net(d0, d1, seed + static_cast<std::uint64_t>(attempt), bound);
        if (!transversal || !check_transversality(detail::net_breaklines(net))) {
          detail::emit(out, to_json(net));
          return kExitOk;
        }
      }
      detail::emit(out, Json{{"error", "NoTransversalNet"}, {"attempts", kRandomRetries}});
      return kExitNegative;
    }
  } catch (const Error& e) {
    err << "relucanon: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace relucanon::cli
