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

// JSON interchange. Rationals are written as strings ("3", "-1/2"); on input
// integer numbers are accepted too. Integer direction entries are numbers.

#include <string>
#include <vector>

#include <json.hpp>
#include "relucanon/arrangement.hpp"
#include "relucanon/canonical.hpp"
#include "relucanon/minimality.hpp"
#include "relucanon/network.hpp"
#include "relucanon/pwa.hpp"
#include "relucanon/synthesis.hpp"

namespace relucanon {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void bad_json(const std::string& what) {
  throw Error(ErrorCode::kParseError, "json: " + what);
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_json(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) bad_json(std::string("field \"") + key + "\" must be an array");
  return v;
}

inline std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) bad_json(std::string("field \"") + key + "\" must be a count");
  return v.get<std::size_t>();
}

}  // namespace detail

inline Json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  detail::bad_json("rational must be a string or an integer");
}

inline Json to_json(const RatVec& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

inline RatVec ratvec_from_json(const Json& j) {
  if (!j.is_array()) detail::bad_json("expected an array of rationals");
  RatVec out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

inline Json to_json(const PrimitiveDirection& d) {
  Json out = Json::array();
  for (const auto& e : d.entries()) {
    if (e.fits_slong_p()) {
      out.push_back(e.get_si());
    } else {
      out.push_back(to_string(e));
    }
  }
  return out;
}

inline PrimitiveDirection direction_from_json(const Json& j) {
  if (!j.is_array()) detail::bad_json("direction must be an array");
  std::vector<BigInt> entries;
  for (const auto& e : j) {
    if (e.is_number_integer()) {
      entries.emplace_back(e.get<long>());
    } else if (e.is_string()) {
      entries.push_back(parse_bigint(e.get<std::string>()));
    } else {
      detail::bad_json("direction entries must be integers");
    }
  }
  return PrimitiveDirection::from_integers(std::move(entries));
}

inline Json to_json(const Breakline& bl) {
  return Json{{"d", to_json(bl.direction)}, {"q", to_json(bl.offset)}};
}

inline Breakline breakline_from_json(const Json& j) {
  return Breakline{direction_from_json(detail::field(j, "d")),
                   rational_from_json(detail::field(j, "q"))};
}

// ShallowNet -----------------------------------------------------------------

inline Json to_json(const ShallowNet& net) {
  Json w1 = Json::array();
  for (const auto& row : net.w1) w1.push_back(to_json(row));
  return Json{{"d0", net.d0},         {"d1", net.d1},         {"W1", w1},
              {"b1", to_json(net.b1)}, {"W2", to_json(net.w2)}, {"b2", to_json(net.b2)}};
}

inline ShallowNet net_from_json(const Json& j) {
  ShallowNet net;
  net.d0 = detail::size_field(j, "d0");
  net.d1 = detail::size_field(j, "d1");
  for (const auto& row : detail::array_field(j, "W1")) net.w1.push_back(ratvec_from_json(row));
  net.b1 = ratvec_from_json(detail::field(j, "b1"));
  net.w2 = ratvec_from_json(detail::field(j, "W2"));
  net.b2 = rational_from_json(detail::field(j, "b2"));
  net.validate();
  return net;
}

// EffectiveTuple -------------------------------------------------------------

inline Json to_json(const EffectiveTuple& t) {
  Json neurons = Json::array();
  for (const auto& n : t.neurons) {
    neurons.push_back(Json{{"d", to_json(n.breakline.direction)},
                           {"q", to_json(n.breakline.offset)},
                           {"kink", to_json(n.kink)},
                           {"orient", n.orientation}});
  }
  return Json{{"neurons", neurons}, {"bias", to_json(t.bias)}, {"d0", t.d0}};
}

inline EffectiveTuple tuple_from_json(const Json& j) {
  EffectiveTuple t;
  for (const auto& n : detail::array_field(j, "neurons")) {
    const Json& o = detail::field(n, "orient");
    if (!o.is_number_integer()) detail::bad_json("orient must be +1 or -1");
    t.neurons.push_back(Neuron{breakline_from_json(n), rational_from_json(detail::field(n, "kink")),
                               o.get<int>()});
  }
  t.bias = rational_from_json(detail::field(j, "bias"));
  if (j.contains("d0")) {
    t.d0 = detail::size_field(j, "d0");
  } else if (!t.neurons.empty()) {
    t.d0 = t.neurons.front().breakline.dim();
  } else {
    detail::bad_json("a tuple without neurons needs \"d0\"");
  }
  t.validate();
  return t;
}

// CanonicalForm --------------------------------------------------------------

inline Json to_json(const CanonicalForm& cf) {
  Json terms = Json::array();
  for (const auto& t : cf.terms) {
    terms.push_back(Json{{"d", to_json(t.breakline.direction)},
                         {"q", to_json(t.breakline.offset)},
                         {"kink", to_json(t.kink)}});
  }
  return Json{{"terms", terms}, {"affine", to_json(cf.affine)}, {"bias", to_json(cf.bias)},
              {"d0", cf.d0}};
}

// Accepts unsorted or repeated terms and normalizes them.
inline CanonicalForm cf_from_json(const Json& j) {
  const std::size_t d0 = detail::size_field(j, "d0");
  std::vector<Term> terms;
  for (const auto& t : detail::array_field(j, "terms")) {
    terms.push_back(Term{breakline_from_json(t), rational_from_json(detail::field(t, "kink"))});
  }
  CanonicalForm cf = make_form(d0, terms, ratvec_from_json(detail::field(j, "affine")),
                               rational_from_json(detail::field(j, "bias")));
  cf.validate();
  return cf;
}

inline bool looks_like_cf(const Json& j) { return j.is_object() && j.contains("terms"); }

// Either a network or a canonical form.
inline CanonicalForm cf_from_any_json(const Json& j) {
  return looks_like_cf(j) ? cf_from_json(j) : canonicalize(net_from_json(j));
}

// Minimality -----------------------------------------------------------------

inline Json to_json(const RepresentationFamily& fam) {
  Json sigma = Json::array();
  for (int b : fam.sigma.bits) sigma.push_back(b);
  Json tuples = Json::array();
  for (const auto& t : fam.tuples) tuples.push_back(to_json(t));
  Json out{{"kind", family_kind_name(fam.kind)},
           {"provenance", Json{{"sigma", sigma}, {"indices", fam.indices}}},
           {"tuples", tuples}};
  if (fam.parametric()) {
    out["line"] = Json{{"d", to_json(*fam.line_direction)}, {"slope", to_json(fam.slope)}};
    out["offsets"] = to_json(RatVec(fam.offsets));
    out["base"] = to_json(fam.base);
  }
  return out;
}

inline Json families_to_json(const std::vector<RepresentationFamily>& fams) {
  Json out = Json::array();
  for (const auto& f : fams) out.push_back(to_json(f));
  return Json{{"families", out}};
}

inline Json to_json(const MinimalityReport& rep) {
  Json comps = Json::array();
  for (const auto& c : rep.components) comps.push_back(Json{{"dim", c.dim}, {"count", to_string(c.count)}});
  Json out{{"case", case_name(rep.which)}, {"n", rep.n}, {"min_width", rep.min_width}};
  out["families"] = families_to_json(rep.families)["families"];
  out["components"] = comps;
  if (rep.extension) out["extension"] = true;
  return out;
}

namespace detail {

template <typename Enum, typename NameFn>
Enum enum_from_name(const std::string& s, NameFn name, std::initializer_list<Enum> all) {
  for (Enum e : all) {
    if (s == name(e)) return e;
  }
  bad_json("unknown tag \"" + s + "\"");
}

}  // namespace detail

inline RepresentationFamily family_from_json(const Json& j) {
  RepresentationFamily fam;
  fam.kind = detail::enum_from_name<FamilyKind>(
      detail::field(j, "kind").get<std::string>(), family_kind_name,
      {FamilyKind::kExact, FamilyKind::kCaseII, FamilyKind::kCaseIIIA, FamilyKind::kCaseIIIB,
       FamilyKind::kAffine, FamilyKind::kConstant});
  const Json& prov = detail::field(j, "provenance");
  for (const auto& b : detail::array_field(prov, "sigma")) fam.sigma.bits.push_back(b.get<int>());
  for (const auto& i : detail::array_field(prov, "indices")) fam.indices.push_back(i.get<std::size_t>());
  for (const auto& t : detail::array_field(j, "tuples")) fam.tuples.push_back(tuple_from_json(t));
  if (j.contains("line")) {
    const Json& line = j.at("line");
    fam.line_direction = direction_from_json(detail::field(line, "d"));
    fam.slope = rational_from_json(detail::field(line, "slope"));
    fam.offsets = ratvec_from_json(detail::field(j, "offsets"));
    fam.base = tuple_from_json(detail::field(j, "base"));
  }
  return fam;
}

inline MinimalityReport report_from_json(const Json& j) {
  MinimalityReport rep;
  rep.which = detail::enum_from_name<MinimalityCase>(
      detail::field(j, "case").get<std::string>(), case_name,
      {MinimalityCase::kI, MinimalityCase::kII, MinimalityCase::kIII, MinimalityCase::kAffine,
       MinimalityCase::kConstant});
  rep.n = detail::size_field(j, "n");
  rep.min_width = detail::size_field(j, "min_width");
  for (const auto& f : detail::array_field(j, "families")) rep.families.push_back(family_from_json(f));
  for (const auto& c : detail::array_field(j, "components")) {
    rep.components.push_back(ManifoldStratum{detail::size_field(c, "dim"),
                                             parse_bigint(detail::field(c, "count").get<std::string>())});
  }
  rep.extension = j.value("extension", false);
  return rep;
}

// Equivalence ----------------------------------------------------------------

inline Json to_json(const Equivalence& e) {
  Json out{{"verdict", verdict_name(e.verdict)}};
  if (e.verdict == Verdict::kEqualUpToAffine) {
    out["affine_diff"] = to_json(e.affine_diff);
    out["bias_diff"] = to_json(e.bias_diff);
  }
  if (e.verdict == Verdict::kDifferent && e.witness) {
    out["witness"] = to_json(*e.witness);
    out["kinks"] = Json::array({to_json(e.witness_kinks[0]), to_json(e.witness_kinks[1])});
  }
  return out;
}

// Synthesis ------------------------------------------------------------------

inline Json to_json(const PwaSpec& spec) {
  Json out{{"expr", print_pwa(spec.expr)}};
  if (spec.auto_breaklines) {
    out["breaklines"] = "auto";
  } else {
    Json bls = Json::array();
    for (const auto& bl : spec.breaklines) bls.push_back(to_json(bl));
    out["breaklines"] = bls;
  }
  return out;
}

inline PwaSpec spec_from_json(const Json& j) {
  PwaSpec spec;
  const Json& expr = detail::field(j, "expr");
  if (!expr.is_string()) detail::bad_json("\"expr\" must be a string");
  spec.expr = parse_pwa(expr.get<std::string>());
  const Json& bls = detail::field(j, "breaklines");
  if (bls.is_string()) {
    if (bls.get<std::string>() != "auto") detail::bad_json("breaklines must be a list or \"auto\"");
    spec.auto_breaklines = true;
  } else {
    for (const auto& b : detail::array_field(j, "breaklines")) {
      spec.breaklines.push_back(breakline_from_json(b));
    }
  }
  return spec;
}

inline Json to_json(const TransversalityViolation& v) {
  return Json{{"subset", v.subset}, {"point", to_json(v.point)}};
}

inline Json to_json(const SynthesisError& e) {
  Json out{{"error", synthesis_failure_name(e.failure())}};
  if (e.reason() != RepresentabilityReason::kNone) {
    out["reason"] = representability_reason_name(e.reason());
  }
  if (e.breakline) out["breakline"] = *e.breakline;
  if (e.violation) out["violation"] = to_json(*e.violation);
  if (e.point) out["point"] = to_json(*e.point);
  out["message"] = e.what();
  return out;
}

}  // namespace relucanon
