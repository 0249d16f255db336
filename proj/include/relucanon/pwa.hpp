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
 * @file pwa.hpp
 * @brief Expression language for continuous piecewise-affine functions.
 *
 * Grammar (whitespace-insensitive):
 *
 *   sum     := product ('+' product)*
 *   product := number '*' product | '-' number '*' product | unary
 *   unary   := '-' unary | primary
 *   primary := 'affine' '(' '[' number (',' number)* ']' ',' number ')'
 *            | 'relu' '(' sum ')'
 *            | ('max' | 'min') '(' sum ',' sum ')'
 *            | '(' sum ')'
 *   number  := digits ('.' digits)? | digits '/' digits
 *
 * A leading minus directly before `number '*'` belongs to the coefficient,
 * so "-2 * e" is Scale(-2, e).
 */

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relucanon/breakline.hpp"
#include "relucanon/error.hpp"
#include "relucanon/linalg.hpp"

namespace relucanon {

struct PwaExpr {
  enum class Kind { kAffine, kRelu, kMax, kMin, kSum, kScale, kNeg };

  Kind kind = Kind::kAffine;
  RatVec coeffs;      // kAffine
  Rational constant;  // kAffine constant, kScale factor
  std::vector<PwaExpr> children;

  static PwaExpr affine(RatVec coeffs, Rational c) {
    PwaExpr e;
    e.kind = Kind::kAffine;
    e.coeffs = std::move(coeffs);
    e.constant = std::move(c);
    return e;
  }
  static PwaExpr unary(Kind k, PwaExpr child) {
    PwaExpr e;
    e.kind = k;
    e.children.push_back(std::move(child));
    return e;
  }
  static PwaExpr binary(Kind k, PwaExpr l, PwaExpr r) {
    PwaExpr e;
    e.kind = k;
    e.children.push_back(std::move(l));
    e.children.push_back(std::move(r));
    return e;
  }
  static PwaExpr sum(std::vector<PwaExpr> terms) {
    PwaExpr e;
    e.kind = Kind::kSum;
    e.children = std::move(terms);
    return e;
  }
  static PwaExpr scale(Rational c, PwaExpr child) {
    PwaExpr e = unary(Kind::kScale, std::move(child));
    e.constant = std::move(c);
    return e;
  }

  friend bool operator==(const PwaExpr&, const PwaExpr&) = default;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
      : Error(ErrorCode::kParseError, describe(position, expected, found),
              static_cast<long>(position)),
        position_(position),
        expected_(std::move(expected)) {}

  // 1-based character position; input length + 1 means end of input.
  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string describe(std::size_t pos, const std::vector<std::string>& expected,
                              const std::string& found) {
    std::string s = "at position " + std::to_string(pos) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) s += " or ";
      s += expected[i];
    }
    return s + ", found " + found;
  }

  std::size_t position_;
  std::vector<std::string> expected_;
};

namespace detail {

class PwaParser {
 public:
  explicit PwaParser(std::string_view text) : text_(text) {}

  PwaExpr parse() {
    PwaExpr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail({"'+'", "end of input"});
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_char(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek_char(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_ws();
    std::string found =
        pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : std::string("end of input");
    throw ParseError(pos_ + 1, std::move(expected), found);
  }

  bool at_number() {
    skip_ws();
    return pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '.');
  }

  // Unsigned number literal.
  Rational number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '.' || text_[pos_] == '/')) {
      ++pos_;
    }
    if (pos_ == start) fail({"number"});
    try {
      return Rational::parse(text_.substr(start, pos_ - start));
    } catch (const Error&) {
      pos_ = start;
      fail({"number"});
    }
  }

  Rational signed_number() {
    bool negative = accept('-');
    Rational r = number();
    return negative ? -r : r;
  }

  // True if a (possibly negated) number followed by '*' starts here.
  bool at_scale() {
    const std::size_t save = pos_;
    bool result = false;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      skip_ws();
    }
    if (at_number()) {
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '.' || text_[pos_] == '/')) {
        ++pos_;
      }
      result = peek_char('*');
    }
    pos_ = save;
    return result;
  }

  PwaExpr parse_sum() {
    std::vector<PwaExpr> terms;
    terms.push_back(parse_product());
    while (accept('+')) terms.push_back(parse_product());
    if (terms.size() == 1) return std::move(terms.front());
    return PwaExpr::sum(std::move(terms));
  }

  PwaExpr parse_product() {
    if (at_scale()) {
      Rational c = signed_number();
      expect('*');
      return PwaExpr::scale(std::move(c), parse_product());
    }
    return parse_unary();
  }

  PwaExpr parse_unary() {
    if (accept('-')) return PwaExpr::unary(PwaExpr::Kind::kNeg, parse_unary());
    return parse_primary();
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  PwaExpr parse_primary() {
    static const std::vector<std::string> kPrimary = {"'affine'", "'relu'", "'max'", "'min'",
                                                      "'('", "'-'", "number"};
    skip_ws();
    if (accept('(')) {
      PwaExpr e = parse_sum();
      expect(')');
      return e;
    }
    const std::size_t start = pos_;
    std::string id = identifier();
    if (id == "affine") {
      expect('(');
      expect('[');
      RatVec coeffs;
      coeffs.push_back(signed_number());
      while (accept(',')) coeffs.push_back(signed_number());
      expect(']');
      expect(',');
      Rational c = signed_number();
      expect(')');
      return PwaExpr::affine(std::move(coeffs), std::move(c));
    }
    if (id == "relu") {
      expect('(');
      PwaExpr arg = parse_sum();
      expect(')');
      return PwaExpr::unary(PwaExpr::Kind::kRelu, std::move(arg));
    }
    if (id == "max" || id == "min") {
      expect('(');
      PwaExpr l = parse_sum();
      expect(',');
      PwaExpr r = parse_sum();
      expect(')');
      return PwaExpr::binary(id == "max" ? PwaExpr::Kind::kMax : PwaExpr::Kind::kMin,
                             std::move(l), std::move(r));
    }
    pos_ = start;
    fail(kPrimary);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline void collect_dims(const PwaExpr& e, std::set<std::size_t>& dims) {
  if (e.kind == PwaExpr::Kind::kAffine) dims.insert(e.coeffs.size());
  for (const auto& c : e.children) collect_dims(c, dims);
}

}  // namespace detail

// Ambient dimension shared by every affine leaf.
inline std::size_t pwa_dim(const PwaExpr& e) {
  std::set<std::size_t> dims;
  detail::collect_dims(e, dims);
  if (dims.size() != 1) {
    throw Error(ErrorCode::kDimensionMismatch, "affine leaves disagree on the input dimension");
  }
  return *dims.begin();
}

inline PwaExpr parse_pwa(std::string_view text) {
  PwaExpr e = detail::PwaParser(text).parse();
  pwa_dim(e);
  return e;
}

inline std::string print_pwa(const PwaExpr& e) {
  using K = PwaExpr::Kind;
  auto wrapped = [](const PwaExpr& c, bool wrap) {
    return wrap ? "(" + print_pwa(c) + ")" : print_pwa(c);
  };
  switch (e.kind) {
    case K::kAffine: {
      std::string s = "affine([";
      for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
        if (i) s += ",";
        s += e.coeffs[i].str();
      }
      return s + "]," + e.constant.str() + ")";
    }
    case K::kRelu: return "relu(" + print_pwa(e.children[0]) + ")";
    case K::kMax: return "max(" + print_pwa(e.children[0]) + "," + print_pwa(e.children[1]) + ")";
    case K::kMin: return "min(" + print_pwa(e.children[0]) + "," + print_pwa(e.children[1]) + ")";
    case K::kSum: {
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) s += " + ";
        s += wrapped(e.children[i], e.children[i].kind == K::kSum);
      }
      return s;
    }
    case K::kScale:
      return e.constant.str() + " * " + wrapped(e.children[0], e.children[0].kind == K::kSum);
    case K::kNeg: {
      const auto k = e.children[0].kind;
      return "-" + wrapped(e.children[0], k == K::kSum || k == K::kScale);
    }
  }
  return {};
}

inline Rational eval_pwa(const PwaExpr& e, std::span<const Rational> x) {
  using K = PwaExpr::Kind;
  switch (e.kind) {
    case K::kAffine:
      require_same_length(x.size(), e.coeffs.size(), "eval_pwa input");
      return dot(e.coeffs, x) + e.constant;
    case K::kRelu: return relu(eval_pwa(e.children[0], x));
    case K::kMax: return max_of(eval_pwa(e.children[0], x), eval_pwa(e.children[1], x));
    case K::kMin: return min_of(eval_pwa(e.children[0], x), eval_pwa(e.children[1], x));
    case K::kSum: {
      Rational s;
      for (const auto& c : e.children) s += eval_pwa(c, x);
      return s;
    }
    case K::kScale: return e.constant * eval_pwa(e.children[0], x);
    case K::kNeg: return -eval_pwa(e.children[0], x);
  }
  return {};
}

namespace detail {

// Collapses a subtree made of Affine/Sum/Scale/Neg; nullopt otherwise.
inline std::optional<AffineMap> as_affine(const PwaExpr& e) {
  using K = PwaExpr::Kind;
  switch (e.kind) {
    case K::kAffine: return AffineMap{e.coeffs, e.constant};
    case K::kSum: {
      std::optional<AffineMap> acc;
      for (const auto& c : e.children) {
        auto m = as_affine(c);
        if (!m) return std::nullopt;
        if (!acc) {
          acc = std::move(m);
        } else {
          acc->gradient = acc->gradient + m->gradient;
          acc->constant += m->constant;
        }
      }
      return acc;
    }
    case K::kScale:
    case K::kNeg: {
      auto m = as_affine(e.children[0]);
      if (!m) return std::nullopt;
      Rational c = e.kind == K::kNeg ? Rational(-1) : e.constant;
      return AffineMap{c * m->gradient, c * m->constant};
    }
    default: return std::nullopt;
  }
}

inline void collect_breaklines(const PwaExpr& e, std::set<Breakline>& out) {
  using K = PwaExpr::Kind;
  auto add = [&](const AffineMap& g) {
    if (is_zero(g.gradient)) return;
    out.insert(breakline_of(g.gradient, -g.constant));
  };
  auto arg = [](const PwaExpr& c) {
    auto m = as_affine(c);
    if (!m) throw Error(ErrorCode::kNotFlat, "relu/max/min argument is not affine");
    return *m;
  };
  switch (e.kind) {
    case K::kRelu: add(arg(e.children[0])); return;
    case K::kMax:
    case K::kMin: {
      AffineMap l = arg(e.children[0]);
      AffineMap r = arg(e.children[1]);
      add(AffineMap{l.gradient - r.gradient, l.constant - r.constant});
      return;
    }
    default:
      for (const auto& c : e.children) collect_breaklines(c, out);
  }
}

}  // namespace detail

// Breaklines of a flat expression (relu/max/min only of affine arguments),
// deduplicated and sorted. Throws kNotFlat otherwise.
inline std::vector<Breakline> flat_breaklines(const PwaExpr& e) {
  std::set<Breakline> out;
  detail::collect_breaklines(e, out);
  return {out.begin(), out.end()};
}

}  // namespace relucanon
