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
 * @file rational.hpp
 * @brief Exact rationals and arbitrary-precision integers.
 *
 * Thin value types over GMP. A Rational is always in lowest terms with a
 * positive denominator; zero is 0/1. Text form is "p" or "p/q"; decimal
 * strings such as "-1.25" are accepted on input and converted exactly.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "relucanon/error.hpp"

namespace relucanon {

using BigInt = mpz_class;

inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::kInvalidInput, "empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw Error(ErrorCode::kInvalidInput, "bad integer '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') {
      throw Error(ErrorCode::kInvalidInput, "bad integer '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

class Rational {
 public:
  Rational() = default;
  Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : value_(static_cast<long>(v)) {}  // NOLINT
  explicit Rational(const BigInt& z) : value_(z) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error(ErrorCode::kInvalidInput, "zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  // Accepts "p", "p/q", and finite decimals "[-]d*.d*".
  static Rational parse(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
    std::string_view s = text.substr(b, e - b);
    if (s.empty()) throw Error(ErrorCode::kInvalidInput, "empty rational");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      return Rational(parse_bigint(s.substr(0, slash)), parse_bigint(s.substr(slash + 1)));
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      std::string_view whole = s.substr(0, dot);
      std::string_view frac = s.substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
      if (whole.empty() && frac.empty()) {
        throw Error(ErrorCode::kInvalidInput, "bad decimal '" + std::string(s) + "'");
      }
      std::string digits = std::string(whole) + std::string(frac);
      for (char c : digits) {
        if (c < '0' || c > '9') {
          throw Error(ErrorCode::kInvalidInput, "bad decimal '" + std::string(s) + "'");
        }
      }
      BigInt num(digits.empty() ? std::string("0") : digits, 10);
      BigInt den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      if (negative) num = -num;
      return Rational(num, den);
    }
    return Rational(parse_bigint(s));
  }

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  const mpq_class& raw() const { return value_; }

  std::string str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  Rational abs() const { return Rational(::abs(value_)); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::kInvalidInput, "division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

inline Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min_of(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational relu(const Rational& a) { return a.sign() > 0 ? a : Rational(0); }

inline BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace relucanon
