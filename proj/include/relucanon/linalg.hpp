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
 * @file linalg.hpp
 * @brief Exact vectors, primitive directions and small linear systems.
 *
 * Elimination is fraction-free (Bareiss) on rows scaled to integers; only the
 * final back-substitution divides. Everything here is sized for the handful
 * of rows that breaklines and affine pieces produce, not for large matrices.
 */

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relucanon/error.hpp"
#include "relucanon/rational.hpp"

namespace relucanon {

using RatVec = std::vector<Rational>;

inline RatVec zeros(std::size_t n) { return RatVec(n, Rational(0)); }

inline void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_length(a.size(), b.size(), "dot");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

inline RatVec operator+(RatVec a, const RatVec& b) {
  require_same_length(a.size(), b.size(), "vector add");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline RatVec operator-(RatVec a, const RatVec& b) {
  require_same_length(a.size(), b.size(), "vector sub");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline RatVec operator*(const Rational& s, RatVec v) {
  for (auto& x : v) x *= s;
  return v;
}

inline std::string format_vec(std::span<const Rational> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out + ")";
}

// Integer direction with gcd 1 whose first nonzero entry is positive. This is
// the normal of a breakline; the lexicographic cone decides orientation.
class PrimitiveDirection {
 public:
  PrimitiveDirection() = default;

  // Validates the invariants; throws kInvalidInput otherwise.
  static PrimitiveDirection from_integers(std::vector<BigInt> entries) {
    BigInt g = 0;
    for (const auto& e : entries) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    if (g == 0) throw Error(ErrorCode::kZeroVector, "direction is zero");
    if (g != 1) throw Error(ErrorCode::kInvalidInput, "direction is not primitive");
    auto first = std::find_if(entries.begin(), entries.end(), [](const BigInt& e) { return e != 0; });
    if (*first < 0) throw Error(ErrorCode::kInvalidInput, "direction is not lex-positive");
    PrimitiveDirection d;
    d.entries_ = std::move(entries);
    return d;
  }

  static PrimitiveDirection axis(std::size_t dim, std::size_t k) {
    std::vector<BigInt> e(dim, BigInt(0));
    e.at(k) = 1;
    return from_integers(std::move(e));
  }

  std::size_t size() const { return entries_.size(); }
  const std::vector<BigInt>& entries() const { return entries_; }
  const BigInt& operator[](std::size_t i) const { return entries_[i]; }

  RatVec as_vector() const {
    RatVec v;
    v.reserve(entries_.size());
    for (const auto& e : entries_) v.emplace_back(e);
    return v;
  }

  Rational dot(std::span<const Rational> x) const {
    require_same_length(entries_.size(), x.size(), "direction dot");
    mpq_class s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += entries_[i] * x[i].raw();
    return Rational(s);
  }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ",";
      out += entries_[i].get_str();
    }
    return out + ")";
  }

  friend bool operator==(const PrimitiveDirection& a, const PrimitiveDirection& b) {
    return a.entries_ == b.entries_;
  }
  friend std::strong_ordering operator<=>(const PrimitiveDirection& a,
                                          const PrimitiveDirection& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      int c = cmp(a.entries_[i], b.entries_[i]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::vector<BigInt> entries_;
};

struct ScaledDirection {
  PrimitiveDirection direction;
  Rational scale;  // v = scale * direction; sign(scale) is the orientation of v
};

inline ScaledDirection primitive_direction(std::span<const Rational> v) {
  if (is_zero(v)) throw Error(ErrorCode::kZeroVector, "primitive_direction of zero vector");
  // v = (1/L) * w with w integer, L = lcm of denominators; then w = g * d.
  BigInt lcm = 1;
  for (const auto& x : v) {
    BigInt den = x.denominator();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<BigInt> w;
  w.reserve(v.size());
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt num = x.numerator() * (lcm / x.denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    w.push_back(std::move(num));
  }
  auto first = std::find_if(w.begin(), w.end(), [](const BigInt& e) { return e != 0; });
  BigInt signed_g = (*first < 0) ? BigInt(-g) : g;
  for (auto& e : w) e /= signed_g;
  return {PrimitiveDirection::from_integers(std::move(w)), Rational(signed_g, lcm)};
}

using Matrix = std::vector<RatVec>;

namespace detail {

// Row echelon form of an integer matrix by Bareiss elimination. Returns the
// pivot column of each nonzero row.
inline std::vector<std::size_t> bareiss_echelon(std::vector<std::vector<BigInt>>& m,
                                                std::size_t cols) {
  std::vector<std::size_t> pivots;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    // Rows above r keep their entries; columns left of c are already zero below.
    prev = m[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::vector<BigInt> integer_row(std::span<const Rational> row) {
  BigInt lcm = 1;
  for (const auto& x : row) {
    BigInt den = x.denominator();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<BigInt> out;
  out.reserve(row.size());
  for (const auto& x : row) out.push_back(x.numerator() * (lcm / x.denominator()));
  return out;
}

}  // namespace detail

inline std::size_t rank(const Matrix& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<BigInt>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    require_same_length(r.size(), cols, "rank");
    m.push_back(detail::integer_row(r));
  }
  return detail::bareiss_echelon(m, cols).size();
}

// Solution set {particular + span(kernel)} of A x = b.
struct AffineSolution {
  RatVec particular;
  std::vector<RatVec> kernel;
};

// Solves A x = b exactly; `cols` is needed when A has no rows.
inline std::optional<AffineSolution> solve(const Matrix& a, const RatVec& b, std::size_t cols) {
  require_same_length(a.size(), b.size(), "solve rhs");
  std::vector<std::vector<BigInt>> m;
  m.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    require_same_length(a[i].size(), cols, "solve row");
    RatVec row = a[i];
    row.push_back(b[i]);
    m.push_back(detail::integer_row(row));
  }
  auto pivots = detail::bareiss_echelon(m, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;

  auto back_substitute = [&](RatVec x, bool homogeneous) {
    for (std::size_t r = pivots.size(); r-- > 0;) {
      const std::size_t pc = pivots[r];
      Rational acc = homogeneous ? Rational(0) : Rational(m[r][cols]);
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (!x[j].is_zero()) acc -= Rational(m[r][j]) * x[j];
      }
      x[pc] = acc / Rational(m[r][pc]);
    }
    return x;
  };

  AffineSolution sol;
  sol.particular = back_substitute(zeros(cols), false);
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec x = zeros(cols);
    x[f] = 1;
    sol.kernel.push_back(back_substitute(std::move(x), true));
  }
  return sol;
}

// Coefficients c with v = sum c_i * basis_i. A dependent pair is reduced to
// its first generator, so then a single coefficient is reported.
inline std::optional<RatVec> in_span(const RatVec& v, const std::vector<RatVec>& basis) {
  if (basis.empty() || basis.size() > 2) {
    throw Error(ErrorCode::kInvalidInput, "in_span expects one or two generators");
  }
  for (const auto& g : basis) {
    require_same_length(g.size(), v.size(), "in_span");
    if (is_zero(g)) throw Error(ErrorCode::kZeroVector, "in_span generator is zero");
  }
  std::vector<RatVec> gens = basis;
  if (gens.size() == 2 && rank(gens) < 2) gens.pop_back();
  Matrix a(v.size(), RatVec(gens.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) a[i][k] = gens[k][i];
  }
  auto sol = solve(a, v, gens.size());
  if (!sol) return std::nullopt;
  return sol->particular;
}

struct AffineMap {
  RatVec gradient;
  Rational constant;

  Rational operator()(std::span<const Rational> x) const { return dot(gradient, x) + constant; }
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

// The affine map through d0+1 points; nullopt if the points are affinely
// dependent.
inline std::optional<AffineMap> affine_fit(const std::vector<RatVec>& points,
                                           const RatVec& values) {
  require_same_length(points.size(), values.size(), "affine_fit values");
  if (points.empty()) throw Error(ErrorCode::kDimensionMismatch, "affine_fit needs points");
  const std::size_t d = points.front().size();
  require_same_length(points.size(), d + 1, "affine_fit point count");
  Matrix a;
  a.reserve(points.size());
  for (const auto& p : points) {
    require_same_length(p.size(), d, "affine_fit point");
    RatVec row = p;
    row.push_back(1);
    a.push_back(std::move(row));
  }
  auto sol = solve(a, values, d + 1);
  if (!sol || !sol->kernel.empty()) return std::nullopt;
  AffineMap out;
  out.constant = sol->particular.back();
  sol->particular.pop_back();
  out.gradient = std::move(sol->particular);
  return out;
}

}  // namespace relucanon
