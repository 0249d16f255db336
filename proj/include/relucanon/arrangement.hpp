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
 * @file arrangement.hpp
 * @brief Transversality of breakline arrangements and admissible points.
 *
 * An arrangement is transversal when no breakline contains the intersection
 * of a set of others with linearly independent normals. Equivalently, for
 * every independent subset T whose intersection is nonempty, a further
 * breakline with normal in span(T) never passes through that intersection.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "relucanon/breakline.hpp"
#include "relucanon/error.hpp"
#include "relucanon/linalg.hpp"
#include "relucanon/network.hpp"

namespace relucanon {

inline constexpr std::size_t kDefaultTransversalityCap = 20;

struct TransversalityViolation {
  // 0-based indices; the last one contains the intersection of the others.
  std::vector<std::size_t> subset;
  RatVec point;  // common point of the whole subset
};

namespace detail {

inline void require_distinct(const std::vector<Breakline>& bls) {
  std::set<Breakline> seen;
  for (std::size_t i = 0; i < bls.size(); ++i) {
    if (i > 0) require_same_length(bls[i].dim(), bls[0].dim(), "breakline dimension");
    if (!seen.insert(bls[i]).second) {
      throw Error(ErrorCode::kInvalidInput, "duplicate breakline " + bls[i].str(),
                  static_cast<long>(i));
    }
  }
}

struct SubsetSystem {
  Matrix rows;
  RatVec rhs;
};

inline SubsetSystem subset_system(const std::vector<Breakline>& bls,
                                  const std::vector<std::size_t>& idx) {
  SubsetSystem s;
  for (auto i : idx) {
    s.rows.push_back(bls[i].direction.as_vector());
    s.rhs.push_back(bls[i].offset);
  }
  return s;
}

class TransversalitySearch {
 public:
  explicit TransversalitySearch(const std::vector<Breakline>& bls) : bls_(bls) {}

  std::optional<TransversalityViolation> run() {
    std::vector<std::size_t> chosen;
    return extend(chosen, 0);
  }

 private:
  // `chosen` is independent and its intersection nonempty.
  std::optional<TransversalityViolation> extend(std::vector<std::size_t>& chosen,
                                                std::size_t from) {
    const std::size_t dim = bls_.front().dim();
    for (std::size_t j = from; j < bls_.size(); ++j) {
      chosen.push_back(j);
      auto sys = subset_system(bls_, chosen);
      chosen.pop_back();
      if (rank(sys.rows) == chosen.size() + 1) {
        chosen.push_back(j);
        auto found = extend(chosen, j + 1);
        chosen.pop_back();
        if (found) return found;
        continue;
      }
      if (chosen.empty()) continue;
      // Normal of j lies in the span of the chosen normals.
      auto base = subset_system(bls_, chosen);
      auto inter = solve(base.rows, base.rhs, dim);
      if (!inter) continue;
      if (bls_[j].level(inter->particular).is_zero()) return minimal(chosen, j, inter->particular);
    }
    return std::nullopt;
  }

  // Keeps only the chosen breaklines needed to express the normal of j.
  TransversalityViolation minimal(const std::vector<std::size_t>& chosen, std::size_t j,
                                  const RatVec& point) {
    const std::size_t dim = bls_.front().dim();
    Matrix a(dim, RatVec(chosen.size()));
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      const auto v = bls_[chosen[k]].direction.as_vector();
      for (std::size_t i = 0; i < dim; ++i) a[i][k] = v[i];
    }
    auto coeffs = solve(a, bls_[j].direction.as_vector(), chosen.size());
    TransversalityViolation out;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      if (!coeffs->particular[k].is_zero()) out.subset.push_back(chosen[k]);
    }
    out.subset.push_back(j);
    out.point = point;
    return out;
  }

  const std::vector<Breakline>& bls_;
};

}  // namespace detail

// First violation in lexicographic subset order, or nullopt if transversal.
inline std::optional<TransversalityViolation> check_transversality(
    const std::vector<Breakline>& breaklines, std::size_t cap = kDefaultTransversalityCap) {
  if (breaklines.size() > cap) {
    throw Error(ErrorCode::kCapExceeded, "transversality check limited to " + std::to_string(cap) +
                                             " breaklines");
  }
  if (breaklines.empty()) return std::nullopt;
  detail::require_distinct(breaklines);
  return detail::TransversalitySearch(breaklines).run();
}

namespace detail {

// Integer points of Z^m ordered by L-infinity shell around `center`.
template <typename Visit>
bool scan_shells(std::size_t m, const std::vector<long>& center, Visit&& visit) {
  if (m == 0) return visit(std::vector<long>{});
  for (long radius = 0;; ++radius) {
    std::vector<long> t(m);
    auto rec = [&](auto&& self, std::size_t i, bool on_shell) -> bool {
      if (i == m) return on_shell ? visit(t) : false;
      for (long v = -radius; v <= radius; ++v) {
        t[i] = center[i] + v;
        if (self(self, i + 1, on_shell || v == -radius || v == radius)) return true;
      }
      return false;
    };
    if (rec(rec, 0, radius == 0)) return true;
  }
}

}  // namespace detail

// Up to `count` distinct rational points on breaklines[i] lying on no other
// breakline, deterministic in `seed`. In dimension 1 the breakline is a
// single point and at most one is returned.
inline std::vector<RatVec> admissible_points(const std::vector<Breakline>& breaklines,
                                             std::size_t i, std::uint64_t seed, std::size_t count) {
  if (i >= breaklines.size()) throw Error(ErrorCode::kInvalidInput, "breakline index out of range");
  detail::require_distinct(breaklines);
  const auto& bl = breaklines[i];
  const std::size_t dim = bl.dim();
  std::size_t p = 0;
  while (p < dim && bl.direction[p] == 0) ++p;

  // x(t) = x0 + sum_k t_k (e_k - (d_k / d_p) e_p) over k != p.
  RatVec x0 = zeros(dim);
  const Rational dp(bl.direction[p]);
  x0[p] = bl.offset / dp;
  std::mt19937_64 rng(seed);
  std::vector<long> center(dim - 1);
  for (auto& c : center) c = detail::draw_int(rng, 1, 3) * (detail::draw_int(rng, 0, 1) ? 1 : -1);

  std::vector<RatVec> out;
  if (dim == 1) {
    out.push_back(x0);
    return out;
  }
  // Successive points are scanned around alternating mirror images of the
  // center so they tend to land on different sides of the other breaklines.
  for (std::size_t n = 0; n < count; ++n) {
    detail::scan_shells(dim - 1, center, [&](const std::vector<long>& t) {
      RatVec x = x0;
      std::size_t slot = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        if (k == p) continue;
        const Rational tk(t[slot++]);
        x[k] += tk;
        x[p] -= tk * Rational(bl.direction[k]) / dp;
      }
      for (std::size_t j = 0; j < breaklines.size(); ++j) {
        if (j != i && breaklines[j].level(x).is_zero()) return false;
      }
      if (std::find(out.begin(), out.end(), x) != out.end()) return false;
      out.push_back(std::move(x));
      return true;
    });
    for (auto& c : center) c = -c;
  }
  return out;
}

inline RatVec point_on_breakline(const std::vector<Breakline>& breaklines, std::size_t i,
                                 std::uint64_t seed) {
  return admissible_points(breaklines, i, seed, 1).front();
}

}  // namespace relucanon
