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
 * @file min_width_oracle.hpp
 * @brief Exhaustive search for minimal representations at desk scale.
 *
 * Independent of the sign-pattern sets used by minimality.hpp. Any
 * representation puts at least one neuron on each breakline of the target;
 * remaining neurons sit on those breaklines or on extra breaklines whose
 * kinks cancel. For a neuron layout (how many positively / negatively
 * oriented neurons per breakline) the representation exists iff
 *   sum_i N_i d_i + sum_e v_e = -a
 * is solvable, where N_i is the sum of negatively oriented kinks on target
 * breakline i (0 or kink_i when the group is one-sided, free otherwise) and
 * v_e the negatively oriented contribution of extra breakline e. A lone
 * neuron in a group forbids the value that would make its kink vanish; the
 * solution space must not lie inside any such forbidden set.
 */

#include <algorithm>
#include <optional>
#include <vector>

#include "relucanon/canonical.hpp"
#include "relucanon/linalg.hpp"
#include "relucanon/minimality.hpp"

namespace relucanon {

struct GroupLayout {
  int positive = 0;
  int negative = 0;
  int size() const { return positive + negative; }
  bool mixed() const { return positive > 0 && negative > 0; }
};

struct NeuronLayout {
  std::vector<GroupLayout> on_terms;  // one per target breakline
  std::vector<GroupLayout> extras;    // extra breaklines, each with >= 2 neurons
  int width() const {
    int w = 0;
    for (const auto& g : on_terms) w += g.size();
    for (const auto& g : extras) w += g.size();
    return w;
  }
};

namespace oracle {

inline constexpr std::size_t kMaxTerms = 4;
inline constexpr std::size_t kMaxDim = 3;

// Unknowns: N_i for each mixed term group, then d0 entries per mixed extra.
struct LayoutSystem {
  Matrix a;
  RatVec rhs;
  std::size_t vars = 0;
  std::vector<std::optional<std::size_t>> term_var;   // per term group
  std::vector<std::optional<std::size_t>> extra_var;  // first of d0 entries
};

inline LayoutSystem build_system(const CanonicalForm& cf, const NeuronLayout& layout) {
  LayoutSystem s;
  const std::size_t d0 = cf.d0;
  s.term_var.resize(layout.on_terms.size());
  s.extra_var.resize(layout.extras.size());
  for (std::size_t i = 0; i < layout.on_terms.size(); ++i) {
    if (layout.on_terms[i].mixed()) s.term_var[i] = s.vars++;
  }
  for (std::size_t e = 0; e < layout.extras.size(); ++e) {
    if (layout.extras[e].mixed()) {
      s.extra_var[e] = s.vars;
      s.vars += d0;
    }
  }
  s.a.assign(d0, RatVec(s.vars));
  s.rhs = zeros(d0);
  for (std::size_t k = 0; k < d0; ++k) s.rhs[k] = -cf.affine[k];
  for (std::size_t i = 0; i < layout.on_terms.size(); ++i) {
    const auto& dir = cf.terms[i].breakline.direction;
    if (s.term_var[i]) {
      for (std::size_t k = 0; k < d0; ++k) s.a[k][*s.term_var[i]] = Rational(dir[k]);
    } else if (layout.on_terms[i].negative > 0) {
      for (std::size_t k = 0; k < d0; ++k) s.rhs[k] -= cf.terms[i].kink * Rational(dir[k]);
    }
  }
  for (std::size_t e = 0; e < layout.extras.size(); ++e) {
    if (!s.extra_var[e]) continue;
    for (std::size_t k = 0; k < d0; ++k) s.a[k][*s.extra_var[e] + k] = 1;
  }
  return s;
}

// True iff the solution set lies inside {x : x[idx...] == value...}.
inline bool pinned(const AffineSolution& sol, std::size_t first, std::size_t count,
                   const RatVec& value) {
  for (const auto& k : sol.kernel) {
    for (std::size_t c = 0; c < count; ++c) {
      if (!k[first + c].is_zero()) return false;
    }
  }
  for (std::size_t c = 0; c < count; ++c) {
    if (sol.particular[first + c] != value[c]) return false;
  }
  return true;
}

inline std::optional<AffineSolution> feasible_solution(const CanonicalForm& cf,
                                                       const NeuronLayout& layout,
                                                       const LayoutSystem& s) {
  auto sol = solve(s.a, s.rhs, s.vars);
  if (!sol) return std::nullopt;
  for (std::size_t i = 0; i < layout.on_terms.size(); ++i) {
    if (!s.term_var[i]) continue;
    const auto& g = layout.on_terms[i];
    if (g.negative == 1 && pinned(*sol, *s.term_var[i], 1, {Rational(0)})) return std::nullopt;
    if (g.positive == 1 && pinned(*sol, *s.term_var[i], 1, {cf.terms[i].kink})) {
      return std::nullopt;
    }
  }
  for (std::size_t e = 0; e < layout.extras.size(); ++e) {
    if (!s.extra_var[e]) continue;
    const auto& g = layout.extras[e];
    if ((g.negative == 1 || g.positive == 1) && pinned(*sol, *s.extra_var[e], cf.d0, zeros(cf.d0))) {
      return std::nullopt;
    }
  }
  return sol;
}

inline std::vector<GroupLayout> group_layouts(int size) {
  std::vector<GroupLayout> out;
  for (int p = size; p >= 0; --p) out.push_back({p, size - p});
  return out;
}

// Calls visit(layout) for every layout of exactly `width` neurons with at
// most two extra breaklines. Extra groups are generated in non-decreasing
// (size, positive) order to skip mirrored duplicates.
template <typename Visit>
void for_each_layout(std::size_t n, int width, Visit&& visit) {
  NeuronLayout layout;
  layout.on_terms.resize(n);

  auto assign_terms = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == n) {
      if (remaining == 0) visit(layout);
      return;
    }
    const int left_after = static_cast<int>(n - i - 1);
    for (int m = 1; m <= remaining - left_after; ++m) {
      for (const auto& g : group_layouts(m)) {
        layout.on_terms[i] = g;
        self(self, i + 1, remaining - m);
      }
    }
  };

  auto assign_extras = [&](int remaining) {
    // zero extras
    layout.extras.clear();
    assign_terms(assign_terms, 0, remaining);
    // one extra
    for (int m = 2; m <= remaining - static_cast<int>(n); ++m) {
      for (const auto& g : group_layouts(m)) {
        layout.extras = {g};
        assign_terms(assign_terms, 0, remaining - m);
      }
    }
    // two extras
    for (int m1 = 2; m1 <= remaining - static_cast<int>(n); ++m1) {
      for (int m2 = m1; m1 + m2 <= remaining - static_cast<int>(n); ++m2) {
        for (const auto& g1 : group_layouts(m1)) {
          for (const auto& g2 : group_layouts(m2)) {
            if (m1 == m2 && g2.positive > g1.positive) continue;
            layout.extras = {g1, g2};
            assign_terms(assign_terms, 0, remaining - m1 - m2);
          }
        }
      }
    }
  };
  assign_extras(width);
}

inline void check_desk_scale(const CanonicalForm& cf, std::size_t width_limit) {
  cf.validate();
  if (cf.size() > kMaxTerms || cf.d0 > kMaxDim || width_limit > cf.size() + 2) {
    throw Error(ErrorCode::kCapExceeded, "brute force is limited to n <= 4, d0 <= 3, width <= n+2");
  }
}

}  // namespace oracle

inline bool layout_feasible(const CanonicalForm& cf, const NeuronLayout& layout) {
  auto sys = oracle::build_system(cf, layout);
  return oracle::feasible_solution(cf, layout, sys).has_value();
}

// Least width <= width_limit admitting a representation; width_limit + 1 if
// none does.
inline std::size_t brute_force_min_width(const CanonicalForm& cf, std::size_t width_limit) {
  oracle::check_desk_scale(cf, width_limit);
  const std::size_t start = std::max<std::size_t>(cf.size(), 1);
  for (std::size_t k = start; k <= width_limit; ++k) {
    bool found = false;
    oracle::for_each_layout(cf.size(), static_cast<int>(k), [&](const NeuronLayout& layout) {
      if (!found && layout_feasible(cf, layout)) found = true;
    });
    if (found) return k;
  }
  return width_limit + 1;
}

struct BruteForceTuples {
  std::size_t width = 0;
  std::vector<EffectiveTuple> tuples;  // permutation representatives, sorted, unique
  bool has_continuum = false;          // a feasible layout with free kinks beyond r
};

// All representations of the minimal width, with every free extra-breakline
// offset taken from r_samples. Layouts whose kinks are not pinned down are
// reported through has_continuum instead of being sampled.
inline BruteForceTuples brute_force_minimal_tuples(const CanonicalForm& cf,
                                                   const std::vector<Rational>& r_samples) {
  BruteForceTuples out;
  out.width = brute_force_min_width(cf, cf.size() + 2);
  if (out.width > cf.size() + 2) return out;
  const std::size_t d0 = cf.d0;
  oracle::for_each_layout(cf.size(), static_cast<int>(out.width), [&](const NeuronLayout& layout) {
    auto sys = oracle::build_system(cf, layout);
    auto sol = oracle::feasible_solution(cf, layout, sys);
    if (!sol) return;
    bool finite = sol->kernel.empty() && layout.extras.size() <= 1;
    for (const auto& g : layout.on_terms) finite = finite && g.positive <= 1 && g.negative <= 1;
    for (const auto& g : layout.extras) finite = finite && g.positive == 1 && g.negative == 1;
    if (!finite) {
      out.has_continuum = true;
      return;
    }
    EffectiveTuple base;
    base.d0 = d0;
    base.bias = cf.bias;
    for (std::size_t i = 0; i < cf.size(); ++i) {
      const auto& g = layout.on_terms[i];
      const auto& bl = cf.terms[i].breakline;
      Rational neg_kink;
      if (g.mixed()) {
        neg_kink = sol->particular[*sys.term_var[i]];
        base.neurons.push_back(Neuron{bl, cf.terms[i].kink - neg_kink, 1});
        base.neurons.push_back(Neuron{bl, neg_kink, -1});
      } else if (g.negative == 1) {
        neg_kink = cf.terms[i].kink;
        base.neurons.push_back(Neuron{bl, neg_kink, -1});
      } else {
        base.neurons.push_back(Neuron{bl, cf.terms[i].kink, 1});
      }
      base.bias -= neg_kink * bl.offset;
    }
    if (layout.extras.empty()) {
      out.tuples.push_back(permutation_representative(std::move(base)));
      return;
    }
    RatVec v(sol->particular.begin() + static_cast<long>(*sys.extra_var[0]),
             sol->particular.begin() + static_cast<long>(*sys.extra_var[0] + d0));
    auto [m, c] = primitive_direction(v);
    for (const auto& r : r_samples) {
      EffectiveTuple t = base;
      Breakline bl{m, r};
      t.neurons.push_back(Neuron{bl, -c, 1});
      t.neurons.push_back(Neuron{bl, c, -1});
      t.bias -= c * r;
      out.tuples.push_back(permutation_representative(std::move(t)));
    }
  });
  std::sort(out.tuples.begin(), out.tuples.end(), [](const EffectiveTuple& a, const EffectiveTuple& b) {
    if (a.neurons != b.neurons) return a.neurons < b.neurons;
    return a.bias < b.bias;
  });
  out.tuples.erase(std::unique(out.tuples.begin(), out.tuples.end()), out.tuples.end());
  return out;
}

}  // namespace relucanon
