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

#include <compare>
#include <span>
#include <string>

#include "relucanon/linalg.hpp"

namespace relucanon {

// Hyperplane {x : direction . x = offset}. Directions are primitive and
// lex-positive, so two breaklines are the same set iff they compare equal.
struct Breakline {
  PrimitiveDirection direction;
  Rational offset;

  std::size_t dim() const { return direction.size(); }

  // direction . x - offset; positive on the positive side.
  Rational level(std::span<const Rational> x) const { return direction.dot(x) - offset; }

  std::string str() const { return "{" + direction.str() + "," + offset.str() + "}"; }

  friend bool operator==(const Breakline&, const Breakline&) = default;
  friend std::strong_ordering operator<=>(const Breakline& a, const Breakline& b) {
    if (auto c = a.direction <=> b.direction; c != 0) return c;
    return a.offset <=> b.offset;
  }
};

// Breakline of the level set {v . x = c} for a nonzero v.
inline Breakline breakline_of(std::span<const Rational> v, const Rational& c) {
  auto [dir, s] = primitive_direction(v);
  return Breakline{std::move(dir), c / s};
}

}  // namespace relucanon
