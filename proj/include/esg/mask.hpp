// Copyright 2026 The esgames Authors
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

#ifndef ESG_MASK_HPP_
#define ESG_MASK_HPP_

#include <bit>
#include <cstdint>
#include <vector>

namespace esg {

// Finite subsets of a structure's events, indexed in canonical (name) order.
using Mask = std::uint64_t;

inline constexpr int kMaxEvents = 64;

inline constexpr Mask bit(int i) { return Mask{1} << i; }
inline constexpr bool has(Mask m, int i) { return (m >> i) & 1U; }
inline constexpr int popcount(Mask m) { return std::popcount(m); }
inline constexpr bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline std::vector<int> members(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

// Canonical set order: by size, then lexicographic on the sorted member
// indices (which is lexicographic on names, since indices follow names).
inline bool canonical_less(Mask a, Mask b) {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  while (a && b) {
    int ia = std::countr_zero(a), ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

}  // namespace esg

#endif  // ESG_MASK_HPP_
