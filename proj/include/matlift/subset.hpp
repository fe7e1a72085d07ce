// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "matlift/errors.hpp"

namespace matlift {

/// A subset of a ground set of at most 64 elements, one bit per element.
using Mask = std::uint64_t;

inline constexpr int kMaxElements = 64;

constexpr Mask bit(int e) { return Mask{1} << e; }

constexpr Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

constexpr int popcount(Mask m) { return std::popcount(m); }

constexpr bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

constexpr bool has_element(Mask m, int e) { return ((m >> e) & 1U) != 0; }

constexpr int lowest_element(Mask m) { return std::countr_zero(m); }

constexpr int highest_element(Mask m) { return 63 - std::countl_zero(m); }

template <class F>
void for_each_element(Mask m, F&& f) {
  while (m != 0) {
    f(std::countr_zero(m));
    m &= m - 1;
  }
}

inline std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(popcount(m)));
  for_each_element(m, [&](int e) { out.push_back(e); });
  return out;
}

inline Mask mask_of(std::span<const int> elements) {
  Mask m = 0;
  for (int e : elements) m |= bit(e);
  return m;
}

/// Calls f on every k-element subset of {0..n-1}, in increasing numeric order.
template <class F>
void for_each_subset_of_size(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(Mask{0});
    return;
  }
  const Mask last = full_mask(n) & ~full_mask(n - k);
  Mask m = full_mask(k);
  while (true) {
    f(m);
    if (m == last) break;
    const Mask low = m & (~m + 1);
    const Mask ripple = m + low;
    m = (((ripple ^ m) >> 2) / low) | ripple;
  }
}

/// Calls f on every subset of m (including the empty set and m itself).
template <class F>
void for_each_submask(Mask m, F&& f) {
  Mask s = 0;
  while (true) {
    f(s);
    if (s == m) break;
    s = (s - m) & m;
  }
}

/// The ground set {0..size-1}. File formats and the CLI present it 1-based.
struct GroundSet {
  int size = 0;

  constexpr Mask all() const { return full_mask(size); }
  constexpr bool contains(Mask m) const { return is_subset(m, all()); }

  static GroundSet checked(int n) {
    if (n < 0 || n > kMaxElements) {
      throw PreconditionError("ground set size " + std::to_string(n) + " outside [0, 64]");
    }
    return GroundSet{n};
  }
};

/// Canonical family order: by cardinality, then by numeric mask value.
constexpr bool canonical_less(Mask a, Mask b) {
  const int pa = popcount(a);
  const int pb = popcount(b);
  return pa != pb ? pa < pb : a < b;
}

inline void canonicalize(std::vector<Mask>& family) {
  std::sort(family.begin(), family.end(), canonical_less);
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

/// Renumbers the elements of x that lie in keep onto 0..|keep|-1, preserving order.
inline Mask compress(Mask x, Mask keep) {
  Mask out = 0;
  int j = 0;
  for_each_element(keep, [&](int e) {
    if (has_element(x, e)) out |= bit(j);
    ++j;
  });
  return out;
}

/// Inverse of compress: spreads the low |keep| bits of x onto the positions of keep.
inline Mask expand(Mask x, Mask keep) {
  Mask out = 0;
  int j = 0;
  for_each_element(keep, [&](int e) {
    if (has_element(x, j)) out |= bit(e);
    ++j;
  });
  return out;
}

/// 1-based element list, e.g. "{1,2,7,8}".
inline std::string format_set(Mask m) {
  std::string s = "{";
  bool first = true;
  for_each_element(m, [&](int e) {
    if (!first) s += ',';
    s += std::to_string(e + 1);
    first = false;
  });
  s += '}';
  return s;
}

inline std::vector<int> one_based(Mask m) {
  std::vector<int> out = elements_of(m);
  for (int& e : out) ++e;
  return out;
}

}  // namespace matlift
