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
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matlift/errors.hpp"
#include "matlift/subset.hpp"

namespace matlift {

/// A finite group given by its Cayley table: mul(g, h) = g·h (row g, column h).
/// Elements are indices 0..order-1. Subsets of the group are masks, so the
/// order is capped at 64.
class FinGroup {
 public:
  FinGroup(std::vector<std::string> names, std::vector<std::vector<int>> table)
      : names_(std::move(names)), table_(std::move(table)) {
    const int k = order();
    if (k < 1 || k > kMaxElements) throw PreconditionError("group order must be between 1 and 64");
    if (static_cast<int>(table_.size()) != k) throw AxiomError("Cayley table has the wrong number of rows");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != k) throw AxiomError("Cayley table has a row of the wrong length");
      for (int v : row) {
        if (v < 0 || v >= k) throw AxiomError("Cayley table entry outside the group");
      }
    }
    identity_ = -1;
    for (int e = 0; e < k && identity_ < 0; ++e) {
      bool ok = true;
      for (int g = 0; g < k && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
      if (ok) identity_ = e;
    }
    if (identity_ < 0) throw AxiomError("no identity element");
    inverse_.assign(static_cast<std::size_t>(k), -1);
    for (int g = 0; g < k; ++g) {
      for (int h = 0; h < k; ++h) {
        if (mul(g, h) == identity_ && mul(h, g) == identity_) inverse_[static_cast<std::size_t>(g)] = h;
      }
      if (inverse_[static_cast<std::size_t>(g)] < 0) throw AxiomError("element " + names_[static_cast<std::size_t>(g)] + " has no inverse");
    }
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        for (int c = 0; c < k; ++c) {
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            throw AxiomError("associativity fails for (" + name(a) + ", " + name(b) + ", " + name(c) + ")");
          }
        }
      }
    }
  }

  int order() const { return static_cast<int>(names_.size()); }
  int identity() const { return identity_; }
  int mul(int g, int h) const { return table_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
  int inv(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
  const std::string& name(int g) const { return names_[static_cast<std::size_t>(g)]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  std::optional<int> find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<int>(it - names_.begin());
  }

  Mask all() const { return full_mask(order()); }
  Mask nonidentity() const { return all() & ~bit(identity_); }

  /// The subgroup generated by the given elements.
  Mask generated(Mask gens) const {
    Mask sub = bit(identity_) | gens;
    for (bool grew = true; grew;) {
      grew = false;
      for_each_element(sub, [&](int g) {
        for_each_element(gens, [&](int h) {
          const int p = mul(g, h);
          if (!has_element(sub, p)) {
            sub |= bit(p);
            grew = true;
          }
        });
      });
    }
    return sub;
  }

  /// {g x g^-1 : x in s}
  Mask conjugate(Mask s, int g) const {
    Mask out = 0;
    for_each_element(s, [&](int x) { out |= bit(mul(mul(g, x), inv(g))); });
    return out;
  }

  bool is_abelian() const {
    for (int g = 0; g < order(); ++g) {
      for (int h = 0; h < order(); ++h) {
        if (mul(g, h) != mul(h, g)) return false;
      }
    }
    return true;
  }

  bool operator==(const FinGroup& o) const { return names_ == o.names_ && table_ == o.table_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

namespace detail {

inline FinGroup group_from_rule(std::vector<std::string> names, const std::function<int(int, int)>& rule) {
  const int k = static_cast<int>(names.size());
  std::vector<std::vector<int>> table(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
  for (int g = 0; g < k; ++g) {
    for (int h = 0; h < k; ++h) table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = rule(g, h);
  }
  return FinGroup(std::move(names), std::move(table));
}

}  // namespace detail

inline FinGroup cyclic_group(int m) {
  if (m < 1 || m > kMaxElements) throw PreconditionError("cyclic group order must be between 1 and 64");
  std::vector<std::string> names;
  for (int g = 0; g < m; ++g) names.push_back(std::to_string(g));
  return detail::group_from_rule(std::move(names), [m](int g, int h) { return (g + h) % m; });
}

/// Z_p^j with element index = base-p digits, first coordinate most significant.
inline FinGroup elementary_abelian_group(int p, int j) {
  int k = 1;
  for (int i = 0; i < j; ++i) {
    k *= p;
    if (k > kMaxElements) throw PreconditionError("group order exceeds 64");
  }
  if (p < 2 || j < 1) throw PreconditionError("Z_p^j needs p >= 2 and j >= 1");
  auto digits = [=](int g) {
    std::vector<int> d(static_cast<std::size_t>(j));
    for (int i = j - 1; i >= 0; --i, g /= p) d[static_cast<std::size_t>(i)] = g % p;
    return d;
  };
  std::vector<std::string> names;
  for (int g = 0; g < k; ++g) {
    std::string s = "(";
    for (int d : digits(g)) s += (s.size() > 1 ? "," : "") + std::to_string(d);
    names.push_back(s + ")");
  }
  return detail::group_from_rule(std::move(names), [=](int g, int h) {
    const auto a = digits(g);
    const auto b = digits(h);
    int out = 0;
    for (int i = 0; i < j; ++i) out = out * p + (a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]) % p;
    return out;
  });
}

/// Dihedral group of order 2m: index a + m*f stands for r^a s^f, with s r = r^-1 s.
inline FinGroup dihedral_group(int m) {
  if (m < 2 || 2 * m > kMaxElements) throw PreconditionError("dihedral group needs 2 <= m <= 32");
  std::vector<std::string> names;
  for (int f = 0; f < 2; ++f) {
    for (int a = 0; a < m; ++a) {
      std::string s = a == 0 ? "" : (a == 1 ? "r" : "r" + std::to_string(a));
      if (f == 1) s += "s";
      names.push_back(s.empty() ? "e" : s);
    }
  }
  return detail::group_from_rule(std::move(names), [m](int g, int h) {
    const int a = g % m, f = g / m, b = h % m, k = h / m;
    // r^a s^f r^b s^k = r^(a + (-1)^f b) s^(f+k)
    const int rot = ((a + (f == 0 ? b : -b)) % m + m) % m;
    return rot + m * ((f + k) % 2);
  });
}

/// Permutations of {1,2,3} in one-line notation, (g·h)(x) = g(h(x)).
inline FinGroup symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back(std::to_string(q[0] + 1) + std::to_string(q[1] + 1) + std::to_string(q[2] + 1));
  return detail::group_from_rule(std::move(names), [&](int g, int h) {
    std::array<int, 3> c{};
    for (int x = 0; x < 3; ++x) c[static_cast<std::size_t>(x)] = perms[static_cast<std::size_t>(g)][static_cast<std::size_t>(perms[static_cast<std::size_t>(h)][static_cast<std::size_t>(x)])];
    return static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
  });
}

inline FinGroup quaternion_group() {
  // Index 2u + sign for u in {1, i, j, k}.
  static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const char* base[4] = {"1", "i", "j", "k"};
  std::vector<std::string> names;
  for (int u = 0; u < 4; ++u) {
    names.push_back(base[u]);
    names.push_back(std::string("-") + base[u]);
  }
  return detail::group_from_rule(std::move(names), [](int g, int h) {
    const int u = g / 2, v = h / 2;
    return 2 * unit[u][v] + ((g % 2) ^ (h % 2) ^ sign[u][v]);
  });
}

/// Builtin names: z<m>, z<p>^<j>, d<m> (order 2m), s3, q8.
inline FinGroup builtin_group(const std::string& spec) {
  std::smatch m;
  if (std::regex_match(spec, m, std::regex(R"(z(\d+))"))) return cyclic_group(std::stoi(m[1]));
  if (std::regex_match(spec, m, std::regex(R"(z(\d+)\^(\d+))"))) return elementary_abelian_group(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(spec, m, std::regex(R"(d(\d+))"))) return dihedral_group(std::stoi(m[1]));
  if (spec == "s3") return symmetric_group_3();
  if (spec == "q8") return quaternion_group();
  throw PreconditionError("unknown builtin group '" + spec + "' (expected z<m>, z<p>^<j>, d<m>, s3 or q8)");
}

/// Every subgroup, as masks in canonical order. Joins of cyclic subgroups
/// reach all of them.
inline std::vector<Mask> subgroups(const FinGroup& g) {
  std::set<Mask> found;
  for (int x = 0; x < g.order(); ++x) found.insert(g.generated(bit(x)));
  std::vector<Mask> frontier(found.begin(), found.end());
  const std::vector<Mask> cyclic = frontier;
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask s : frontier) {
      for (Mask c : cyclic) {
        if (is_subset(c, s)) continue;
        const Mask j = g.generated(s | c);
        if (found.insert(j).second) next.push_back(j);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Mask> out(found.begin(), found.end());
  canonicalize(out);
  return out;
}

/// Parts are masks of non-identity elements; each part plus the identity is a subgroup.
using GroupPartition = std::vector<Mask>;

/// All partitions with at least two parts, by exact cover of the non-identity
/// elements with the sets H - {identity}, H a nontrivial proper subgroup.
/// Parts within a partition are in canonical order.
inline std::vector<GroupPartition> group_partitions(const FinGroup& g) {
  std::vector<Mask> pieces;
  for (Mask h : subgroups(g)) {
    if (h != bit(g.identity()) && h != g.all()) pieces.push_back(h & ~bit(g.identity()));
  }
  std::vector<GroupPartition> out;
  GroupPartition current;
  std::function<void(Mask)> cover = [&](Mask left) {
    if (left == 0) {
      if (current.size() >= 2) {
        GroupPartition p = current;
        canonicalize(p);
        out.push_back(std::move(p));
      }
      return;
    }
    const int e = lowest_element(left);
    for (Mask piece : pieces) {
      if (has_element(piece, e) && is_subset(piece, left)) {
        current.push_back(piece);
        cover(left & ~piece);
        current.pop_back();
      }
    }
  };
  cover(g.nonidentity());
  std::sort(out.begin(), out.end());
  return out;
}

/// Every part of `fine` lies inside a part of `coarse`.
inline bool refines(const GroupPartition& fine, const GroupPartition& coarse) {
  for (Mask a : fine) {
    if (std::none_of(coarse.begin(), coarse.end(), [&](Mask b) { return is_subset(a, b); })) return false;
  }
  return true;
}

inline bool is_conjugation_closed(const FinGroup& g, const GroupPartition& p) {
  for (Mask a : p) {
    for (int x = 0; x < g.order(); ++x) {
      if (std::find(p.begin(), p.end(), g.conjugate(a, x)) == p.end()) return false;
    }
  }
  return true;
}

/// The partition refining every nontrivial partition, or nullopt if the group
/// has none. Throws if no partition refines all others or the result is not
/// closed under conjugation; either would contradict the theory.
inline std::optional<GroupPartition> primitive_partition(const FinGroup& g) {
  const std::vector<GroupPartition> all = group_partitions(g);
  if (all.empty()) return std::nullopt;
  for (const GroupPartition& p : all) {
    if (std::all_of(all.begin(), all.end(), [&](const GroupPartition& q) { return refines(p, q); })) {
      if (!is_conjugation_closed(g, p)) throw std::logic_error("primitive partition is not closed under conjugation");
      return p;
    }
  }
  throw std::logic_error("no nontrivial partition refines all the others");
}

}  // namespace matlift
