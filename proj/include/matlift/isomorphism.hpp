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
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "matlift/matroid.hpp"
#include "matlift/minors.hpp"

namespace matlift {

struct IsoResult {
  enum class Status { isomorphic, not_isomorphic, budget_exceeded };

  Status status = Status::not_isomorphic;
  /// mapping[e] is the image of element e of the first matroid.
  std::vector<int> mapping;
  std::uint64_t nodes = 0;

  bool found() const { return status == Status::isomorphic; }
};

namespace detail {

// Non-spanning circuits (at most r elements) determine a rank-r matroid.
inline std::vector<Mask> small_circuits(const Matroid& m) {
  std::vector<Mask> out;
  const int r = m.rank();
  for (Mask c : m.circuits()) {
    if (popcount(c) <= r) out.push_back(c);
  }
  return out;
}

// Two rounds of colour refinement over the circuit hypergraph, with one
// colour dictionary shared by both matroids so colours are comparable.
inline std::pair<std::vector<int>, std::vector<int>> refine_colors(int n, const std::vector<Mask>& ca,
                                                                   const std::vector<Mask>& cb) {
  std::vector<int> color_a(static_cast<std::size_t>(n), 0);
  std::vector<int> color_b(static_cast<std::size_t>(n), 0);
  for (int round = 0; round < 3; ++round) {
    std::map<std::vector<int>, int> dictionary;
    auto signatures = [&](const std::vector<Mask>& circuits, const std::vector<int>& color) {
      std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
      for (int e = 0; e < n; ++e) sig[static_cast<std::size_t>(e)].push_back(color[static_cast<std::size_t>(e)]);
      std::vector<std::vector<std::vector<int>>> seen(static_cast<std::size_t>(n));
      for (Mask c : circuits) {
        std::vector<int> members;
        for_each_element(c, [&](int f) { members.push_back(color[static_cast<std::size_t>(f)]); });
        std::sort(members.begin(), members.end());
        for_each_element(c, [&](int e) { seen[static_cast<std::size_t>(e)].push_back(members); });
      }
      for (int e = 0; e < n; ++e) {
        auto& s = seen[static_cast<std::size_t>(e)];
        std::sort(s.begin(), s.end());
        auto& out = sig[static_cast<std::size_t>(e)];
        out.push_back(static_cast<int>(s.size()));
        for (const auto& v : s) {
          out.push_back(-1);
          out.insert(out.end(), v.begin(), v.end());
        }
      }
      return sig;
    };
    const auto sa = signatures(ca, color_a);
    const auto sb = signatures(cb, color_b);
    for (const auto& s : sa) dictionary.emplace(s, 0);
    for (const auto& s : sb) dictionary.emplace(s, 0);
    int next = 0;
    for (auto& [key, value] : dictionary) value = next++;
    for (int e = 0; e < n; ++e) {
      color_a[static_cast<std::size_t>(e)] = dictionary.at(sa[static_cast<std::size_t>(e)]);
      color_b[static_cast<std::size_t>(e)] = dictionary.at(sb[static_cast<std::size_t>(e)]);
    }
  }
  return {color_a, color_b};
}

}  // namespace detail

/// Searches for a bijection of ground sets carrying circuits onto circuits.
/// Gives up with Status::budget_exceeded after node_budget assignments.
inline IsoResult find_isomorphism(const Matroid& a, const Matroid& b, std::uint64_t node_budget = 10'000'000) {
  IsoResult result;
  const int n = a.size();
  if (n != b.size() || a.rank() != b.rank() || a.circuits().size() != b.circuits().size()) return result;
  const std::vector<Mask> ca = detail::small_circuits(a);
  const std::vector<Mask> cb = detail::small_circuits(b);
  if (ca.size() != cb.size()) return result;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (popcount(ca[i]) != popcount(cb[i])) return result;
  }
  const auto [color_a, color_b] = detail::refine_colors(n, ca, cb);
  {
    std::vector<int> sorted_a = color_a;
    std::vector<int> sorted_b = color_b;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) return result;
  }

  // Assign rare colours first; ties broken by circuit degree.
  std::vector<int> class_size(static_cast<std::size_t>(2 * n + 1), 0);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (int c : color_a) ++class_size[static_cast<std::size_t>(c)];
  for (Mask c : ca) for_each_element(c, [&](int e) { ++degree[static_cast<std::size_t>(e)]; });
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    const int cx = class_size[static_cast<std::size_t>(color_a[static_cast<std::size_t>(x)])];
    const int cy = class_size[static_cast<std::size_t>(color_a[static_cast<std::size_t>(y)])];
    if (cx != cy) return cx < cy;
    return degree[static_cast<std::size_t>(x)] > degree[static_cast<std::size_t>(y)];
  });
  std::vector<int> position(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  std::vector<std::vector<Mask>> checks(static_cast<std::size_t>(n));
  for (Mask c : ca) {
    int last = 0;
    for_each_element(c, [&](int e) { last = std::max(last, position[static_cast<std::size_t>(e)]); });
    checks[static_cast<std::size_t>(last)].push_back(c);
  }
  const std::unordered_set<Mask> targets(cb.begin(), cb.end());

  std::vector<int> mapping(static_cast<std::size_t>(n), -1);
  Mask used = 0;
  bool exceeded = false;
  auto image = [&](Mask c) {
    Mask out = 0;
    for_each_element(c, [&](int e) { out |= bit(mapping[static_cast<std::size_t>(e)]); });
    return out;
  };
  std::function<bool(int)> extend = [&](int depth) -> bool {
    if (depth == n) return true;
    const int e = order[static_cast<std::size_t>(depth)];
    for (int f = 0; f < n; ++f) {
      if (has_element(used, f) || color_b[static_cast<std::size_t>(f)] != color_a[static_cast<std::size_t>(e)]) continue;
      if (++result.nodes > node_budget) {
        exceeded = true;
        return false;
      }
      mapping[static_cast<std::size_t>(e)] = f;
      used |= bit(f);
      bool consistent = true;
      for (Mask c : checks[static_cast<std::size_t>(depth)]) {
        if (targets.count(image(c)) == 0) {
          consistent = false;
          break;
        }
      }
      if (consistent && extend(depth + 1)) return true;
      used &= ~bit(f);
      mapping[static_cast<std::size_t>(e)] = -1;
      if (exceeded) return false;
    }
    return false;
  };
  if (extend(0)) {
    result.status = IsoResult::Status::isomorphic;
    result.mapping = mapping;
  } else if (exceeded) {
    result.status = IsoResult::Status::budget_exceeded;
  }
  return result;
}

/// Calls visit(contract, remove, minor) for every minor M / C \ D with C
/// independent, D coindependent in M / C, r(minor) = rank and |E(minor)| = size.
/// Masks are in M's numbering. Every minor of that shape arises this way.
/// visit returns false to stop early.
template <class Visit>
void for_each_minor(const Matroid& m, int rank, int size, Visit&& visit) {
  const int k = m.rank() - rank;
  const int d = m.size() - k - size;
  if (k < 0 || d < 0 || rank < 0) return;
  const Mask all = m.ground_mask();
  bool stop = false;
  for_each_subset_of_size(m.size(), k, [&](Mask c) {
    if (stop || m.rank(c) != k) return;
    const Matroid contracted = contraction(m, c, Matroid::Check::trust);
    const Mask keep = all & ~c;
    const Mask local_all = contracted.ground_mask();
    for_each_subset_of_size(contracted.size(), d, [&](Mask local_d) {
      if (stop || contracted.rank(local_all & ~local_d) != rank) return;
      const Matroid result = deletion(contracted, local_d, Matroid::Check::trust);
      if (!visit(c, expand(local_d, keep), result)) stop = true;
    });
  });
}

enum class MinorScope { any, proper };

/// True iff some minor of m (proper, if requested) is isomorphic to t.
/// Throws if an isomorphism test exhausts its node budget.
inline bool has_minor_isomorphic_to(const Matroid& m, const Matroid& t, MinorScope scope = MinorScope::any,
                                    std::uint64_t node_budget = 10'000'000) {
  bool found = false;
  for_each_minor(m, t.rank(), t.size(), [&](Mask c, Mask d, const Matroid& candidate) {
    if (scope == MinorScope::proper && c == 0 && d == 0) return true;
    const IsoResult iso = find_isomorphism(candidate, t, node_budget);
    if (iso.status == IsoResult::Status::budget_exceeded) {
      throw std::runtime_error("isomorphism node budget exceeded during minor search");
    }
    found = iso.found();
    return !found;
  });
  return found;
}

}  // namespace matlift
