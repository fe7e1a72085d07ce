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

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "matlift/errors.hpp"
#include "matlift/subset.hpp"

namespace matlift {

/// Outcome of checking a family against the circuit axioms. On failure the
/// offending sets are kept so callers can print a witness.
struct CircuitReport {
  enum class Kind { ok, out_of_range, empty_member, not_antichain, elimination };

  Kind kind = Kind::ok;
  Mask first = 0;
  Mask second = 0;
  int element = -1;

  bool ok() const { return kind == Kind::ok; }

  std::string describe() const {
    switch (kind) {
      case Kind::ok:
        return "ok";
      case Kind::out_of_range:
        return "member " + format_set(first) + " leaves the ground set";
      case Kind::empty_member:
        return "empty set listed as a circuit";
      case Kind::not_antichain:
        return "circuit " + format_set(first) + " is contained in circuit " + format_set(second);
      case Kind::elimination:
        return "elimination fails for " + format_set(first) + ", " + format_set(second) +
               " at element " + std::to_string(element + 1);
    }
    return "unknown";
  }
};

namespace detail {

// Per-element incidence lists, used by greedy rank and dependence tests.
inline std::vector<std::vector<Mask>> incidence(int n, std::span<const Mask> circuits) {
  std::vector<std::vector<Mask>> by_element(static_cast<std::size_t>(n));
  for (Mask c : circuits) {
    for_each_element(c, [&](int e) { by_element[static_cast<std::size_t>(e)].push_back(c); });
  }
  return by_element;
}

// Greedy extension in ascending element order; returns the independent set found.
inline Mask greedy_basis(Mask x, const std::vector<std::vector<Mask>>& by_element) {
  Mask basis = 0;
  for_each_element(x, [&](int e) {
    const Mask candidate = basis | bit(e);
    for (Mask c : by_element[static_cast<std::size_t>(e)]) {
      if (is_subset(c, candidate)) return;
    }
    basis = candidate;
  });
  return basis;
}

inline bool contains_member(Mask x, const std::vector<std::vector<Mask>>& by_element) {
  return greedy_basis(x, by_element) != x;
}

// Independence and rank of every subset of [n] for the independence system
// whose minimal dependent sets are `circuits`.
inline std::vector<std::uint8_t> rank_table(int n, std::span<const Mask> circuits) {
  const std::size_t size = std::size_t{1} << n;
  std::unordered_set<Mask> members(circuits.begin(), circuits.end());
  std::vector<std::uint8_t> independent(size, 0);
  std::vector<std::uint8_t> rank(size, 0);
  independent[0] = 1;
  for (std::size_t x = 1; x < size; ++x) {
    const Mask m = static_cast<Mask>(x);
    bool all_parts_independent = true;
    std::uint8_t best = 0;
    for_each_element(m, [&](int e) {
      const std::size_t sub = static_cast<std::size_t>(m & ~bit(e));
      all_parts_independent = all_parts_independent && independent[sub] != 0;
      best = std::max(best, rank[sub]);
    });
    if (all_parts_independent && members.count(m) == 0) {
      independent[x] = 1;
      rank[x] = static_cast<std::uint8_t>(popcount(m));
    } else {
      rank[x] = best;
    }
  }
  return rank;
}

inline bool locally_submodular(int n, const std::vector<std::uint8_t>& rank) {
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t x = 0; x < size; ++x) {
    const Mask m = static_cast<Mask>(x);
    const Mask outside = full_mask(n) & ~m;
    const int r = rank[x];
    for (Mask a = outside; a != 0; a &= a - 1) {
      const Mask ea = a & (~a + 1);
      const int ra = rank[static_cast<std::size_t>(m | ea)];
      for (Mask b = a & (a - 1); b != 0; b &= b - 1) {
        const Mask eb = b & (~b + 1);
        if (ra + rank[static_cast<std::size_t>(m | eb)] < r + rank[static_cast<std::size_t>(m | ea | eb)]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline CircuitReport find_elimination_failure(std::span<const Mask> family,
                                              const std::vector<std::vector<Mask>>& by_element,
                                              const std::unordered_set<Mask>& members) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const Mask common = family[i] & family[j];
      if (common == 0) continue;
      const Mask uni = family[i] | family[j];
      for (Mask rest = common; rest != 0; rest &= rest - 1) {
        const int e = lowest_element(rest);
        const Mask target = uni & ~bit(e);
        if (members.count(target) != 0) continue;
        bool found = false;
        for (Mask t = target; t != 0 && !found; t &= t - 1) {
          found = members.count(target & ~(t & (~t + 1))) != 0;
        }
        if (found || contains_member(target, by_element)) continue;
        return CircuitReport{CircuitReport::Kind::elimination, family[i], family[j], e};
      }
    }
  }
  return CircuitReport{};
}

}  // namespace detail

/// Checks the circuit axioms: nonempty members inside the ground set, no member
/// containing another, and strong enough elimination (for distinct C1, C2 and
/// e in both, some member lies inside (C1 u C2) - e).
inline CircuitReport validate_circuits(std::span<const Mask> family, GroundSet ground) {
  std::vector<Mask> sorted(family.begin(), family.end());
  canonicalize(sorted);
  for (Mask c : sorted) {
    if (!ground.contains(c)) return CircuitReport{CircuitReport::Kind::out_of_range, c, 0, -1};
    if (c == 0) return CircuitReport{CircuitReport::Kind::empty_member, 0, 0, -1};
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (is_subset(sorted[i], sorted[j])) {
        return CircuitReport{CircuitReport::Kind::not_antichain, sorted[i], sorted[j], -1};
      }
    }
  }
  const auto by_element = detail::incidence(ground.size, sorted);
  const std::unordered_set<Mask> members(sorted.begin(), sorted.end());
  // A family is a circuit family iff the independence system it defines has a
  // submodular rank function; for small ground sets that test is cheaper than
  // elimination over all pairs. The direct search still supplies the witness.
  const bool table_route = ground.size <= 16 || (ground.size <= 20 && sorted.size() > 1500);
  if (table_route) {
    const auto rank = detail::rank_table(ground.size, sorted);
    if (detail::locally_submodular(ground.size, rank)) return CircuitReport{};
  }
  return detail::find_elimination_failure(sorted, by_element, members);
}

/// A matroid given by its circuits, with a memoized rank oracle.
///
/// Values are immutable after construction and cheap to copy; copies share
/// the circuit data and the rank cache. The cache is safe for concurrent use.
class Matroid {
 public:
  enum class Check { validate, trust };

  Matroid() : s_(std::make_shared<State>(0, std::vector<Mask>{})) {}

  /// Builds a matroid from a circuit family. The family is canonicalized and
  /// deduplicated; with Check::validate an AxiomError names the violation.
  static Matroid from_circuits(int n, std::vector<Mask> circuits, Check check = Check::validate) {
    const GroundSet ground = GroundSet::checked(n);
    canonicalize(circuits);
    if (check == Check::validate) {
      const CircuitReport report = validate_circuits(circuits, ground);
      if (!report.ok()) throw AxiomError("not a circuit family: " + report.describe());
    }
    return Matroid(std::make_shared<State>(n, std::move(circuits)));
  }

  /// Materializes the circuits of the matroid with the given rank function:
  /// subsets are visited in size order up to r(E)+1 and the minimal dependent
  /// ones are kept.
  static Matroid from_rank(int n, const std::function<int(Mask)>& rank, Check check = Check::validate) {
    const GroundSet ground = GroundSet::checked(n);
    const int total = rank(ground.all());
    std::vector<Mask> found;
    for (int k = 1; k <= std::min(n, total + 1); ++k) {
      const std::size_t smaller = found.size();
      for_each_subset_of_size(n, k, [&](Mask s) {
        for (std::size_t i = 0; i < smaller; ++i) {
          if (is_subset(found[i], s)) return;
        }
        if (rank(s) < k) found.push_back(s);
      });
    }
    return from_circuits(n, std::move(found), check);
  }

  static Matroid uniform(int r, int n) {
    if (r < 0 || r > n) throw PreconditionError("uniform matroid needs 0 <= r <= n");
    std::vector<Mask> circuits;
    if (r < n) for_each_subset_of_size(n, r + 1, [&](Mask s) { circuits.push_back(s); });
    return from_circuits(n, std::move(circuits), Check::trust);
  }

  static Matroid free(int n) { return uniform(n, n); }

  int size() const { return s_->n; }
  GroundSet ground() const { return GroundSet{s_->n}; }
  Mask ground_mask() const { return full_mask(s_->n); }

  /// Circuits in canonical order (cardinality, then numeric value).
  std::span<const Mask> circuits() const { return s_->circuits; }

  std::optional<std::size_t> circuit_index(Mask c) const {
    const auto it = s_->index.find(c);
    if (it == s_->index.end()) return std::nullopt;
    return it->second;
  }

  bool is_circuit(Mask c) const { return s_->index.count(c) != 0; }

  bool is_independent(Mask x) const { return !detail::contains_member(x, s_->by_element); }

  int rank(Mask x) const {
    const State& s = *s_;
    if (s.n <= kTableLimit) {
      std::call_once(s.table_once, [&s] { s.table = detail::rank_table(s.n, s.circuits); });
      return s.table[static_cast<std::size_t>(x)];
    }
    {
      std::shared_lock lock(s.memo_mutex);
      const auto it = s.memo.find(x);
      if (it != s.memo.end()) return it->second;
    }
    const int r = popcount(detail::greedy_basis(x, s.by_element));
    std::unique_lock lock(s.memo_mutex);
    if (s.memo.size() < kMemoLimit) s.memo.emplace(x, r);
    return r;
  }

  int rank() const { return rank(ground_mask()); }

  /// Rank by greedy extension, bypassing every cache.
  int greedy_rank(Mask x) const { return popcount(detail::greedy_basis(x, s_->by_element)); }

  Mask closure(Mask x) const {
    const int r = rank(x);
    Mask out = x;
    for_each_element(ground_mask() & ~x, [&](int e) {
      if (rank(x | bit(e)) == r) out |= bit(e);
    });
    return out;
  }

  bool is_flat(Mask x) const { return closure(x) == x; }

  Mask loops() const {
    Mask out = 0;
    for (Mask c : s_->circuits) {
      if (popcount(c) != 1) break;
      out |= c;
    }
    return out;
  }

  /// The circuits of M|X, in canonical order.
  std::vector<Mask> circuits_within(Mask x) const {
    std::vector<Mask> out;
    for (Mask c : s_->circuits) {
      if (is_subset(c, x)) out.push_back(c);
    }
    return out;
  }

  /// Indices (into circuits()) of the circuits contained in x.
  std::vector<std::size_t> circuit_indices_within(Mask x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s_->circuits.size(); ++i) {
      if (is_subset(s_->circuits[i], x)) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.s_->n == b.s_->n && a.s_->circuits == b.s_->circuits;
  }

 private:
  static constexpr int kTableLimit = 16;
  static constexpr std::size_t kMemoLimit = std::size_t{1} << 20;

  struct State {
    State(int size, std::vector<Mask> family)
        : n(size), circuits(std::move(family)), by_element(detail::incidence(size, circuits)) {
      index.reserve(circuits.size());
      for (std::size_t i = 0; i < circuits.size(); ++i) index.emplace(circuits[i], i);
    }

    int n;
    std::vector<Mask> circuits;
    std::vector<std::vector<Mask>> by_element;
    std::unordered_map<Mask, std::size_t> index;

    mutable std::once_flag table_once;
    mutable std::vector<std::uint8_t> table;
    mutable std::shared_mutex memo_mutex;
    mutable std::unordered_map<Mask, int> memo;
  };

  explicit Matroid(std::shared_ptr<const State> s) : s_(std::move(s)) {}

  std::shared_ptr<const State> s_;
};

}  // namespace matlift
