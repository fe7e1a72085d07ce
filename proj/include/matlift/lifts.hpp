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
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "matlift/matroid.hpp"
#include "matlift/predicates.hpp"

namespace matlift {

/// A matroid N whose elements are the circuits of a base matroid, indexed in
/// the base's canonical circuit order.
///
/// Base matroids on a handful of elements can have far more than 64
/// circuits, so N is held as a rank oracle on index lists. When N came from
/// a circuit family (at most 64 circuits) that Matroid is kept as well.
class Overlay {
 public:
  using RankFn = std::function<int(std::span<const std::size_t>)>;

  Overlay(std::size_t size, RankFn rank, std::string kind, std::optional<Matroid> concrete = std::nullopt)
      : size_(size), rank_(std::move(rank)), kind_(std::move(kind)), concrete_(std::move(concrete)) {}

  static Overlay from_matroid(const Matroid& n) {
    return Overlay(
        static_cast<std::size_t>(n.size()),
        [n](std::span<const std::size_t> s) {
          Mask x = 0;
          for (std::size_t i : s) x |= bit(static_cast<int>(i));
          return n.rank(x);
        },
        "matroid", n);
  }

  static Overlay all_loops(std::size_t m) {
    return Overlay(m, [](std::span<const std::size_t>) { return 0; }, "all loops");
  }

  static Overlay uniform(int k, std::size_t m) {
    return Overlay(
        m,
        [k](std::span<const std::size_t> s) {
          const std::set<std::size_t> distinct(s.begin(), s.end());
          return std::min<int>(k, static_cast<int>(distinct.size()));
        },
        "uniform rank " + std::to_string(k));
  }

  /// Rank 1 with the listed loops; every other element is parallel to every
  /// other non-loop.
  static Overlay rank_one(std::size_t m, std::vector<bool> loops) {
    return Overlay(
        m,
        [loops = std::move(loops)](std::span<const std::size_t> s) {
          for (std::size_t i : s) {
            if (!loops[i]) return 1;
          }
          return 0;
        },
        "rank one");
  }

  std::size_t size() const { return size_; }
  const std::string& kind() const { return kind_; }
  const std::optional<Matroid>& matroid() const { return concrete_; }

  int rank(std::span<const std::size_t> s) const { return rank_(s); }

  int rank() const {
    std::vector<std::size_t> all(size_);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return rank_(all);
  }

  /// Is element c in cl_N(s)?
  bool spans(std::span<const std::size_t> s, std::size_t c) const {
    std::vector<std::size_t> with(s.begin(), s.end());
    with.push_back(c);
    return rank_(with) == rank_(s);
  }

 private:
  std::size_t size_;
  RankFn rank_;
  std::string kind_;
  std::optional<Matroid> concrete_;
};

/// A base matroid M together with a matroid N on its circuits.
struct LiftSpec {
  LiftSpec(Matroid base_matroid, Overlay overlay_matroid)
      : base(std::move(base_matroid)), overlay(std::move(overlay_matroid)) {
    if (overlay.size() != base.circuits().size()) {
      throw PreconditionError("overlay has " + std::to_string(overlay.size()) + " elements but the base has " +
                              std::to_string(base.circuits().size()) + " circuits");
    }
  }

  Matroid base;
  Overlay overlay;
};

/// |C1 u C2| - r(C1 u C2) = 2.
inline bool is_modular_pair(const Matroid& m, Mask c1, Mask c2) {
  const Mask u = c1 | c2;
  return c1 != c2 && popcount(u) - m.rank(u) == 2;
}

/// No member inside the union of the others, and nullity of the union equal
/// to the number of members.
inline bool is_perfect(const Matroid& m, std::span<const Mask> collection) {
  Mask u = 0;
  for (Mask c : collection) u |= c;
  if (popcount(u) - m.rank(u) != static_cast<int>(collection.size())) return false;
  for (std::size_t i = 0; i < collection.size(); ++i) {
    Mask others = 0;
    for (std::size_t j = 0; j < collection.size(); ++j) {
      if (j != i) others |= collection[j];
    }
    if (is_subset(collection[i], others)) return false;
  }
  return true;
}

/// A modular pair of members together with a circuit in their union that is
/// missing from the class.
struct LinearClassViolation {
  std::size_t first;
  std::size_t second;
  std::size_t missing;
};

inline std::optional<LinearClassViolation> linear_class_violation(const Matroid& m,
                                                                  std::span<const std::size_t> members) {
  const auto circuits = m.circuits();
  std::vector<bool> in(circuits.size(), false);
  for (std::size_t i : members) {
    if (i >= circuits.size()) throw PreconditionError("circuit index out of range");
    in[i] = true;
  }
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const Mask c1 = circuits[members[a]];
      const Mask c2 = circuits[members[b]];
      if (!is_modular_pair(m, c1, c2)) continue;
      for (std::size_t k : m.circuit_indices_within(c1 | c2)) {
        if (!in[k]) return LinearClassViolation{members[a], members[b], k};
      }
    }
  }
  return std::nullopt;
}

inline bool is_linear_class(const Matroid& m, std::span<const std::size_t> members) {
  return !linear_class_violation(m, members).has_value();
}

/// The smallest linear class containing the seeds.
inline std::vector<std::size_t> linear_class_closure(const Matroid& m, std::vector<std::size_t> seeds) {
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  while (auto v = linear_class_violation(m, seeds)) {
    seeds.insert(std::lower_bound(seeds.begin(), seeds.end(), v->missing), v->missing);
  }
  return seeds;
}

/// The elementary lift defined by a linear class: r(X) = r_M(X) when every
/// circuit of M|X is in the class, r_M(X) + 1 otherwise.
inline Matroid elementary_lift(const Matroid& m, std::span<const std::size_t> linear_class) {
  if (auto v = linear_class_violation(m, linear_class)) {
    throw PreconditionError("not a linear class: circuit " + format_set(m.circuits()[v->missing]) +
                            " lies in the modular pair " + format_set(m.circuits()[v->first]) + ", " +
                            format_set(m.circuits()[v->second]));
  }
  std::vector<bool> in(m.circuits().size(), false);
  for (std::size_t i : linear_class) in[i] = true;
  const auto circuits = m.circuits();
  return Matroid::from_rank(m.size(), [&](Mask x) {
    for (std::size_t i = 0; i < circuits.size(); ++i) {
      if (!in[i] && is_subset(circuits[i], x)) return m.rank(x) + 1;
    }
    return m.rank(x);
  });
}

/// Result of checking (*) or (*'). On failure, `collection` is the perfect
/// collection (a modular pair for (*')) and `circuit` the circuit in its
/// union that N does not span from it.
struct StarCheck {
  bool holds = true;
  std::vector<std::size_t> collection;
  std::size_t circuit = 0;
};

/// For every modular pair {C1, C2} of M, each circuit inside C1 u C2 lies in
/// cl_N({C1, C2}).
inline StarCheck check_star_prime(const LiftSpec& spec) {
  const Matroid& m = spec.base;
  const auto circuits = m.circuits();
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    for (std::size_t j = i + 1; j < circuits.size(); ++j) {
      if (!is_modular_pair(m, circuits[i], circuits[j])) continue;
      const std::size_t pair[] = {i, j};
      for (std::size_t k : m.circuit_indices_within(circuits[i] | circuits[j])) {
        if (k == i || k == j) continue;
        if (!spec.overlay.spans(pair, k)) return StarCheck{false, {i, j}, k};
      }
    }
  }
  return {};
}

/// For every perfect collection C' of M, each circuit inside the union of C'
/// lies in cl_N(C'). Perfect collections are closed under taking subsets, so
/// they are enumerated by extending perfect collections one circuit at a
/// time in increasing index order; their size is bounded by the nullity of M.
inline StarCheck check_star(const LiftSpec& spec) {
  const Matroid& m = spec.base;
  const auto circuits = m.circuits();
  StarCheck result;
  std::vector<std::size_t> current;
  std::vector<Mask> members;
  std::function<bool(std::size_t, Mask)> extend = [&](std::size_t start, Mask u) -> bool {
    for (std::size_t k = start; k < circuits.size(); ++k) {
      members.push_back(circuits[k]);
      current.push_back(k);
      const Mask nu = u | circuits[k];
      if (is_perfect(m, members)) {
        for (std::size_t c : m.circuit_indices_within(nu)) {
          if (std::find(current.begin(), current.end(), c) != current.end()) continue;
          if (!spec.overlay.spans(current, c)) {
            result = StarCheck{false, current, c};
            return false;
          }
        }
        if (!extend(k + 1, nu)) return false;
      }
      members.pop_back();
      current.pop_back();
    }
    return true;
  };
  extend(0, 0);
  return result;
}

/// r(X) = r_M(X) + r_N({C : C a circuit of M|X}).
inline int lift_rank(const LiftSpec& spec, Mask x) {
  const std::vector<std::size_t> inside = spec.base.circuit_indices_within(x);
  return spec.base.rank(x) + spec.overlay.rank(inside);
}

/// The lift M^N, materialized as a circuit family and validated. Specs
/// failing (*') are refused; see diagnose_lift for evaluating them anyway.
inline Matroid build_lift(const LiftSpec& spec) {
  const StarCheck check = check_star_prime(spec);
  if (!check.holds) {
    const auto c = spec.base.circuits();
    throw PreconditionError("condition (*') fails: circuit " + format_set(c[check.circuit]) +
                            " is not spanned by the modular pair " + format_set(c[check.collection[0]]) + ", " +
                            format_set(c[check.collection[1]]));
  }
  return Matroid::from_rank(spec.base.size(), [&](Mask x) { return lift_rank(spec, x); });
}

struct LiftDiagnostic {
  AxiomReport axioms;
  std::optional<Matroid> lift;
};

/// Evaluates the lift rank formula without checking (*'), reports the first
/// rank-axiom violation, and materializes the matroid when there is none.
inline LiftDiagnostic diagnose_lift(const LiftSpec& spec) {
  auto rank = [&](Mask x) { return lift_rank(spec, x); };
  LiftDiagnostic out{check_rank_axioms(spec.base.size(), rank), std::nullopt};
  if (out.axioms.ok) out.lift = Matroid::from_rank(spec.base.size(), rank);
  return out;
}

/// Builds N of rank one whose loops are exactly the class and compares M^N
/// with the elementary lift on every subset.
inline bool lift_agrees_with_elementary(const Matroid& m, std::span<const std::size_t> linear_class) {
  std::vector<bool> loops(m.circuits().size(), false);
  for (std::size_t i : linear_class) loops[i] = true;
  const LiftSpec spec(m, Overlay::rank_one(loops.size(), loops));
  const Matroid general = build_lift(spec);
  const Matroid elementary = elementary_lift(m, linear_class);
  for (Mask x = 0;; ++x) {
    if (general.rank(x) != elementary.rank(x)) return false;
    if (x == m.ground_mask()) break;
  }
  return true;
}

}  // namespace matlift
