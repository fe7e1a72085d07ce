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
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "matlift/matroid.hpp"
#include "matlift/minors.hpp"

namespace matlift {

/// All flats, in canonical order, generated from cl(empty) by covering steps.
inline std::vector<Mask> flats(const Matroid& m) {
  std::set<Mask> seen{m.closure(0)};
  std::vector<Mask> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask f : frontier) {
      Mask pending = m.ground_mask() & ~f;
      while (pending != 0) {
        const Mask g = m.closure(f | (pending & (~pending + 1)));
        pending &= ~g;
        if (seen.insert(g).second) next.push_back(g);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Mask> out(seen.begin(), seen.end());
  canonicalize(out);
  return out;
}

/// True iff every flat of q is a flat of l, i.e. l is a lift of q.
inline bool is_quotient(const Matroid& q, const Matroid& l) {
  if (q.size() != l.size()) throw PreconditionError("quotient test needs a common ground set");
  for (Mask f : flats(q)) {
    if (!l.is_flat(f)) return false;
  }
  return true;
}

inline std::vector<Mask> circuit_hyperplanes(const Matroid& m) {
  std::vector<Mask> out;
  const int r = m.rank();
  for (Mask c : m.circuits()) {
    if (popcount(c) == r && is_circuit_hyperplane(m, c)) out.push_back(c);
  }
  return out;
}

/// Every r-subset is a basis or a circuit-hyperplane.
inline bool is_sparse_paving(const Matroid& m) {
  const int r = m.rank();
  bool ok = true;
  for_each_subset_of_size(m.size(), r, [&](Mask s) {
    if (!ok || m.rank(s) == r) return;
    ok = m.rank(s) == r - 1 && m.is_circuit(s) && m.is_flat(s);
  });
  return ok;
}

/// The rank-r sparse paving matroid on n elements with the given
/// circuit-hyperplanes. Two of them meeting in r-1 elements is an AxiomError.
inline Matroid sparse_paving_matroid(int n, int r, std::vector<Mask> hyperplanes) {
  canonicalize(hyperplanes);
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    if (popcount(hyperplanes[i]) != r) {
      throw AxiomError(format_set(hyperplanes[i]) + " does not have " + std::to_string(r) + " elements");
    }
    for (std::size_t j = i + 1; j < hyperplanes.size(); ++j) {
      if (popcount(hyperplanes[i] & hyperplanes[j]) > r - 2) {
        throw AxiomError(format_set(hyperplanes[i]) + " and " + format_set(hyperplanes[j]) +
                         " share " + std::to_string(r - 1) + " elements");
      }
    }
  }
  std::vector<Mask> circuits = hyperplanes;
  for_each_subset_of_size(n, r + 1, [&](Mask s) {
    for (Mask h : hyperplanes) {
      if (is_subset(h, s)) return;
    }
    circuits.push_back(s);
  });
  return Matroid::from_circuits(n, std::move(circuits));
}

/// A candidate hyperplane family with the rank its matroid should have.
struct HyperplaneFamily {
  std::vector<Mask> hyperplanes;
  int claimed_rank = 0;
};

struct HyperplaneReport {
  enum class Kind { ok, out_of_range, not_proper, not_antichain, exchange };

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
      case Kind::not_proper:
        return "the whole ground set is listed as a hyperplane";
      case Kind::not_antichain:
        return "hyperplane " + format_set(first) + " is contained in " + format_set(second);
      case Kind::exchange:
        return "no member contains " + format_set(first & second) + " together with element " +
               std::to_string(element + 1) + " (from " + format_set(first) + ", " + format_set(second) + ")";
    }
    return "unknown";
  }
};

/// Hyperplane axioms: a proper antichain such that for distinct H1, H2 and
/// e outside H1 u H2 some member contains (H1 n H2) + e.
inline HyperplaneReport validate_hyperplanes(const HyperplaneFamily& family, GroundSet ground) {
  std::vector<Mask> hs = family.hyperplanes;
  canonicalize(hs);
  for (Mask h : hs) {
    if (!ground.contains(h)) return {HyperplaneReport::Kind::out_of_range, h, 0, -1};
    if (h == ground.all()) return {HyperplaneReport::Kind::not_proper, h, 0, -1};
  }
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      if (is_subset(hs[i], hs[j])) return {HyperplaneReport::Kind::not_antichain, hs[i], hs[j], -1};
    }
  }
  // For a fixed intersection I, the elements that can be added are exactly
  // the union of the members containing I.
  std::unordered_map<Mask, Mask> reach;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const Mask common = hs[i] & hs[j];
      auto it = reach.find(common);
      if (it == reach.end()) {
        Mask covered = 0;
        for (Mask h : hs) {
          if (is_subset(common, h)) covered |= h;
        }
        it = reach.emplace(common, covered).first;
      }
      const Mask missing = ground.all() & ~(hs[i] | hs[j]) & ~it->second;
      if (missing != 0) {
        return {HyperplaneReport::Kind::exchange, hs[i], hs[j], lowest_element(missing)};
      }
    }
  }
  return {};
}

inline HyperplaneFamily hyperplanes_of(const Matroid& m) {
  HyperplaneFamily out{{}, m.rank()};
  for (Mask f : flats(m)) {
    if (m.rank(f) == out.claimed_rank - 1) out.hyperplanes.push_back(f);
  }
  return out;
}

/// Builds the matroid with the given hyperplanes. The complements are the
/// cocircuits; they are validated as the circuits of the dual, and ranks are
/// recovered through r(X) = r*(E - X) - |E - X| + r(E).
inline Matroid matroid_from_hyperplanes(const HyperplaneFamily& family, GroundSet ground) {
  const HyperplaneReport report = validate_hyperplanes(family, ground);
  if (!report.ok()) throw AxiomError("not a hyperplane family: " + report.describe());
  const Mask all = ground.all();
  std::vector<Mask> cocircuits;
  cocircuits.reserve(family.hyperplanes.size());
  for (Mask h : family.hyperplanes) cocircuits.push_back(all & ~h);
  const CircuitReport dual_report = validate_circuits(cocircuits, ground);
  if (!dual_report.ok()) throw AxiomError("complements are not a circuit family: " + dual_report.describe());
  const Matroid dual_matroid = Matroid::from_circuits(ground.size, std::move(cocircuits), Matroid::Check::trust);
  const int total = ground.size - dual_matroid.rank();
  if (total != family.claimed_rank) {
    throw AxiomError("hyperplane family has rank " + std::to_string(total) + ", expected " +
                     std::to_string(family.claimed_rank));
  }
  // The dual of a validated matroid is a matroid, so its circuits need no
  // second validation.
  return Matroid::from_rank(
      ground.size,
      [&](Mask x) {
        const Mask rest = all & ~x;
        return dual_matroid.rank(rest) - popcount(rest) + total;
      },
      Matroid::Check::trust);
}

/// Result of checking normalization, unit increase, monotonicity and
/// submodularity of a rank function.
struct AxiomReport {
  bool ok = true;
  std::string failure;
  Mask first = 0;
  Mask second = 0;
};

/// Exhaustive for n <= 16 (local forms, which imply the global ones), plus the
/// direct pairwise submodular inequality for n <= 10; sampled above 16.
template <class RankFn>
AxiomReport check_rank_axioms(int n, RankFn&& rank, std::uint64_t seed = 1) {
  auto fail = [](std::string what, Mask a, Mask b) { return AxiomReport{false, std::move(what), a, b}; };
  if (rank(Mask{0}) != 0) return fail("r(empty) != 0", 0, 0);
  const Mask all = full_mask(n);
  auto local = [&](Mask x, int e, int f) -> std::optional<AxiomReport> {
    const int rx = rank(x);
    const int re = rank(x | bit(e));
    if (re < rx || re > rx + 1) return fail("unit increase fails", x, bit(e));
    if (f < 0) return std::nullopt;
    const int rf = rank(x | bit(f));
    if (re + rf < rx + rank(x | bit(e) | bit(f))) return fail("submodularity fails", x | bit(e), x | bit(f));
    return std::nullopt;
  };
  if (n <= 16) {
    for (Mask x = 0;; ++x) {
      const Mask outside = all & ~x;
      for (Mask a = outside; a != 0; a &= a - 1) {
        const int e = lowest_element(a);
        if (auto r = local(x, e, -1)) return *r;
        for (Mask b = a & (a - 1); b != 0; b &= b - 1) {
          if (auto r = local(x, e, lowest_element(b))) return *r;
        }
      }
      if (x == all) break;
    }
    if (n <= 10) {
      for (Mask x = 0; x <= all; ++x) {
        for (Mask y = x; y <= all; ++y) {
          if (rank(x | y) + rank(x & y) > rank(x) + rank(y)) return fail("submodularity fails", x, y);
          if (is_subset(x, y) && (rank(x) > rank(y) || rank(y) > rank(x) + popcount(y & ~x))) {
            return fail("monotonicity fails", x, y);
          }
        }
      }
    }
    return {};
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int trial = 0; trial < 20000; ++trial) {
    const Mask x = rng() & all;
    const Mask outside = all & ~x;
    if (outside == 0) continue;
    const std::vector<int> out = elements_of(outside);
    const int e = out[static_cast<std::size_t>(pick(rng)) % out.size()];
    const int f = out[static_cast<std::size_t>(pick(rng)) % out.size()];
    if (auto r = local(x, e, f == e ? -1 : f)) return *r;
  }
  return {};
}

inline AxiomReport check_rank_axioms(const Matroid& m) {
  return check_rank_axioms(m.size(), [&](Mask x) { return m.rank(x); });
}

}  // namespace matlift
