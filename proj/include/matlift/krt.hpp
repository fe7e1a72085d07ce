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
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "matlift/isomorphism.hpp"
#include "matlift/lifts.hpp"
#include "matlift/minors.hpp"
#include "matlift/predicates.hpp"

namespace matlift {

/// Parameters of K(r, t): rank r on the ground set [2t + 2].
struct KrtSpec {
  int r;
  int t;

  KrtSpec(int rank, int half) : r(rank), t(half) {
    if (r < 4 || t < 3 || r > 2 * t - 2) {
      throw PreconditionError("K(r,t) needs r >= 4, t >= 3 and r <= 2t-2; got r=" + std::to_string(r) +
                              ", t=" + std::to_string(t));
    }
    if (2 * t + 2 > kMaxElements) throw PreconditionError("K(r,t) ground set exceeds 64 elements");
  }

  int size() const { return 2 * t + 2; }
  bool antichain_regime() const { return r <= 2 * t - 3; }
  bool ingleton_regime() const { return r >= 5 && r <= 2 * t - 3; }

  /// C_i for i in [t], 0-based mask. Labels wrap as ((v - 1) mod 2t) + 1.
  Mask block(int i) const {
    Mask out = 0;
    for (int v = 1 + 2 * (i - 1); v <= (r - 2) + 2 * (i - 1); ++v) out |= bit((v - 1) % (2 * t));
    return out;
  }

  Mask x() const { return bit(2 * t) | bit(2 * t + 1); }

  std::vector<Mask> c_prime() const {
    std::vector<Mask> out;
    for (int i = 1; i <= t; ++i) out.push_back(block(i) | x());
    return out;
  }

  std::vector<Mask> c_double_prime() const {
    std::vector<Mask> out;
    for (int i = 1; i < t; ++i) out.push_back(block(i) | block(i + 1));
    return out;
  }

  std::vector<Mask> circuit_hyperplanes() const {
    std::vector<Mask> out = c_prime();
    for (Mask h : c_double_prime()) out.push_back(h);
    return out;
  }
};

inline Matroid build_krt(const KrtSpec& spec) {
  return sparse_paving_matroid(spec.size(), spec.r, spec.circuit_hyperplanes());
}

/// No two of the defining r-sets meet in r - 1 elements.
inline bool intersection_certificate(const KrtSpec& spec) {
  const std::vector<Mask> hs = spec.circuit_hyperplanes();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      if (popcount(hs[i] & hs[j]) > spec.r - 2) return false;
    }
  }
  return true;
}

/// One rank comparison between K / X and K \ X.
struct PairFact {
  int i;  // 1-based block indices
  int j;
  Mask blocks;
  int nullity_m;  // |C_i u C_j| - r_M(C_i u C_j)
  int rank_m;
  int rank_l;
  bool holds;
};

struct ObstructionReport {
  bool blocks_are_nonloops = true;  // each C_i a circuit of M and independent in L
  std::vector<PairFact> a;
  PairFact b{};
  std::vector<PairFact> c;
  PairFact d{};
  bool fact_a = false;
  bool fact_b = false;
  bool fact_c = false;
  bool fact_d = false;
  // The chain argument: (a) and (c) make consecutive blocks parallel in any N,
  // so C_1 and C_t share a parallel class; (b) and (d) need them independent.
  bool chain_forces_parallel = false;
  bool pair_forces_independent = false;

  bool certificate() const {
    return blocks_are_nonloops && fact_a && fact_b && fact_c && fact_d && chain_forces_parallel &&
           pair_forces_independent;
  }
};

inline ObstructionReport obstruction_report(const KrtSpec& spec) {
  const Matroid k = build_krt(spec);
  const Matroid m = contraction(k, spec.x());
  const Matroid l = deletion(k, spec.x());
  // X is the last two elements, so both minors keep the labels 1..2t.
  ObstructionReport rep;
  for (int i = 1; i <= spec.t; ++i) {
    const Mask c = spec.block(i);
    rep.blocks_are_nonloops = rep.blocks_are_nonloops && m.is_circuit(c) && l.is_independent(c);
  }
  auto fact = [&](int i, int j, int lift_gap) {
    const Mask u = spec.block(i) | spec.block(j);
    PairFact f{i, j, u, popcount(u) - m.rank(u), m.rank(u), l.rank(u), false};
    f.holds = lift_gap == 0 ? is_modular_pair(m, spec.block(i), spec.block(j)) : f.rank_l - f.rank_m == lift_gap;
    return f;
  };
  rep.fact_a = rep.fact_c = true;
  for (int i = 1; i < spec.t; ++i) {
    rep.a.push_back(fact(i, i + 1, 0));
    rep.c.push_back(fact(i, i + 1, 1));
    rep.fact_a = rep.fact_a && rep.a.back().holds;
    rep.fact_c = rep.fact_c && rep.c.back().holds;
  }
  rep.b = fact(1, spec.t, 0);
  rep.d = fact(1, spec.t, 2);
  rep.fact_b = rep.b.holds;
  rep.fact_d = rep.d.holds;

  // In M^N a modular pair's union gains r_N of its circuits, which (*') pins
  // to r_N({C_i, C_j}). A gain of 1 between non-loops means parallel.
  std::vector<int> parent(static_cast<std::size_t>(spec.t + 1));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  for (std::size_t idx = 0; idx < rep.a.size(); ++idx) {
    if (rep.blocks_are_nonloops && rep.a[idx].holds && rep.c[idx].rank_l - rep.c[idx].rank_m == 1) {
      parent[static_cast<std::size_t>(find(rep.a[idx].j))] = find(rep.a[idx].i);
    }
  }
  rep.chain_forces_parallel = find(1) == find(spec.t);
  rep.pair_forces_independent = rep.b.holds && rep.d.rank_l - rep.d.rank_m == 2;
  return rep;
}

struct IngletonValue {
  bool satisfied;
  int lhs;
  int rhs;
};

/// lhs = r(AB) + r(AC) + r(AD) + r(BC) + r(BD),
/// rhs = r(A) + r(B) + r(ABC) + r(ABD) + r(CD); representable matroids have lhs >= rhs.
inline IngletonValue ingleton_inequality(const Matroid& m, Mask a, Mask b, Mask c, Mask d) {
  const int lhs = m.rank(a | b) + m.rank(a | c) + m.rank(a | d) + m.rank(b | c) + m.rank(b | d);
  const int rhs = m.rank(a) + m.rank(b) + m.rank(a | b | c) + m.rank(a | b | d) + m.rank(c | d);
  return {lhs >= rhs, lhs, rhs};
}

/// Disjoint I, P1..P4 with |I| = r - 4, |P_i| = 2, I u P_i u P_j a circuit for
/// {i,j} != {3,4} and I u P3 u P4 a basis.
struct IngletonWitness {
  Mask i;
  std::array<Mask, 4> p;
};

namespace detail {

inline std::optional<std::array<Mask, 4>> find_four_pairs(const std::vector<Mask>& quads) {
  auto in = [&](Mask q) { return std::find(quads.begin(), quads.end(), q) != quads.end(); };
  for (Mask s : quads) {
    const int lo = lowest_element(s);
    for (int other : elements_of(s & ~bit(lo))) {
      const Mask p1 = bit(lo) | bit(other);
      const Mask p2 = s & ~p1;
      std::vector<Mask> partners;
      for (Mask q : quads) {
        if (is_subset(p1, q) && (q & p2) == 0 && in((q & ~p1) | p2)) partners.push_back(q & ~p1);
      }
      for (std::size_t x = 0; x < partners.size(); ++x) {
        for (std::size_t y = x + 1; y < partners.size(); ++y) {
          if ((partners[x] & partners[y]) == 0 && !in(partners[x] | partners[y])) {
            return std::array<Mask, 4>{p1, p2, partners[x], partners[y]};
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// The pair criterion for sparse paving matroids. Returns the witness when M
/// is not Ingleton.
/// The candidate sets I are all (r-4)-subsets when n <= 12; otherwise the
/// (r-4)-subsets of pairwise intersections of circuit-hyperplanes, which
/// covers every I lying in at least two of them.
inline std::optional<IngletonWitness> find_ingleton_violation(const Matroid& m) {
  if (!is_sparse_paving(m)) throw PreconditionError("the Ingleton criterion needs a sparse paving matroid");
  const int r = m.rank();
  if (r < 4 || m.size() < r + 4) return std::nullopt;
  const std::vector<Mask> chs = circuit_hyperplanes(m);
  std::vector<Mask> candidates;
  if (m.size() <= 12) {
    for_each_subset_of_size(m.size(), r - 4, [&](Mask s) { candidates.push_back(s); });
  } else {
    for (std::size_t a = 0; a < chs.size(); ++a) {
      for (std::size_t b = a + 1; b < chs.size(); ++b) {
        const Mask common = chs[a] & chs[b];
        for_each_submask(common, [&](Mask s) {
          if (popcount(s) == r - 4) candidates.push_back(s);
        });
      }
    }
    canonicalize(candidates);
  }
  for (Mask i : candidates) {
    std::vector<Mask> quads;
    for (Mask h : chs) {
      if (is_subset(i, h)) quads.push_back(h & ~i);
    }
    if (quads.size() < 5) continue;
    if (auto p = detail::find_four_pairs(quads)) return IngletonWitness{i, *p};
  }
  return std::nullopt;
}

inline bool is_ingleton_sparse_paving(const Matroid& m) { return !find_ingleton_violation(m).has_value(); }

/// A partition into pairs with exactly five of the six pair unions circuits;
/// P3 u P4 is the one that is not.
inline std::optional<std::array<Mask, 4>> is_vamos_like(const Matroid& m) {
  if (m.size() != 8 || m.rank() != 4) throw PreconditionError("Vamos-like matroids have rank 4 on 8 elements");
  if (!is_sparse_paving(m)) return std::nullopt;
  std::optional<std::array<Mask, 4>> found;
  // Pair partitions: pair the lowest remaining element with each other one.
  std::function<void(Mask, std::vector<Mask>&)> pairs = [&](Mask rest, std::vector<Mask>& chosen) {
    if (found) return;
    if (rest == 0) {
      int circuits = 0;
      std::array<Mask, 2> missing{};
      for (int x = 0; x < 4; ++x) {
        for (int y = x + 1; y < 4; ++y) {
          const Mask u = chosen[static_cast<std::size_t>(x)] | chosen[static_cast<std::size_t>(y)];
          if (m.is_circuit(u)) {
            ++circuits;
          } else {
            missing = {chosen[static_cast<std::size_t>(x)], chosen[static_cast<std::size_t>(y)]};
          }
        }
      }
      if (circuits == 5) {
        std::array<Mask, 4> out{};
        int k = 0;
        for (Mask p : chosen) {
          if (p != missing[0] && p != missing[1]) out[static_cast<std::size_t>(k++)] = p;
        }
        out[2] = missing[0];
        out[3] = missing[1];
        found = out;
      }
      return;
    }
    const int lo = lowest_element(rest);
    for (int other : elements_of(rest & ~bit(lo))) {
      chosen.push_back(bit(lo) | bit(other));
      pairs(rest & ~chosen.back(), chosen);
      chosen.pop_back();
    }
  };
  std::vector<Mask> chosen;
  pairs(m.ground_mask(), chosen);
  return found;
}

/// A Vamos-like minor M / contract \ remove, with its partition, all in M's numbering.
struct VamosMinor {
  Mask contract;
  Mask remove;
  std::array<Mask, 4> partition;
};

inline std::vector<VamosMinor> scan_vamos_like_minors(const Matroid& m) {
  if (m.size() > 14) throw PreconditionError("minor scan is limited to 14 elements");
  std::vector<VamosMinor> out;
  for_each_minor(m, 4, 8, [&](Mask c, Mask d, const Matroid& minor) {
    if (auto p = is_vamos_like(minor)) {
      const Mask keep = m.ground_mask() & ~(c | d);
      std::array<Mask, 4> mapped{};
      for (std::size_t i = 0; i < 4; ++i) mapped[i] = expand((*p)[i], keep);
      out.push_back({c, d, mapped});
    }
    return true;
  });
  return out;
}

/// True iff K(small) is not isomorphic to a proper minor of K(big).
inline bool antichain_check(const KrtSpec& big, const KrtSpec& small) {
  if (big.size() > 14) throw PreconditionError("antichain check is limited to 14 elements");
  return !has_minor_isomorphic_to(build_krt(big), build_krt(small), MinorScope::proper);
}

}  // namespace matlift
