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

#include <gtest/gtest.h>

#include <set>

#include "matlift/gain.hpp"
#include "matlift/group.hpp"
#include "test_support.hpp"

namespace matlift {
namespace {

std::vector<FinGroup> small_groups() {
  return {cyclic_group(2), cyclic_group(3), cyclic_group(4), elementary_abelian_group(2, 2),
          cyclic_group(5), cyclic_group(6), symmetric_group_3()};
}

// Subgroups by testing every subset for closure.
std::vector<Mask> brute_subgroups(const FinGroup& g) {
  std::vector<Mask> out;
  for (Mask s = 1; s <= g.all(); ++s) {
    if (!has_element(s, g.identity())) continue;
    bool closed = true;
    for_each_element(s, [&](int a) {
      for_each_element(s, [&](int b) { closed = closed && has_element(s, g.mul(a, g.inv(b))); });
    });
    if (closed) out.push_back(s);
  }
  canonicalize(out);
  return out;
}

// Nontrivial partitions by enumerating every set partition of the
// non-identity elements.
std::size_t brute_partition_count(const FinGroup& g) {
  const std::vector<int> elems = elements_of(g.nonidentity());
  const auto subgroups = brute_subgroups(g);
  auto is_subgroup = [&](Mask s) { return std::find(subgroups.begin(), subgroups.end(), s) != subgroups.end(); };
  std::size_t count = 0;
  std::vector<Mask> parts;
  std::function<void(std::size_t)> place = [&](std::size_t k) {
    if (k == elems.size()) {
      if (parts.size() < 2) return;
      for (Mask p : parts) {
        if (!is_subgroup(p | bit(g.identity()))) return;
      }
      ++count;
      return;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      parts[i] |= bit(elems[k]);
      place(k + 1);
      parts[i] &= ~bit(elems[k]);
    }
    parts.push_back(bit(elems[k]));
    place(k + 1);
    parts.pop_back();
  };
  place(0);
  return count;
}

Mask name_mask(const FinGroup& g, std::initializer_list<const char*> names) {
  Mask out = 0;
  for (const char* n : names) out |= bit(*g.find(n));
  return out;
}

TEST(FinGroup, Builtins) {
  EXPECT_EQ(cyclic_group(4).order(), 4);
  EXPECT_TRUE(cyclic_group(4).is_abelian());
  EXPECT_EQ(builtin_group("z2^3").order(), 8);
  EXPECT_EQ(builtin_group("d4").order(), 8);
  EXPECT_FALSE(builtin_group("d4").is_abelian());
  EXPECT_FALSE(builtin_group("s3").is_abelian());
  EXPECT_FALSE(builtin_group("q8").is_abelian());
  EXPECT_THROW(builtin_group("x7"), PreconditionError);
}

TEST(FinGroup, Inverses) {
  for (const FinGroup& g : {symmetric_group_3(), quaternion_group(), dihedral_group(4)}) {
    for (int a = 0; a < g.order(); ++a) EXPECT_EQ(g.mul(a, g.inv(a)), g.identity());
  }
}

TEST(FinGroup, BrokenAssociativityNamesTriple) {
  // A Latin square with identity a that is not associative: (b b) c = c but
  // b (b c) = b d = e.
  const std::vector<std::string> names{"a", "b", "c", "d", "e"};
  const std::vector<std::vector<int>> table{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    FinGroup g(names, table);
    FAIL() << "expected an axiom error";
  } catch (const AxiomError& e) {
    EXPECT_NE(std::string(e.what()).find("associativity fails for ("), std::string::npos) << e.what();
  }
}

TEST(Subgroups, MatchBruteForce) {
  for (const FinGroup& g : {cyclic_group(4), elementary_abelian_group(2, 2), symmetric_group_3(), quaternion_group(),
                            dihedral_group(4), elementary_abelian_group(2, 3)}) {
    EXPECT_EQ(subgroups(g), brute_subgroups(g));
  }
}

TEST(Subgroups, KleinFourHasThreeOfOrderTwo) {
  int order_two = 0;
  for (Mask h : subgroups(elementary_abelian_group(2, 2))) order_two += popcount(h) == 2 ? 1 : 0;
  EXPECT_EQ(order_two, 3);
}

TEST(Partitions, Examples) {
  EXPECT_TRUE(group_partitions(cyclic_group(4)).empty());
  const auto klein = group_partitions(elementary_abelian_group(2, 2));
  ASSERT_EQ(klein.size(), 1u);
  EXPECT_EQ(klein[0].size(), 3u);
  const FinGroup s3 = symmetric_group_3();
  const auto parts = group_partitions(s3);
  GroupPartition expected{name_mask(s3, {"231", "312"}), name_mask(s3, {"132"}), name_mask(s3, {"213"}),
                          name_mask(s3, {"321"})};
  canonicalize(expected);
  EXPECT_NE(std::find(parts.begin(), parts.end(), expected), parts.end());
}

TEST(Partitions, CountsMatchBruteForce) {
  for (const FinGroup& g : {cyclic_group(4), cyclic_group(6), elementary_abelian_group(2, 2),
                            elementary_abelian_group(3, 2), symmetric_group_3(), quaternion_group(), dihedral_group(4),
                            elementary_abelian_group(2, 3)}) {
    EXPECT_EQ(group_partitions(g).size(), brute_partition_count(g));
  }
}

TEST(Primitive, Examples) {
  for (int p : {2, 3}) {
    const auto prim = primitive_partition(elementary_abelian_group(p, 2));
    ASSERT_TRUE(prim.has_value());
    EXPECT_EQ(prim->size(), static_cast<std::size_t>(p + 1));
    for (Mask a : *prim) EXPECT_EQ(popcount(a), p - 1);
  }
  const auto s3 = primitive_partition(symmetric_group_3());
  ASSERT_TRUE(s3.has_value());
  EXPECT_EQ(s3->size(), 4u);
  EXPECT_FALSE(primitive_partition(cyclic_group(6)).has_value());
  EXPECT_FALSE(primitive_partition(quaternion_group()).has_value());
}

TEST(Primitive, UniversalAndConjugationClosed) {
  for (const FinGroup& g : {elementary_abelian_group(2, 2), elementary_abelian_group(3, 2), symmetric_group_3(),
                            dihedral_group(4), dihedral_group(5), elementary_abelian_group(2, 3)}) {
    const auto prim = primitive_partition(g);
    ASSERT_TRUE(prim.has_value());
    for (const GroupPartition& p : group_partitions(g)) EXPECT_TRUE(refines(*prim, p));
    for (Mask a : *prim) {
      for (int x = 0; x < g.order(); ++x) {
        EXPECT_NE(std::find(prim->begin(), prim->end(), g.conjugate(a, x)), prim->end());
      }
    }
  }
}

TEST(GainGraph, EdgeCounts) {
  EXPECT_EQ(GainGraph(cyclic_group(2), 3).size(), 6);
  EXPECT_EQ(GainGraph(symmetric_group_3(), 3).size(), 18);
  EXPECT_EQ(GainGraph(elementary_abelian_group(2, 2), 4).size(), 24);
  EXPECT_THROW(GainGraph(cyclic_group(2), 2), PreconditionError);
  EXPECT_THROW(GainGraph(cyclic_group(8), 5), PreconditionError);
}

TEST(GainGraph, EdgeNumbering) {
  const GainGraph gg(cyclic_group(3), 4);
  for (int e = 0; e < gg.size(); ++e) {
    const GainEdge& x = gg.edge(e);
    EXPECT_LT(x.i, x.j);
    EXPECT_EQ(gg.id(x.i, x.j, x.label), e);
  }
}

TEST(Balance, Examples) {
  const GainGraph z3(cyclic_group(3), 3);
  EXPECT_TRUE(is_balanced(z3, bit(z3.id(1, 2, 0)) | bit(z3.id(2, 3, 0)) | bit(z3.id(1, 3, 0))));
  EXPECT_FALSE(is_balanced(z3, bit(z3.id(1, 2, 0)) | bit(z3.id(1, 2, 1))));
  EXPECT_TRUE(is_balanced(z3, bit(z3.id(1, 2, 1)) | bit(z3.id(2, 3, 1)) | bit(z3.id(1, 3, 2))));
  EXPECT_FALSE(is_balanced(z3, bit(z3.id(1, 2, 1)) | bit(z3.id(2, 3, 1)) | bit(z3.id(1, 3, 1))));
}

TEST(Balance, RejectsNonCycles) {
  const GainGraph gg(cyclic_group(2), 4);
  EXPECT_THROW(is_balanced(gg, bit(gg.id(1, 2, 0)) | bit(gg.id(2, 3, 0))), PreconditionError);
  EXPECT_THROW(is_balanced(gg, bit(gg.id(1, 2, 0))), PreconditionError);
  // Two disjoint 2-cycles.
  EXPECT_THROW(is_balanced(gg, gg.pair_edges(1, 2) | gg.pair_edges(3, 4)), PreconditionError);
}

TEST(Balance, IndependentOfTraversal) {
  // Every rotation and the reversal of the closed walk give the identity
  // together or not at all.
  for (const FinGroup& g : {symmetric_group_3(), elementary_abelian_group(2, 2), cyclic_group(3)}) {
    const int n = g.order() <= 3 ? 4 : 3;
    const GainGraph gg(g, n);
    for (Mask c : enumerate_cycles(gg)) {
      std::vector<int> order;
      const std::vector<int> walk = traverse_cycle(gg, c, &order);
      const std::size_t len = order.size();
      auto step = [&](std::size_t k, bool reverse) {
        const std::size_t pos = reverse ? len - 1 - k : k;
        const GainEdge& e = gg.edge(order[pos]);
        const int from = reverse ? walk[pos + 1] : walk[pos];
        return from == e.i ? e.label : g.inv(e.label);
      };
      const bool balanced = is_balanced(gg, c);
      for (bool reverse : {false, true}) {
        for (std::size_t shift = 0; shift < len; ++shift) {
          int product = g.identity();
          for (std::size_t k = 0; k < len; ++k) product = g.mul(product, step((k + shift) % len, reverse));
          EXPECT_EQ(product == g.identity(), balanced);
        }
      }
    }
  }
}

TEST(Switching, IdentityAndInverse) {
  const FinGroup s3 = symmetric_group_3();
  const GainGraph gg(s3, 3);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(switch_edges(gg, gg.all(), k, s3.identity()), gg.all());
    for (int beta = 0; beta < s3.order(); ++beta) {
      EXPECT_EQ(switch_edges(gg, gg.all(), k, beta), gg.all());
      for (int e = 0; e < gg.size(); ++e) {
        const Mask there = switch_edges(gg, bit(e), k, beta);
        EXPECT_EQ(popcount(there), 1);
        EXPECT_EQ(switch_edges(gg, there, k, s3.inv(beta)), bit(e));
      }
    }
  }
}

TEST(Switching, PreservesBalance) {
  for (const FinGroup& g : small_groups()) {
    const GainGraph gg(g, 3);
    for (Mask c : enumerate_cycles(gg)) {
      for (int k = 1; k <= 3; ++k) {
        for (int beta = 0; beta < g.order(); ++beta) {
          EXPECT_EQ(is_balanced(gg, switch_edges(gg, c, k, beta)), is_balanced(gg, c));
        }
      }
    }
  }
}

TEST(Switching, OrbitOfIdentityEdgesUnderZ2) {
  const GainGraph gg(cyclic_group(2), 3);
  const Mask e_eps = gg.with_labels(bit(0));
  const SwitchingOrbit orbit = switching_orbit(gg, e_eps);
  // The orbit is exactly the balanced triangles.
  std::vector<Mask> balanced;
  for (Mask c : enumerate_cycles(gg)) {
    if (popcount(c) == 3 && is_balanced(gg, c)) balanced.push_back(c);
  }
  std::sort(balanced.begin(), balanced.end());
  std::vector<Mask> members = orbit.members;
  std::sort(members.begin(), members.end());
  EXPECT_EQ(members, balanced);
  EXPECT_EQ(members.size(), 4u);
  EXPECT_EQ(orbit.canonical, *std::min_element(members.begin(), members.end()));
  for (Mask m : members) EXPECT_EQ(switching_orbit(gg, m).canonical, orbit.canonical);
}

TEST(Switching, PrimitivePartsOfS3ByConjugacy) {
  // Switching every vertex by the same beta conjugates every label, so
  // E_{A u e} for conjugate parts share an orbit: one orbit for the
  // rotations and one for the three reflections.
  const FinGroup s3 = symmetric_group_3();
  const GainGraph gg(s3, 3);
  const auto prim = primitive_partition(s3);
  ASSERT_TRUE(prim.has_value());
  std::set<Mask> sets;
  std::set<Mask> canon;
  for (Mask a : *prim) {
    const Mask e_a = gg.with_labels(a | bit(s3.identity()));
    sets.insert(e_a);
    canon.insert(switching_orbit(gg, e_a).canonical);
  }
  EXPECT_EQ(sets.size(), 4u);
  EXPECT_EQ(canon.size(), 2u);
  const Mask rotations = gg.with_labels(name_mask(s3, {"123", "231", "312"}));
  const Mask reflection = gg.with_labels(name_mask(s3, {"123", "132"}));
  EXPECT_NE(switching_orbit(gg, rotations).canonical, switching_orbit(gg, reflection).canonical);
}

TEST(Graphic, CircuitCounts) {
  const Matroid z2 = graphic_matroid(GainGraph(cyclic_group(2), 3));
  EXPECT_EQ(z2.rank(), 2);
  EXPECT_EQ(z2.circuits().size(), 11u);
  const Matroid s3 = graphic_matroid(GainGraph(symmetric_group_3(), 3));
  EXPECT_EQ(s3.rank(), 2);
  EXPECT_EQ(s3.circuits().size(), 45u + 216u);
  const Matroid k4 = graphic_matroid(GainGraph(cyclic_group(2), 4));
  EXPECT_EQ(k4.rank(), 3);
}

TEST(Graphic, SingleLabelIsTheCompleteGraph) {
  const Matroid trivial = graphic_matroid(GainGraph(cyclic_group(1), 4));
  EXPECT_EQ(trivial, testing::graphic_k4());
}

TEST(Zaslavsky, Z2Triangle) {
  const GainGraph gg(cyclic_group(2), 3);
  const Matroid lift = zaslavsky_lift(gg);
  EXPECT_EQ(lift.size(), 6);
  EXPECT_EQ(lift.rank(), 3);
  EXPECT_TRUE(balanced_circuit_audit(lift, gg).pass);
}

TEST(Zaslavsky, SimpleAndAudited) {
  for (const FinGroup& g : {cyclic_group(3), elementary_abelian_group(2, 2), symmetric_group_3()}) {
    const GainGraph gg(g, 3);
    const Matroid lift = zaslavsky_lift(gg);
    EXPECT_EQ(lift.rank(), 3);
    EXPECT_TRUE(balanced_circuit_audit(lift, gg).pass);
    for (Mask c : lift.circuits()) EXPECT_GE(popcount(c), 3);
    EXPECT_TRUE(is_quotient(graphic_matroid(gg), lift));
  }
}

TEST(Audit, GraphicMatroidFails) {
  const GainGraph gg(cyclic_group(2), 3);
  const CycleAudit audit = balanced_circuit_audit(graphic_matroid(gg), gg);
  EXPECT_FALSE(audit.pass);
  ASSERT_TRUE(audit.first_mismatch.has_value());
  EXPECT_FALSE(audit.first_mismatch->balanced);
  EXPECT_TRUE(audit.first_mismatch->circuit);
}

TEST(Rank2Lift, S3) {
  const Rank2Lift r = rank2_lift_k3(symmetric_group_3());
  EXPECT_EQ(r.lift.size(), 18);
  EXPECT_EQ(r.lift.rank(), 4);
  EXPECT_EQ(r.lift.rank() - r.graphic.rank(), 2);
  EXPECT_TRUE(r.audit.pass);
  EXPECT_TRUE(r.quotient);
  EXPECT_TRUE(r.hyperplane_report.ok());
}

TEST(Rank2Lift, KleinFour) {
  const Rank2Lift r = rank2_lift_k3(elementary_abelian_group(2, 2));
  EXPECT_EQ(r.lift.size(), 12);
  EXPECT_EQ(r.lift.rank(), 4);
  EXPECT_TRUE(r.audit.pass);
}

TEST(Rank2Lift, RefusesGroupsWithoutPartition) {
  for (const FinGroup& g : {cyclic_group(4), cyclic_group(6), quaternion_group()}) {
    try {
      rank2_lift_k3(g);
      FAIL() << "expected refusal";
    } catch (const PreconditionError& e) {
      EXPECT_EQ(std::string(e.what()), "no nontrivial partition");
    }
  }
}

TEST(Rank2Lift, FlatsOfGraphicAreFlats) {
  const Rank2Lift r = rank2_lift_k3(dihedral_group(4));
  EXPECT_EQ(r.lift.rank(), 4);
  for (Mask f : flats(r.graphic)) EXPECT_TRUE(r.lift.is_flat(f));
}

// Small sets and balanced triangles with one more edge lie in a
// hyperplane.
TEST(Rank2Lift, SmallSetsLieInHyperplanes) {
  for (const FinGroup& g : {symmetric_group_3(), elementary_abelian_group(2, 2)}) {
    const Rank2Lift r = rank2_lift_k3(g);
    const auto& hs = r.hyperplanes.hyperplanes;
    auto covered = [&](Mask s) { return std::any_of(hs.begin(), hs.end(), [&](Mask h) { return is_subset(s, h); }); };
    for_each_subset_of_size(r.graph.size(), 3, [&](Mask s) { EXPECT_TRUE(covered(s)) << format_set(s); });
    for (Mask c : enumerate_cycles(r.graph)) {
      if (popcount(c) != 3 || !is_balanced(r.graph, c)) continue;
      for (int e = 0; e < r.graph.size(); ++e) EXPECT_TRUE(covered(c | bit(e))) << format_set(c | bit(e));
    }
  }
}

// An identity-labelled spanning tree plus an edge labelled alpha
// lies in no hyperplane other than E_{A u {identity}} for the part A of alpha.
TEST(Rank2Lift, NormalTreeDeterminesHyperplane) {
  for (const FinGroup& g : {symmetric_group_3(), elementary_abelian_group(2, 2), dihedral_group(4)}) {
    const Rank2Lift r = rank2_lift_k3(g);
    const GainGraph& gg = r.graph;
    const int eps = g.identity();
    const std::vector<std::pair<int, int>> pairs{{1, 2}, {1, 3}, {2, 3}};
    for (std::size_t skip = 0; skip < 3; ++skip) {
      Mask tree = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        if (k != skip) tree |= bit(gg.id(pairs[k].first, pairs[k].second, eps));
      }
      for (int alpha = 0; alpha < g.order(); ++alpha) {
        if (alpha == eps) continue;
        const Mask part = *std::find_if(r.partition.begin(), r.partition.end(),
                                        [&](Mask a) { return has_element(a, alpha); });
        for (const auto& [i, j] : pairs) {
          const Mask s = tree | bit(gg.id(i, j, alpha));
          std::vector<Mask> containing;
          for (Mask h : r.hyperplanes.hyperplanes) {
            if (is_subset(s, h)) containing.push_back(h);
          }
          ASSERT_EQ(containing.size(), 1u) << format_set(s);
          EXPECT_EQ(containing[0], gg.with_labels(part | bit(eps)));
        }
      }
    }
  }
}

}  // namespace
}  // namespace matlift
