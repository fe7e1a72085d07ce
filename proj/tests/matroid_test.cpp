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

#include <random>
#include <thread>

#include "matlift/isomorphism.hpp"
#include "matlift/matroid.hpp"
#include "matlift/minors.hpp"
#include "matlift/predicates.hpp"
#include "test_support.hpp"

namespace matlift {
namespace {

using testing::brute_closure;
using testing::brute_rank;
using testing::one_based_mask;

TEST(ValidateCircuits, UniformFamilyIsValid) {
  std::vector<Mask> family;
  for_each_subset_of_size(4, 3, [&](Mask s) { family.push_back(s); });
  EXPECT_TRUE(validate_circuits(family, GroundSet{4}).ok());
}

TEST(ValidateCircuits, ContainmentIsReported) {
  const std::vector<Mask> family{one_based_mask({1, 2}), one_based_mask({1, 2, 3})};
  const CircuitReport report = validate_circuits(family, GroundSet{3});
  EXPECT_EQ(report.kind, CircuitReport::Kind::not_antichain);
  EXPECT_EQ(report.first, one_based_mask({1, 2}));
  EXPECT_EQ(report.second, one_based_mask({1, 2, 3}));
}

TEST(ValidateCircuits, EliminationWitness) {
  // {1,2} and {2,3} share 2, and nothing lies inside {1,3}.
  const std::vector<Mask> family{one_based_mask({1, 2}), one_based_mask({2, 3})};
  const CircuitReport report = validate_circuits(family, GroundSet{3});
  EXPECT_EQ(report.kind, CircuitReport::Kind::elimination);
  EXPECT_EQ(report.element, 1);
  EXPECT_THROW(Matroid::from_circuits(3, family), AxiomError);
}

TEST(ValidateCircuits, EliminationWitnessOnLargeGround) {
  // Same defect on a 20-element ground set exercises the pairwise route.
  const std::vector<Mask> family{bit(0) | bit(19), bit(19) | bit(18)};
  const CircuitReport report = validate_circuits(family, GroundSet{20});
  EXPECT_EQ(report.kind, CircuitReport::Kind::elimination);
  EXPECT_EQ(report.element, 19);
}

TEST(ValidateCircuits, VamosFamilyIsValid) {
  const Matroid v = testing::vamos();
  EXPECT_TRUE(validate_circuits(v.circuits(), v.ground()).ok());
  EXPECT_EQ(v.circuits().size(), 5U + 36U);  // 56 five-sets minus the 4 above each hyperplane
}

TEST(ValidateCircuits, RejectsOutOfRangeAndEmpty) {
  EXPECT_EQ(validate_circuits(std::vector<Mask>{bit(5)}, GroundSet{3}).kind, CircuitReport::Kind::out_of_range);
  EXPECT_EQ(validate_circuits(std::vector<Mask>{0}, GroundSet{3}).kind, CircuitReport::Kind::empty_member);
}

TEST(Rank, Examples) {
  const Matroid u24 = Matroid::uniform(2, 4);
  EXPECT_EQ(u24.rank(0b0111), 2);
  const Matroid v = testing::vamos();
  EXPECT_EQ(v.rank(one_based_mask({1, 2, 7, 8})), 3);
  EXPECT_EQ(v.rank(), 4);
}

TEST(Rank, TableGreedyAndBruteForceAgree) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matroid m = testing::random_sparse_paving(rng, 9, 4, 30);
    for (Mask x = 0; x <= m.ground_mask(); x += 7) {
      const int brute = brute_rank(m.circuits(), x);
      ASSERT_EQ(m.rank(x), brute);
      ASSERT_EQ(m.greedy_rank(x), brute);
    }
  }
}

TEST(Rank, MemoizedPathOnLargeGround) {
  const Matroid m = Matroid::uniform(3, 20);
  EXPECT_EQ(m.rank(0b111), 3);
  EXPECT_EQ(m.rank(0b11), 2);
  EXPECT_EQ(m.rank(m.ground_mask()), 3);
  EXPECT_EQ(m.rank(0b111), 3);
}

TEST(Rank, ConcurrentReadersSeeTheSameValues) {
  const Matroid m = Matroid::uniform(3, 20);
  std::vector<int> expected;
  for (Mask x = 0; x < 4096; ++x) expected.push_back(std::min(popcount(x * 4099 & m.ground_mask()), 3));
  std::vector<std::thread> workers;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&] {
      for (Mask x = 0; x < 4096; ++x) {
        if (m.rank(x * 4099 & m.ground_mask()) != expected[x]) ++mismatches;
      }
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_EQ(mismatches.load(), 0);
}

TEST(Closure, Examples) {
  EXPECT_EQ(Matroid::uniform(1, 3).closure(0b001), 0b111U);
  const Matroid with_loop = Matroid::from_circuits(3, {0b001, 0b110});
  EXPECT_EQ(with_loop.closure(0), 0b001U);
  EXPECT_EQ(with_loop.closure(0), with_loop.loops());
  const Matroid v = testing::vamos();
  const Mask x = one_based_mask({1, 2, 7});
  const Mask expected = brute_closure(v.circuits(), 8, x);
  EXPECT_EQ(expected, one_based_mask({1, 2, 7, 8}));
  EXPECT_EQ(v.closure(x), expected);
}

TEST(CircuitsWithin, Examples) {
  const Matroid v = testing::vamos();
  EXPECT_TRUE(v.circuits_within(one_based_mask({1, 3, 5, 7})).empty());
  const Matroid u13 = Matroid::uniform(1, 3);
  EXPECT_EQ(u13.circuits_within(0b111), (std::vector<Mask>{0b011, 0b101, 0b110}));
  // The two non-spanning circuits are the hyperplanes 1234 and 3456; the two
  // 5-sets avoiding both are circuits as well.
  const auto within = v.circuits_within(one_based_mask({1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(within, (std::vector<Mask>{one_based_mask({1, 2, 3, 4}), one_based_mask({3, 4, 5, 6}),
                                       one_based_mask({1, 2, 3, 5, 6}), one_based_mask({1, 2, 4, 5, 6})}));
  for (Mask c : within) EXPECT_EQ(brute_rank(v.circuits(), c), popcount(c) - 1);
}

TEST(Minors, ContractUniform) {
  EXPECT_EQ(contraction(Matroid::uniform(2, 4), 0b0001), Matroid::uniform(1, 3));
}

TEST(Minors, DeleteVamosPair) {
  const Matroid v = testing::vamos();
  const Matroid d = deletion(v, one_based_mask({7, 8}));
  EXPECT_EQ(d.size(), 6);
  EXPECT_EQ(d.rank(), 4);
  EXPECT_EQ(circuit_hyperplanes(d), (std::vector<Mask>{one_based_mask({1, 2, 3, 4}), one_based_mask({3, 4, 5, 6})}));
}

TEST(Minors, ContractVamosPair) {
  const Matroid v = testing::vamos();
  const Matroid c = contraction(v, one_based_mask({7, 8}));
  EXPECT_EQ(c.size(), 6);
  EXPECT_EQ(c.rank(), 2);
  for (Mask pair : {one_based_mask({1, 2}), one_based_mask({3, 4}), one_based_mask({5, 6})}) {
    EXPECT_TRUE(c.is_circuit(pair)) << format_set(pair);
  }
}

TEST(Minors, RejectBadArguments) {
  EXPECT_THROW(deletion(Matroid::uniform(1, 3), bit(4)), PreconditionError);
  EXPECT_THROW(minor(Matroid::uniform(1, 3), 1, 1), PreconditionError);
}

TEST(Quotient, Examples) {
  EXPECT_TRUE(is_quotient(Matroid::uniform(1, 3), Matroid::uniform(2, 3)));
  // {0} is a flat of U_{2,3} but not of U_{1,3}.
  EXPECT_TRUE(Matroid::uniform(2, 3).is_flat(0b001));
  EXPECT_FALSE(Matroid::uniform(1, 3).is_flat(0b001));
  EXPECT_FALSE(is_quotient(Matroid::uniform(2, 3), Matroid::uniform(1, 3)));
  EXPECT_TRUE(is_quotient(testing::vamos(), testing::vamos()));
}

TEST(Isomorphism, Examples) {
  const Matroid v = testing::vamos();
  const IsoResult self = find_isomorphism(v, v);
  ASSERT_TRUE(self.found());
  for (Mask c : v.circuits()) {
    Mask image = 0;
    for_each_element(c, [&](int e) { image |= bit(self.mapping[e]); });
    EXPECT_TRUE(v.is_circuit(image));
  }
  EXPECT_FALSE(find_isomorphism(Matroid::uniform(2, 4), Matroid::uniform(3, 4)).found());
}

TEST(Isomorphism, RelabelledCopyIsFound) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Matroid m = testing::random_sparse_paving(rng, 10, 5, 40);
    std::vector<int> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Mask> moved;
    for (Mask c : m.circuits()) {
      Mask image = 0;
      for_each_element(c, [&](int e) { image |= bit(perm[e]); });
      moved.push_back(image);
    }
    const Matroid copy = Matroid::from_circuits(10, moved);
    const IsoResult iso = find_isomorphism(m, copy);
    ASSERT_TRUE(iso.found());
  }
}

TEST(Isomorphism, BudgetExceededIsDistinct) {
  const Matroid v = testing::vamos();
  const IsoResult tiny = find_isomorphism(v, v, 2);
  EXPECT_EQ(tiny.status, IsoResult::Status::budget_exceeded);
}

TEST(Isomorphism, RelaxationBreaksIsomorphism) {
  const Matroid v = testing::vamos();
  const Matroid relaxed = relax(v, one_based_mask({1, 2, 3, 4}));
  EXPECT_FALSE(find_isomorphism(v, relaxed).found());
}

TEST(SparsePaving, Examples) {
  EXPECT_TRUE(is_sparse_paving(testing::vamos()));
  EXPECT_TRUE(is_sparse_paving(Matroid::uniform(2, 4)));
  const Matroid k4 = testing::graphic_k4();
  EXPECT_EQ(k4.rank(), 3);
  // Every triangle of K4 is closed, so the dependent 3-sets are all
  // circuit-hyperplanes and M(K4) is sparse paving.
  for (Mask c : k4.circuits()) {
    if (popcount(c) == 3) {
      EXPECT_EQ(brute_closure(k4.circuits(), 6, c), c);
    }
  }
  EXPECT_TRUE(is_sparse_paving(k4));
  // A parallel pair in rank 3 puts a dependent non-circuit 3-set in place.
  EXPECT_FALSE(is_sparse_paving(Matroid::from_circuits(4, {0b0011})));
  EXPECT_THROW(sparse_paving_matroid(6, 3, {0b000111, 0b001011}), AxiomError);
}

TEST(Relax, Examples) {
  const Matroid v = testing::vamos();
  const Matroid relaxed = relax(v, one_based_mask({1, 2, 3, 4}));
  EXPECT_TRUE(validate_circuits(relaxed.circuits(), relaxed.ground()).ok());
  EXPECT_EQ(relaxed.size(), 8);
  EXPECT_EQ(relaxed.rank(), 4);
  EXPECT_EQ(circuit_hyperplanes(relaxed).size(), 4U);
  EXPECT_TRUE(is_sparse_paving(relaxed));
  EXPECT_THROW(relax(v, one_based_mask({1, 3, 5, 7})), PreconditionError);
  const Matroid again = relax(v, one_based_mask({3, 4, 5, 6}));
  EXPECT_TRUE(is_sparse_paving(again));
  EXPECT_EQ(circuit_hyperplanes(again).size(), 4U);
}

TEST(MinorSearch, Examples) {
  const Matroid v = testing::vamos();
  EXPECT_TRUE(has_minor_isomorphic_to(v, v));
  EXPECT_FALSE(has_minor_isomorphic_to(v, v, MinorScope::proper));
  EXPECT_TRUE(has_minor_isomorphic_to(Matroid::uniform(2, 4), Matroid::uniform(1, 3)));
  EXPECT_FALSE(has_minor_isomorphic_to(Matroid::uniform(2, 4), Matroid::uniform(3, 3)));
}

TEST(Hyperplanes, ValidationExamples) {
  EXPECT_TRUE(validate_hyperplanes({{0b001, 0b010, 0b100}, 2}, GroundSet{3}).ok());
  // Computed: {0,1} and {0,2} meet in {0}, and no member holds {0} with 3.
  const HyperplaneReport report = validate_hyperplanes({{0b0011, 0b0101, 0b0110}, 3}, GroundSet{4});
  EXPECT_EQ(report.kind, HyperplaneReport::Kind::exchange);
  EXPECT_EQ(report.element, 3);
  EXPECT_EQ(validate_hyperplanes({{0b01, 0b11}, 1}, GroundSet{3}).kind, HyperplaneReport::Kind::not_antichain);
}

TEST(Hyperplanes, RoundTrips) {
  EXPECT_EQ(matroid_from_hyperplanes({{0b001, 0b010, 0b100}, 2}, GroundSet{3}), Matroid::uniform(2, 3));
  const Matroid v = testing::vamos();
  const HyperplaneFamily hs = hyperplanes_of(v);
  const Matroid back = matroid_from_hyperplanes(hs, v.ground());
  for (Mask x = 0; x <= v.ground_mask(); ++x) ASSERT_EQ(back.rank(x), v.rank(x));
  EXPECT_THROW(matroid_from_hyperplanes({{0b001, 0b010, 0b100}, 3}, GroundSet{3}), AxiomError);
}

// ---- invariants over a zoo of small matroids -------------------------------

std::vector<Matroid> zoo() {
  std::vector<Matroid> out{Matroid::uniform(2, 4), Matroid::uniform(1, 3), Matroid::uniform(3, 6),
                           Matroid::free(4),       testing::vamos(),        testing::graphic_k4(),
                           Matroid::from_circuits(5, {0b00001, 0b00110, 0b11000})};
  std::mt19937_64 rng(3);
  for (int i = 0; i < 6; ++i) out.push_back(testing::random_sparse_paving(rng, 7 + i % 3, 3 + i % 2, 25));
  return out;
}

TEST(Invariants, RankAxiomsAndGreedyAgainstBruteForce) {
  for (const Matroid& m : zoo()) {
    const AxiomReport report = check_rank_axioms(m);
    EXPECT_TRUE(report.ok) << report.failure;
    for (Mask x = 0; x <= m.ground_mask(); ++x) ASSERT_EQ(m.rank(x), brute_rank(m.circuits(), x));
  }
}

TEST(Invariants, ClosureIsIdempotentAndMonotone) {
  for (const Matroid& m : zoo()) {
    for (Mask x = 0; x <= m.ground_mask(); ++x) {
      const Mask cx = m.closure(x);
      ASSERT_TRUE(is_subset(x, cx));
      ASSERT_EQ(m.closure(cx), cx);
      for_each_element(m.ground_mask() & ~x, [&](int e) { ASSERT_TRUE(is_subset(cx, m.closure(x | bit(e)))); });
    }
  }
}

TEST(Invariants, DeletionAndContractionSwapUnderDuality) {
  for (const Matroid& m : zoo()) {
    const Matroid star = dual(m);
    EXPECT_EQ(star.rank(), m.size() - m.rank());
    EXPECT_EQ(dual(star), m);
    for (Mask d = 0; d <= m.ground_mask(); d += 3) {
      ASSERT_EQ(dual(deletion(m, d)), contraction(star, d));
    }
  }
}

TEST(Invariants, HyperplaneRoundTrip) {
  for (const Matroid& m : zoo()) {
    if (m.rank() == 0) continue;
    const Matroid back = matroid_from_hyperplanes(hyperplanes_of(m), m.ground());
    EXPECT_EQ(back, m);
  }
}

TEST(Invariants, ContractionIsQuotientOfDeletion) {
  for (const Matroid& k : zoo()) {
    if (k.size() > 9) continue;
    for (Mask f = 0; f <= k.ground_mask(); ++f) {
      if (!k.is_independent(f)) continue;
      ASSERT_TRUE(is_quotient(contraction(k, f), deletion(k, f))) << format_set(f);
    }
  }
}

}  // namespace
}  // namespace matlift
