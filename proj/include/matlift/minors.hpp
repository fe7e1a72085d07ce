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

#include <vector>

#include "matlift/matroid.hpp"

namespace matlift {

namespace detail {

// Keeps the inclusion-minimal members of a canonically sorted family.
inline std::vector<Mask> minimal_members(std::vector<Mask> family) {
  canonicalize(family);
  std::vector<Mask> kept;
  for (Mask c : family) {
    bool minimal = true;
    for (Mask k : kept) {
      if (is_subset(k, c)) {
        minimal = false;
        break;
      }
    }
    if (minimal) kept.push_back(c);
  }
  return kept;
}

}  // namespace detail

// Minors live on the surviving elements, renumbered in increasing order.

/// M \ D: the circuits of M disjoint from D.
inline Matroid deletion(const Matroid& m, Mask d, Matroid::Check check = Matroid::Check::validate) {
  if (!m.ground().contains(d)) throw PreconditionError("deletion set leaves the ground set");
  const Mask keep = m.ground_mask() & ~d;
  std::vector<Mask> circuits;
  for (Mask c : m.circuits()) {
    if ((c & d) == 0) circuits.push_back(compress(c, keep));
  }
  return Matroid::from_circuits(popcount(keep), std::move(circuits), check);
}

/// M / C: the minimal nonempty sets among {C' - C : C' a circuit of M}.
inline Matroid contraction(const Matroid& m, Mask c, Matroid::Check check = Matroid::Check::validate) {
  if (!m.ground().contains(c)) throw PreconditionError("contraction set leaves the ground set");
  const Mask keep = m.ground_mask() & ~c;
  std::vector<Mask> candidates;
  for (Mask circuit : m.circuits()) {
    const Mask rest = circuit & ~c;
    if (rest != 0) candidates.push_back(rest);
  }
  std::vector<Mask> circuits = detail::minimal_members(std::move(candidates));
  for (Mask& x : circuits) x = compress(x, keep);
  return Matroid::from_circuits(popcount(keep), std::move(circuits), check);
}

/// M / C \ D for disjoint C and D.
inline Matroid minor(const Matroid& m, Mask contract, Mask remove,
                     Matroid::Check check = Matroid::Check::validate) {
  if ((contract & remove) != 0) throw PreconditionError("contraction and deletion sets overlap");
  const Matroid contracted = contraction(m, contract, check);
  return deletion(contracted, compress(remove, m.ground_mask() & ~contract), check);
}

inline Matroid restriction(const Matroid& m, Mask x, Matroid::Check check = Matroid::Check::validate) {
  return deletion(m, m.ground_mask() & ~x, check);
}

/// The dual matroid, via r*(X) = |X| + r(E - X) - r(E).
inline Matroid dual(const Matroid& m) {
  const Mask all = m.ground_mask();
  const int total = m.rank();
  return Matroid::from_rank(m.size(), [&](Mask x) { return popcount(x) + m.rank(all & ~x) - total; });
}

inline bool is_circuit_hyperplane(const Matroid& m, Mask h) {
  return m.is_circuit(h) && m.rank(h) == m.rank() - 1 && m.is_flat(h);
}

/// Relaxes the circuit-hyperplane h into a basis. The circuit family is
/// recomputed from the relaxed rank function and re-validated.
inline Matroid relax(const Matroid& m, Mask h) {
  if (!is_circuit_hyperplane(m, h)) {
    throw PreconditionError(format_set(h) + " is not a circuit-hyperplane");
  }
  return Matroid::from_rank(m.size(), [&](Mask x) { return m.rank(x) + (x == h ? 1 : 0); });
}

}  // namespace matlift
