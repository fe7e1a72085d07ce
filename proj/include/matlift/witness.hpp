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

#include <stdexcept>
#include <string>
#include <vector>

#include "matlift/gf.hpp"
#include "matlift/lifts.hpp"

namespace matlift {

/// Output of the representable-witness construction. M and L are on the
/// columns outside X, renumbered in increasing order; b has one column per
/// circuit of M in canonical order.
struct Witness {
  GfMatrix reduced;  // A after row operations making the X columns unit vectors
  GfMatrix a_m;
  GfMatrix a_l;
  std::vector<GfVector> circuit_vectors;
  GfMatrix b;
  LiftSpec spec;
  Matroid l;
};

/// For a dependent X: a maximal independent X' inside it, and the matrix with
/// the columns of X - X' deleted. Those columns are loops after contracting
/// X', so the new pair (A', X') yields the same K / X and K \ X.
struct IndependentReduction {
  GfMatrix matrix;
  Mask x;        // X' in the numbering of `matrix`
  Mask dropped;  // X - X' in the original numbering
};

inline IndependentReduction reduce_to_independent(const GfMatrix& a, Mask x) {
  Mask kept = 0;
  for_each_element(x, [&](int e) {
    if (column_rank(a, kept | bit(e)) == popcount(kept) + 1) kept |= bit(e);
  });
  const Mask dropped = x & ~kept;
  const Mask survivors = full_mask(a.cols()) & ~dropped;
  return {a.select_columns(elements_of(survivors)), compress(kept, survivors), dropped};
}

inline Witness lift_witness(const GfMatrix& a, Mask x) {
  if (a.cols() > kMaxElements || (x & ~full_mask(a.cols())) != 0) throw PreconditionError("X is not a set of columns");
  if (column_rank(a, x) != popcount(x)) {
    const IndependentReduction red = reduce_to_independent(a, x);
    throw PreconditionError("X is dependent: columns " + format_set(red.dropped) +
                            " lie in the span of the others; reduce to " + format_set(x & ~red.dropped));
  }
  // Put the X columns first so they take the first pivots, then undo the order.
  std::vector<int> order = elements_of(x);
  const Mask rest = full_mask(a.cols()) & ~x;
  for (int e : elements_of(rest)) order.push_back(e);
  const GfMatrix permuted = rref(a.select_columns(order)).reduced;
  std::vector<int> back(static_cast<std::size_t>(a.cols()));
  for (std::size_t i = 0; i < order.size(); ++i) back[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  GfMatrix reduced = permuted.select_columns(back);

  const int k = popcount(x);
  std::vector<int> other_rows;
  for (int i = k; i < reduced.rows(); ++i) other_rows.push_back(i);
  GfMatrix a_l = reduced.select_columns(elements_of(rest));
  GfMatrix a_m = a_l.select_rows(other_rows);

  const Matroid m = column_matroid(a_m);
  const Matroid l = column_matroid(a_l);
  std::vector<GfVector> vectors;
  GfMatrix b(a.prime(), a_l.rows(), static_cast<int>(m.circuits().size()));
  for (std::size_t c = 0; c < m.circuits().size(); ++c) {
    vectors.push_back(circuit_vector(a_m, m.circuits()[c]));
    const GfVector image = a_l.multiply(vectors.back());
    for (int i = 0; i < b.rows(); ++i) b.set(i, static_cast<int>(c), image[static_cast<std::size_t>(i)]);
  }

  Overlay overlay(
      static_cast<std::size_t>(b.cols()),
      [b](std::span<const std::size_t> s) {
        if (s.empty() || b.rows() == 0) return 0;
        std::vector<int> cols(s.begin(), s.end());
        return matrix_rank(b.select_columns(cols));
      },
      "column matroid over GF(" + std::to_string(a.prime()) + ")");
  if (b.cols() <= kMaxElements) overlay = Overlay::from_matroid(column_matroid(b));
  Witness w{std::move(reduced), std::move(a_m), std::move(a_l), std::move(vectors), std::move(b),
            LiftSpec(m, std::move(overlay)), l};
  if (!check_star_prime(w.spec).holds) throw std::logic_error("witness overlay fails condition (*')");
  return w;
}

/// True iff the lift built from spec has the same rank as l on every subset.
inline bool verify_witness(const LiftSpec& spec, const Matroid& l) {
  if (l.size() != spec.base.size() || !check_star_prime(spec).holds) return false;
  const Matroid lift = build_lift(spec);
  for (Mask s = 0;; ++s) {
    if (lift.rank(s) != l.rank(s)) return false;
    if (s == l.ground_mask()) break;
  }
  return true;
}

}  // namespace matlift
