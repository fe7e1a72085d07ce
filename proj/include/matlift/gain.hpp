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
#include <set>
#include <string>
#include <vector>

#include "matlift/group.hpp"
#include "matlift/lifts.hpp"
#include "matlift/matroid.hpp"
#include "matlift/predicates.hpp"

namespace matlift {

/// An edge ({i, j}, label) with i < j, oriented from i to j. Vertices are 1-based.
struct GainEdge {
  int i;
  int j;
  int label;
};

/// The full gain graph K_n^Γ. Edge index = pair index * |Γ| + label, with
/// the pairs {i, j} in lexicographic order.
class GainGraph {
 public:
  GainGraph(FinGroup group, int n) : group_(std::move(group)), n_(n) {
    if (n < 3) throw PreconditionError("the full gain graph needs at least 3 vertices");
    const long long edges = static_cast<long long>(n) * (n - 1) / 2 * group_.order();
    if (edges > kMaxElements) throw PreconditionError("K_n^G has " + std::to_string(edges) + " edges; the limit is 64");
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        for (int a = 0; a < group_.order(); ++a) edges_.push_back({i, j, a});
      }
    }
  }

  const FinGroup& group() const { return group_; }
  int vertices() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }
  const GainEdge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  Mask all() const { return full_mask(size()); }

  int pair_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    // pairs (1,2)..(1,n), (2,3).. in order
    return (i - 1) * n_ - (i - 1) * i / 2 + (j - i - 1);
  }

  int id(int i, int j, int label) const { return pair_index(i, j) * group_.order() + label; }

  Mask pair_edges(int i, int j) const {
    return full_mask(group_.order()) << (pair_index(i, j) * group_.order());
  }

  /// E_A: every edge whose label lies in the mask a.
  Mask with_labels(Mask labels) const {
    Mask out = 0;
    for (int e = 0; e < size(); ++e) {
      if (has_element(labels, edge(e).label)) out |= bit(e);
    }
    return out;
  }

 private:
  FinGroup group_;
  int n_;
  std::vector<GainEdge> edges_;
};

/// Vertex sequence of a cycle given by its edge set, starting at its smallest
/// vertex and leaving along the edge to the smaller neighbour (the lower edge
/// index for a 2-cycle). Throws unless the edges form a cycle.
inline std::vector<int> traverse_cycle(const GainGraph& gg, Mask cycle, std::vector<int>* edge_order = nullptr) {
  const std::vector<int> edges = elements_of(cycle);
  if (edges.size() < 2 || (cycle & ~gg.all()) != 0) throw PreconditionError(format_set(cycle) + " is not a cycle");
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(gg.vertices() + 1));
  for (int e : edges) {
    incident[static_cast<std::size_t>(gg.edge(e).i)].push_back(e);
    incident[static_cast<std::size_t>(gg.edge(e).j)].push_back(e);
  }
  int start = 0;
  for (int v = 1; v <= gg.vertices(); ++v) {
    const std::size_t deg = incident[static_cast<std::size_t>(v)].size();
    if (deg != 0 && deg != 2) throw PreconditionError(format_set(cycle) + " is not a cycle");
    if (deg == 2 && start == 0) start = v;
  }
  auto other = [&](int e, int v) { return gg.edge(e).i == v ? gg.edge(e).j : gg.edge(e).i; };
  const auto& first = incident[static_cast<std::size_t>(start)];
  int e = first[0];
  if (other(first[1], start) < other(first[0], start)) e = first[1];
  std::vector<int> walk{start};
  std::vector<int> used;
  int v = start;
  for (std::size_t step = 0; step < edges.size(); ++step) {
    used.push_back(e);
    v = other(e, v);
    walk.push_back(v);
    const auto& inc = incident[static_cast<std::size_t>(v)];
    e = inc[0] == e ? inc[1] : inc[0];
  }
  if (v != start) throw PreconditionError(format_set(cycle) + " is not a cycle");
  if (std::set<int>(used.begin(), used.end()).size() != edges.size()) {
    throw PreconditionError(format_set(cycle) + " is not a single cycle");
  }
  if (edge_order != nullptr) *edge_order = used;
  return walk;
}

/// Product of labels along the traversal; an edge walked against its i -> j
/// orientation contributes its inverse.
inline int cycle_gain(const GainGraph& gg, Mask cycle) {
  std::vector<int> order;
  const std::vector<int> walk = traverse_cycle(gg, cycle, &order);
  const FinGroup& g = gg.group();
  int product = g.identity();
  for (std::size_t k = 0; k < order.size(); ++k) {
    const GainEdge& e = gg.edge(order[k]);
    const int label = walk[k] == e.i ? e.label : g.inv(e.label);
    product = g.mul(product, label);
  }
  return product;
}

inline bool is_balanced(const GainGraph& gg, Mask cycle) { return cycle_gain(gg, cycle) == gg.group().identity(); }

/// Image of an edge set under switching at vertex k with value beta:
/// α_kj -> (β^-1 α)_kj and α_ik -> (α β)_ik.
inline Mask switch_edges(const GainGraph& gg, Mask edges, int k, int beta) {
  const FinGroup& g = gg.group();
  Mask out = 0;
  for_each_element(edges, [&](int e) {
    const GainEdge& x = gg.edge(e);
    int label = x.label;
    if (x.i == k) label = g.mul(g.inv(beta), label);
    if (x.j == k) label = g.mul(label, beta);
    out |= bit(gg.id(x.i, x.j, label));
  });
  return out;
}

/// Switching at vertex v by betas[v-1] for every v.
inline Mask switch_all(const GainGraph& gg, Mask edges, const std::vector<int>& betas) {
  for (int v = 1; v <= gg.vertices(); ++v) edges = switch_edges(gg, edges, v, betas[static_cast<std::size_t>(v - 1)]);
  return edges;
}

struct SwitchingOrbit {
  Mask canonical;            // least mask in the orbit
  std::vector<Mask> members; // sorted ascending
};

/// Switchings at distinct vertices commute and repeated switchings at one
/// vertex compose, so the orbit is the image of the |Γ|^n value choices.
inline SwitchingOrbit switching_orbit(const GainGraph& gg, Mask edges) {
  if (gg.vertices() != 3 || gg.group().order() > 8) throw PreconditionError("switching orbits need n = 3 and |G| <= 8");
  const int k = gg.group().order();
  std::set<Mask> seen;
  std::vector<int> betas(3);
  for (betas[0] = 0; betas[0] < k; ++betas[0]) {
    for (betas[1] = 0; betas[1] < k; ++betas[1]) {
      for (betas[2] = 0; betas[2] < k; ++betas[2]) seen.insert(switch_all(gg, edges, betas));
    }
  }
  return {*seen.begin(), std::vector<Mask>(seen.begin(), seen.end())};
}

/// Edge sets of all cycles: parallel pairs and, for every cyclic vertex
/// sequence of length at least 3, every choice of labels. Canonical order.
inline std::vector<Mask> enumerate_cycles(const GainGraph& gg) {
  const int n = gg.vertices();
  const int k = gg.group().order();
  std::vector<Mask> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for_each_subset_of_size(k, 2, [&](Mask labels) { out.push_back(labels << (gg.pair_index(i, j) * k)); });
    }
  }
  std::vector<int> path;
  std::function<void(Mask)> extend = [&](Mask visited) {
    if (path.size() >= 3 && path[1] < path.back()) {
      // close the cycle; every label choice
      std::vector<Mask> sets{0};
      for (std::size_t s = 0; s < path.size(); ++s) {
        const int a = path[s];
        const int b = path[(s + 1) % path.size()];
        std::vector<Mask> next;
        for (Mask m : sets) {
          for (int l = 0; l < k; ++l) next.push_back(m | bit(gg.id(a, b, l)));
        }
        sets = std::move(next);
      }
      out.insert(out.end(), sets.begin(), sets.end());
    }
    for (int v = path[0] + 1; v <= n; ++v) {
      if (has_element(visited, v)) continue;
      path.push_back(v);
      extend(visited | bit(v));
      path.pop_back();
    }
  };
  for (int s = 1; s <= n; ++s) {
    path = {s};
    extend(bit(s));
  }
  canonicalize(out);
  return out;
}

inline Matroid graphic_matroid(const GainGraph& gg) { return Matroid::from_circuits(gg.size(), enumerate_cycles(gg)); }

inline std::vector<std::size_t> balanced_cycle_indices(const GainGraph& gg, const Matroid& graphic) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < graphic.circuits().size(); ++c) {
    if (is_balanced(gg, graphic.circuits()[c])) out.push_back(c);
  }
  return out;
}

/// The elementary lift of M(K_n^Γ) by its balanced cycles.
inline Matroid zaslavsky_lift(const GainGraph& gg) {
  const Matroid graphic = graphic_matroid(gg);
  const std::vector<std::size_t> balanced = balanced_cycle_indices(gg, graphic);
  if (!is_linear_class(graphic, balanced)) throw std::logic_error("balanced cycles do not form a linear class");
  return elementary_lift(graphic, balanced);
}

struct CycleAuditRow {
  Mask cycle;
  bool balanced;
  bool circuit;
};

struct CycleAudit {
  std::vector<CycleAuditRow> rows;
  bool pass = true;
  std::optional<CycleAuditRow> first_mismatch;
};

/// A cycle should be a circuit of m exactly when it is balanced.
inline CycleAudit balanced_circuit_audit(const Matroid& m, const GainGraph& gg) {
  if (m.size() != gg.size()) throw PreconditionError("matroid and gain graph have different ground sets");
  CycleAudit audit;
  for (Mask c : enumerate_cycles(gg)) {
    const CycleAuditRow row{c, is_balanced(gg, c), m.is_circuit(c)};
    audit.rows.push_back(row);
    if (row.balanced != row.circuit && audit.pass) {
      audit.pass = false;
      audit.first_mismatch = row;
    }
  }
  return audit;
}

/// The hyperplane family for the rank-2 lift of M(K_3^Γ): switching images of
/// E_{A ∪ ε} for each part A of the primitive partition, plus the three
/// parallel classes. Canonical order.
inline std::vector<Mask> rank2_hyperplanes(const GainGraph& gg, const GroupPartition& primitive) {
  std::set<Mask> family;
  const Mask id = bit(gg.group().identity());
  for (Mask part : primitive) {
    for (Mask h : switching_orbit(gg, gg.with_labels(part | id)).members) family.insert(h);
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) family.insert(gg.pair_edges(i, j));
  }
  std::vector<Mask> out(family.begin(), family.end());
  canonicalize(out);
  return out;
}

struct Rank2Lift {
  GainGraph graph;
  GroupPartition partition;
  HyperplaneFamily hyperplanes;
  HyperplaneReport hyperplane_report;
  Matroid graphic;
  Matroid lift;
  CycleAudit audit;
  bool quotient = false;
};

/// The rank-2 lift of M(K_3^Γ) in which exactly the balanced cycles are
/// circuits. Refuses groups without a nontrivial partition and throws if any
/// of the post-checks fails.
inline Rank2Lift rank2_lift_k3(const FinGroup& g) {
  if (g.order() > 8) throw PreconditionError("rank-2 lifts are limited to groups of order at most 8");
  const std::optional<GroupPartition> primitive = primitive_partition(g);
  if (!primitive) throw PreconditionError("no nontrivial partition");
  GainGraph gg(g, 3);
  HyperplaneFamily family{rank2_hyperplanes(gg, *primitive), 4};
  const HyperplaneReport report = validate_hyperplanes(family, GroundSet{gg.size()});
  if (!report.ok()) throw AxiomError("hyperplane family fails: " + report.describe());
  Matroid lift = matroid_from_hyperplanes(family, GroundSet{gg.size()});
  Matroid graphic = graphic_matroid(gg);
  CycleAudit audit = balanced_circuit_audit(lift, gg);
  const bool quotient = is_quotient(graphic, lift);
  if (lift.rank() != 4 || !audit.pass || !quotient) throw AxiomError("rank-2 lift post-checks failed");
  return {std::move(gg), *primitive, std::move(family), report, std::move(graphic), std::move(lift), std::move(audit), quotient};
}

}  // namespace matlift
