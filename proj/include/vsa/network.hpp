#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "vsa/core.hpp"

namespace vsa {

// Undirected simple graph over agent indices 0..n-1. Edges are kept canonical
// (first < second, sorted lexicographically) so equal edge sets compare equal.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  static Graph empty(int n) { return Graph{n, {}}; }

  std::vector<int> degrees() const;
  int max_degree() const;
  std::vector<std::vector<int>> adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;
};

// Neighbor discovery: which previously unconnected pairs become link
// candidates each round. All strategies are deterministic in (t, states).
struct FullAccess {};    // every agent sees the whole network
struct NoDiscovery {};   // only existing links are re-tested
struct FixedCandidates { // static per-agent candidate lists
  std::vector<std::vector<int>> candidates;
};
using DiscoveryStrategy = std::variant<FullAccess, NoDiscovery, FixedCandidates>;

// Connects agents whose value systems are mutually acceptable: edge {i,j} iff
// d_F(X_i, X_j) < min(gamma_x_i, gamma_x_j) and d_2(Omega_i, Omega_j) <
// min(gamma_omega_i, gamma_omega_j), both strict. Requires every agent to
// carry strictly positive bounds.
Graph initial_edges(const Population& pop);

// Uniform mixing weight for the consensus term. Auto mode returns
// 1/(max_degree + 1), or 0 for an edgeless graph; a fixed value is validated
// against the strict bound epsilon < 1/max_degree for the current graph.
double compute_epsilon(const Graph& g, const std::optional<double>& fixed_value = {});

// One bounded-confidence rewiring round: candidate pairs are the previous
// edges plus symmetrized discoveries, and a candidate survives iff the
// current iterates pass both strict bound tests (same predicate as
// initial_edges, evaluated on states instead of original systems).
Graph update_neighbors(const Population& pop, const std::vector<AgentState>& states,
                       const Graph& previous, const DiscoveryStrategy& discovery);

// Blocks sorted by smallest member; members ascending. Singletons allowed.
std::vector<std::vector<int>> connected_components(const Graph& g);

}  // namespace vsa
