#include "vsa/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vsa/geometry.hpp"

namespace vsa {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

std::vector<ConfidenceBounds> required_bounds(const Population& pop) {
  std::vector<ConfidenceBounds> out;
  out.reserve(pop.agents.size());
  for (const ValueSystem& a : pop.agents) {
    if (!a.bounds || !a.bounds->positive())
      throw std::invalid_argument("network: agent '" + a.agent_id +
                                  "' is missing strictly positive confidence bounds");
    out.push_back(*a.bounds);
  }
  return out;
}

// Both strict bound tests on squared distances (avoids the square roots).
bool within_bounds(const DecisionMatrix& xi, const WeightVector& wi,
                   const DecisionMatrix& xj, const WeightVector& wj,
                   const ConfidenceBounds& bi, const ConfidenceBounds& bj) {
  const double gw = std::min(bi.gamma_omega, bj.gamma_omega);
  if (!((wi - wj).squaredNorm() < gw * gw)) return false;
  const double gx = std::min(bi.gamma_x, bj.gamma_x);
  return (xi - xj).squaredNorm() < gx * gx;
}

}  // namespace

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n, 0);
  for (const auto& [i, j] : edges) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

int Graph::max_degree() const {
  const std::vector<int> deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  return adj;
}

Graph initial_edges(const Population& pop) {
  const int n = pop.size();
  const std::vector<ConfidenceBounds> bounds = required_bounds(pop);
  Graph g = Graph::empty(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (within_bounds(pop.agents[i].matrix, pop.agents[i].weights, pop.agents[j].matrix,
                        pop.agents[j].weights, bounds[i], bounds[j]))
        g.edges.emplace_back(i, j);
  return g;
}

double compute_epsilon(const Graph& g, const std::optional<double>& fixed_value) {
  const int max_deg = g.max_degree();
  if (!fixed_value) {
    return max_deg == 0 ? 0.0 : 1.0 / static_cast<double>(max_deg + 1);
  }
  const double eps = *fixed_value;
  if (!std::isfinite(eps) || eps <= 0.0)
    throw std::invalid_argument("compute_epsilon: fixed epsilon must be > 0");
  if (max_deg >= 1 && !(eps < 1.0 / static_cast<double>(max_deg)))
    throw std::invalid_argument("compute_epsilon: fixed epsilon violates epsilon < 1/max_degree");
  return eps;
}

Graph update_neighbors(const Population& pop, const std::vector<AgentState>& states,
                       const Graph& previous, const DiscoveryStrategy& discovery) {
  const int n = pop.size();
  if (static_cast<int>(states.size()) != n)
    throw std::invalid_argument("update_neighbors: states/population size mismatch");
  const std::vector<ConfidenceBounds> bounds = required_bounds(pop);

  auto keep = [&](int i, int j) {
    return within_bounds(states[i].x, states[i].omega, states[j].x, states[j].omega,
                         bounds[i], bounds[j]);
  };

  Graph g = Graph::empty(n);
  if (std::holds_alternative<FullAccess>(discovery)) {
    // Candidates are all pairs; the previous edge set is irrelevant.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (keep(i, j)) g.edges.emplace_back(i, j);
    return g;
  }

  std::vector<std::pair<int, int>> candidates = previous.edges;
  if (const auto* fixed = std::get_if<FixedCandidates>(&discovery)) {
    if (static_cast<int>(fixed->candidates.size()) != n)
      throw std::invalid_argument("update_neighbors: candidate list size mismatch");
    // A pair discovered by either endpoint is tested once; the resulting edge
    // is mutual or absent.
    for (int i = 0; i < n; ++i)
      for (int j : fixed->candidates[i]) {
        if (j < 0 || j >= n)
          throw std::invalid_argument("update_neighbors: candidate index out of range");
        if (j != i) candidates.emplace_back(std::min(i, j), std::max(i, j));
      }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& [i, j] : candidates)
    if (keep(i, j)) g.edges.emplace_back(i, j);
  return g;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  UnionFind uf(g.n);
  for (const auto& [i, j] : g.edges) uf.unite(i, j);

  std::vector<std::vector<int>> by_root(g.n);
  for (int i = 0; i < g.n; ++i) by_root[uf.find(i)].push_back(i);

  std::vector<std::vector<int>> components;
  for (auto& block : by_root)
    if (!block.empty()) components.push_back(std::move(block));
  return components;  // roots visited in index order => sorted by smallest member
}

}  // namespace vsa
