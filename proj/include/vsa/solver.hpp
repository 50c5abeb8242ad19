#pragma once

#include <optional>
#include <vector>

#include "vsa/core.hpp"
#include "vsa/network.hpp"

namespace vsa {

// Diminishing stepsize alpha(t) = alpha0 / (t+1)^decay. Decay in (0.5, 1]
// keeps the sum divergent and the sum of squares finite.
struct StepsizeSchedule {
  double alpha0 = 0.1;
  double decay = 1.0;

  void validate() const;
};

double stepsize(const StepsizeSchedule& schedule, long t);

struct StoppingConfig {
  double tol_x = 1e-6;         // per-agent X update norm threshold
  double tol_omega = 1e-6;     // per-agent Omega update norm threshold
  int stable_window = 50;      // consecutive quiet iterations required
  long max_iters = 100000;
  double consensus_tol = 1e-4; // max within-component edge distance

  void validate() const;
};

struct TraceRecord {
  long t = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  long edge_count = 0;
  int component_count = 0;
  double max_dx = 0.0;
  double max_domega = 0.0;
  double max_consensus_residual = 0.0;
  int max_degree = 0;  // in-memory only; the trace file keeps the fixed columns
};

// One block of the final partition with its agreed system (projected member
// mean of the final iterates) next to the independently solved optimum.
struct Group {
  std::vector<int> members;  // agent indices, ascending
  DecisionMatrix x_star;
  WeightVector omega_star;
  DecisionMatrix oracle_x_star;
  WeightVector oracle_omega_star;
  double max_oracle_gap = 0.0;    // max entrywise |agreed - oracle| over X and Omega
  bool omega_on_boundary = false; // agreed weight vector touches the simplex boundary
};

struct Partition {
  std::vector<Group> groups;
  std::vector<int> group_of;  // agent index -> group index
};

struct RunResult {
  std::vector<AgentState> final_states;
  Graph final_graph;
  Partition partition;
  long iterations = 0;
  bool converged = false;
  std::vector<TraceRecord> trace;            // filled when tracing was requested
  double max_eps_degree = 0.0;               // max over rounds of epsilon * max_degree
  double max_feasibility_violation = 0.0;    // distance of any iterate from its feasible set
};

// One synchronous round: every agent simultaneously applies the consensus
// term over its current neighbors plus the stepsize-scaled ascent gradient at
// its own iterate, then projects (box for X, simplex for Omega). Uses only
// time-t data; output states are feasible.
std::vector<AgentState> step(const std::vector<AgentState>& states, const Graph& graph,
                             double epsilon, double alpha, const Population& pop);

// Full aggregation loop: start every agent at its own value system on the
// initial bounded-confidence graph, then iterate {epsilon, step, rewire}
// until quiet or max_iters. Converged means: for stable_window consecutive
// rounds every X update stayed within tol_x, every Omega update within
// tol_omega, the edge set did not change, and within every component the
// largest edge distance was at most consensus_tol (both metrics).
RunResult run_aggregation(const Population& pop, const DiscoveryStrategy& discovery,
                          const StepsizeSchedule& schedule, const StoppingConfig& stopping,
                          const std::optional<double>& fixed_epsilon = {},
                          bool record_trace = false);

// Components of the final graph with agreed systems and the oracle optimum
// for every block.
Partition extract_partition(const Population& pop, const Graph& final_graph,
                            const std::vector<AgentState>& final_states);

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vsa
