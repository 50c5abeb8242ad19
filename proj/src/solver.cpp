#include "vsa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vsa/geometry.hpp"
#include "vsa/oracle.hpp"
#include "vsa/utility.hpp"

namespace vsa {

void StepsizeSchedule::validate() const {
  if (!(std::isfinite(alpha0) && alpha0 > 0.0))
    throw std::invalid_argument("stepsize: alpha0 must be > 0");
  if (!(decay > 0.5 && decay <= 1.0))
    throw std::invalid_argument("stepsize: decay must lie in (0.5, 1]");
}

double stepsize(const StepsizeSchedule& schedule, long t) {
  schedule.validate();
  if (t < 0) throw std::invalid_argument("stepsize: negative iteration index");
  return schedule.alpha0 / std::pow(static_cast<double>(t) + 1.0, schedule.decay);
}

void StoppingConfig::validate() const {
  if (!(tol_x > 0.0 && tol_omega > 0.0 && consensus_tol > 0.0))
    throw std::invalid_argument("stopping: tolerances must be > 0");
  if (stable_window <= 0 || max_iters <= 0)
    throw std::invalid_argument("stopping: stable_window and max_iters must be > 0");
}

namespace {

// How far the states sit from their feasible sets; the projections should keep
// this at rounding error.
double feasibility_violation(const std::vector<AgentState>& states, const Interval& interval) {
  double worst = 0.0;
  for (const AgentState& s : states) {
    worst = std::max(worst, (interval.lo - s.x.minCoeff()));
    worst = std::max(worst, (s.x.maxCoeff() - interval.hi));
    worst = std::max(worst, -s.omega.minCoeff());
    worst = std::max(worst, std::abs(s.omega.sum() - 1.0));
  }
  return std::max(worst, 0.0);
}

bool all_finite(const std::vector<AgentState>& states) {
  for (const AgentState& s : states)
    if (!s.x.allFinite() || !s.omega.allFinite()) return false;
  return true;
}

// Largest edge distance, per metric, over the current graph.
std::pair<double, double> consensus_residuals(const std::vector<AgentState>& states,
                                              const Graph& graph) {
  double rx = 0.0, rw = 0.0;
  for (const auto& [i, j] : graph.edges) {
    rx = std::max(rx, frobenius_distance(states[i].x, states[j].x));
    rw = std::max(rw, euclidean_distance(states[i].omega, states[j].omega));
  }
  return {rx, rw};
}

}  // namespace

std::vector<AgentState> step(const std::vector<AgentState>& states, const Graph& graph,
                             double epsilon, double alpha, const Population& pop) {
  const int n = pop.size();
  if (static_cast<int>(states.size()) != n)
    throw std::invalid_argument("step: states/population size mismatch");
  const int max_deg = graph.max_degree();
  if (max_deg >= 1 && !(epsilon >= 0.0 && epsilon * max_deg < 1.0))
    throw std::invalid_argument("step: epsilon violates epsilon * max_degree < 1");

  const std::vector<std::vector<int>> adjacency = graph.adjacency();
  std::vector<AgentState> next(states.size());
  for (int i = 0; i < n; ++i) {
    DecisionMatrix cx = DecisionMatrix::Zero(states[i].x.rows(), states[i].x.cols());
    WeightVector cw = WeightVector::Zero(states[i].omega.size());
    for (int j : adjacency[i]) {
      cx += states[j].x - states[i].x;
      cw += states[j].omega - states[i].omega;
    }
    const DecisionMatrix gx = matrix_utility_gradient(pop.agents[i], states[i].x);
    const WeightVector gw = weight_utility_gradient(pop.agents[i], states[i].omega);
    if (!gx.allFinite() || !gw.allFinite())
      throw SolverError("step: non-finite gradient for agent '" + pop.agents[i].agent_id + "'");

    next[i].x = project_box(states[i].x + epsilon * cx + alpha * gx, pop.interval);
    next[i].omega = project_simplex(states[i].omega + epsilon * cw + alpha * gw);
    next[i].neighbors = adjacency[i];
  }
  return next;
}

RunResult run_aggregation(const Population& pop, const DiscoveryStrategy& discovery,
                          const StepsizeSchedule& schedule, const StoppingConfig& stopping,
                          const std::optional<double>& fixed_epsilon, bool record_trace) {
  schedule.validate();
  stopping.validate();
  if (const std::vector<Violation> violations = validate_population(pop); !violations.empty())
    throw ValidationError(violations);

  RunResult result;
  std::vector<AgentState> states;
  states.reserve(pop.agents.size());
  for (const ValueSystem& a : pop.agents) states.push_back({a.matrix, a.weights, {}});

  Graph graph = initial_edges(pop);
  {
    const std::vector<std::vector<int>> adjacency = graph.adjacency();
    for (size_t i = 0; i < states.size(); ++i) states[i].neighbors = adjacency[i];
  }
  if (record_trace) result.trace.reserve(std::min<long>(stopping.max_iters, 4096));

  int quiet_rounds = 0;
  for (long t = 0; t < stopping.max_iters; ++t) {
    const double epsilon = compute_epsilon(graph, fixed_epsilon);
    const double alpha = stepsize(schedule, t);
    result.max_eps_degree = std::max(result.max_eps_degree, epsilon * graph.max_degree());

    std::vector<AgentState> next;
    try {
      next = step(states, graph, epsilon, alpha, pop);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " at iteration " + std::to_string(t));
    }
    if (!all_finite(next))
      throw SolverError("run_aggregation: non-finite iterate at iteration " + std::to_string(t));

    const Graph next_graph = update_neighbors(pop, next, graph, discovery);

    double max_dx = 0.0, max_domega = 0.0;
    for (size_t i = 0; i < states.size(); ++i) {
      max_dx = std::max(max_dx, frobenius_distance(next[i].x, states[i].x));
      max_domega = std::max(max_domega, euclidean_distance(next[i].omega, states[i].omega));
    }
    const bool edges_unchanged = next_graph.edges == graph.edges;
    const auto [res_x, res_omega] = consensus_residuals(next, next_graph);
    result.max_feasibility_violation =
        std::max(result.max_feasibility_violation, feasibility_violation(next, pop.interval));

    if (record_trace) {
      TraceRecord rec;
      rec.t = t;
      rec.alpha = alpha;
      rec.epsilon = epsilon;
      rec.edge_count = static_cast<long>(next_graph.edges.size());
      rec.component_count = static_cast<int>(connected_components(next_graph).size());
      rec.max_dx = max_dx;
      rec.max_domega = max_domega;
      rec.max_consensus_residual = std::max(res_x, res_omega);
      rec.max_degree = graph.max_degree();
      result.trace.push_back(rec);
    }

    states = std::move(next);
    {
      const std::vector<std::vector<int>> adjacency = next_graph.adjacency();
      for (size_t i = 0; i < states.size(); ++i) states[i].neighbors = adjacency[i];
    }
    graph = next_graph;
    result.iterations = t + 1;

    const bool quiet = max_dx <= stopping.tol_x && max_domega <= stopping.tol_omega &&
                       edges_unchanged && res_x <= stopping.consensus_tol &&
                       res_omega <= stopping.consensus_tol;
    quiet_rounds = quiet ? quiet_rounds + 1 : 0;
    if (quiet_rounds >= stopping.stable_window) {
      result.converged = true;
      break;
    }
  }

  result.final_states = std::move(states);
  result.final_graph = std::move(graph);
  result.partition = extract_partition(pop, result.final_graph, result.final_states);
  return result;
}

Partition extract_partition(const Population& pop, const Graph& final_graph,
                            const std::vector<AgentState>& final_states) {
  if (static_cast<int>(final_states.size()) != pop.size() || final_graph.n != pop.size())
    throw std::invalid_argument("extract_partition: size mismatch");

  Partition partition;
  partition.group_of.assign(pop.agents.size(), -1);
  for (const std::vector<int>& block : connected_components(final_graph)) {
    Group group;
    group.members = block;

    DecisionMatrix mean_x =
        DecisionMatrix::Zero(final_states[block[0]].x.rows(), final_states[block[0]].x.cols());
    WeightVector mean_omega = WeightVector::Zero(final_states[block[0]].omega.size());
    std::vector<ValueSystem> members;
    members.reserve(block.size());
    for (int idx : block) {
      mean_x += final_states[idx].x;
      mean_omega += final_states[idx].omega;
      members.push_back(pop.agents[idx]);
    }
    const double count = static_cast<double>(block.size());
    group.x_star = project_box(mean_x / count, pop.interval);
    group.omega_star = project_simplex(mean_omega / count);
    group.omega_on_boundary = (group.omega_star.array() <= 1e-12).any();

    const GroupOptimum oracle = group_optimum(members, pop.interval);
    group.oracle_x_star = oracle.x_star;
    group.oracle_omega_star = oracle.omega_star;
    group.max_oracle_gap =
        std::max((group.x_star - oracle.x_star).cwiseAbs().maxCoeff(),
                 (group.omega_star - oracle.omega_star).cwiseAbs().maxCoeff());

    const int group_index = static_cast<int>(partition.groups.size());
    for (int idx : block) partition.group_of[idx] = group_index;
    partition.groups.push_back(std::move(group));
  }
  return partition;
}

}  // namespace vsa
