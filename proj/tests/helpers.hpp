#pragma once

// Shared fixtures and independent test-side oracles (finite differences,
// brute-force grid scans). These must stay independent of the library code
// paths they are used to check.

#include <functional>
#include <random>

#include "vsa/core.hpp"

namespace vsatest {

// The four-friends travel population: V = {P, T, S}, A = {PC, CS}, I = [1, 7].
inline vsa::Population example1() {
  vsa::Population pop;
  pop.values = {"P", "T", "S"};
  pop.alternatives = {"PC", "CS"};
  pop.interval = {1.0, 7.0};

  auto agent = [](std::string id, std::initializer_list<double> flat,
                  std::initializer_list<double> weights) {
    vsa::ValueSystem vs;
    vs.agent_id = std::move(id);
    vs.matrix.resize(2, 3);
    auto it = flat.begin();
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 3; ++j) vs.matrix(k, j) = *it++;
    vs.weights.resize(3);
    auto wt = weights.begin();
    for (int j = 0; j < 3; ++j) vs.weights(j) = *wt++;
    return vs;
  };
  pop.agents.push_back(agent("1", {7, 7, 7, 1, 1, 1}, {0.4, 0.4, 0.2}));
  pop.agents.push_back(agent("2", {6, 3, 3, 2, 5, 5}, {0.2, 0.2, 0.6}));
  pop.agents.push_back(agent("3", {2, 1, 3, 6, 7, 3}, {0.5, 0.2, 0.3}));
  pop.agents.push_back(agent("4", {1, 1, 1, 7, 7, 7}, {0.3, 0.3, 0.4}));
  return pop;
}

inline void set_uniform_bounds(vsa::Population& pop, double gamma_x, double gamma_omega) {
  for (auto& a : pop.agents) a.bounds = vsa::ConfidenceBounds{gamma_x, gamma_omega};
}

// Simplex point bounded away from the corners so (1 - w)^-2 stays tame.
inline vsa::WeightVector random_simplex(std::mt19937_64& rng, int dim, double max_coord = 0.9) {
  std::exponential_distribution<double> exp_dist(1.0);
  vsa::WeightVector w(dim);
  while (true) {
    double sum = 0.0;
    for (int j = 0; j < dim; ++j) {
      w(j) = exp_dist(rng);
      sum += w(j);
    }
    w /= sum;
    if (w.minCoeff() > 1e-4 && w.maxCoeff() < max_coord) return w;
  }
}

inline vsa::Population random_population(std::mt19937_64& rng, int n, int num_alternatives,
                                         int num_values, vsa::Interval interval = {0.0, 1.0}) {
  vsa::Population pop;
  for (int j = 0; j < num_values; ++j) pop.values.push_back("v" + std::to_string(j + 1));
  for (int k = 0; k < num_alternatives; ++k)
    pop.alternatives.push_back("o" + std::to_string(k + 1));
  pop.interval = interval;
  std::uniform_real_distribution<double> entry(interval.lo, interval.hi);
  for (int i = 0; i < n; ++i) {
    vsa::ValueSystem vs;
    vs.agent_id = "a" + std::to_string(i);
    vs.matrix.resize(num_alternatives, num_values);
    for (int k = 0; k < num_alternatives; ++k)
      for (int j = 0; j < num_values; ++j) vs.matrix(k, j) = entry(rng);
    vs.weights = random_simplex(rng, num_values);
    pop.agents.push_back(std::move(vs));
  }
  return pop;
}

// Central finite difference of a scalar function of one matrix entry.
inline double central_difference(const std::function<double(const vsa::DecisionMatrix&)>& f,
                                 vsa::DecisionMatrix at, int k, int j, double h) {
  at(k, j) += h;
  const double up = f(at);
  at(k, j) -= 2.0 * h;
  const double down = f(at);
  return (up - down) / (2.0 * h);
}

inline double central_difference_vec(const std::function<double(const vsa::WeightVector&)>& f,
                                     vsa::WeightVector at, int j, double h) {
  at(j) += h;
  const double up = f(at);
  at(j) -= 2.0 * h;
  const double down = f(at);
  return (up - down) / (2.0 * h);
}

// Exhaustive minimizer of the Euclidean distance from `target` over the
// simplex grid with the given spacing; dimension 2 or 3 only.
inline vsa::WeightVector grid_closest_simplex_point(const vsa::WeightVector& target,
                                                    double resolution) {
  const int dim = static_cast<int>(target.size());
  const long steps = std::lround(1.0 / resolution);
  vsa::WeightVector best(dim), candidate(dim);
  double best_d2 = std::numeric_limits<double>::infinity();
  if (dim == 2) {
    for (long a = 0; a <= steps; ++a) {
      candidate(0) = static_cast<double>(a) / static_cast<double>(steps);
      candidate(1) = 1.0 - candidate(0);
      const double d2 = (candidate - target).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = candidate;
      }
    }
    return best;
  }
  for (long a = 0; a <= steps; ++a)
    for (long b = 0; b <= steps - a; ++b) {
      candidate(0) = static_cast<double>(a) / static_cast<double>(steps);
      candidate(1) = static_cast<double>(b) / static_cast<double>(steps);
      candidate(2) = 1.0 - candidate(0) - candidate(1);
      const double d2 = (candidate - target).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = candidate;
      }
    }
  return best;
}

}  // namespace vsatest
