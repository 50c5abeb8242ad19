#pragma once

#include <span>

#include "vsa/core.hpp"

namespace vsa {

// Independent closed-form / exhaustive solvers for the per-group optima
// (maximizers of the summed member utilities over the feasible sets), used to
// verify what the decentralized run converged to.

struct GroupOptimum {
  DecisionMatrix x_star;
  WeightVector omega_star;
  double objective = 0.0;  // summed member utilities at the optimum, always <= 0
};

// Entrywise weighted mean x*_kj = sum_i w_ij x_i,kj / sum_i w_ij with
// w_ij = (1 - omega_ij)^-2; a convex combination of feasible entries, so it
// lies inside the box before the safety clamp.
DecisionMatrix group_optimum_matrix(std::span<const ValueSystem> members,
                                    const Interval& interval);

// Weighted least squares on the simplex via the KKT conditions: shift the
// per-coordinate weighted means to meet the sum-to-one constraint, then clamp
// negative coordinates to zero and re-solve over the remaining free set
// (each round fixes at least one coordinate, so at most |V| rounds).
WeightVector group_optimum_weights(std::span<const ValueSystem> members);

GroupOptimum group_optimum(std::span<const ValueSystem> members, const Interval& interval);

// Exhaustive scan of the simplex grid with the given spacing, maximizing the
// summed weight utilities. Verification only: requires |V| <= 3 and
// resolution <= 1e-2.
WeightVector brute_force_weights_grid(std::span<const ValueSystem> members, double resolution);

}  // namespace vsa
