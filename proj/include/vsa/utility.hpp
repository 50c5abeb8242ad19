#pragma once

#include <Eigen/Core>

#include "vsa/core.hpp"

namespace vsa {

// Individual utilities are negated weighted squared errors around the owner's
// own point: zero exactly there, strictly negative everywhere else, and
// strictly concave. The per-value scaling 1/(1 - omega_j) makes an agent more
// sensitive on the values it weights highly. Owners must carry weights
// strictly below 1 (enforced at population validation).

// u(X) = -sum_{k,j} ((x_kj - owner_kj) / (1 - owner_omega_j))^2
double matrix_utility(const ValueSystem& owner, const Eigen::Ref<const DecisionMatrix>& candidate);

// Ascent gradient of matrix_utility: entry (k,j) = -2 (x_kj - owner_kj) / (1 - owner_omega_j)^2.
DecisionMatrix matrix_utility_gradient(const ValueSystem& owner,
                                       const Eigen::Ref<const DecisionMatrix>& candidate);

// u(w) = -sum_j ((w_j - owner_omega_j) / (1 - owner_omega_j))^2
double weight_utility(const ValueSystem& owner, const Eigen::Ref<const WeightVector>& candidate);

// Ascent gradient of weight_utility: component j = -2 (w_j - owner_omega_j) / (1 - owner_omega_j)^2.
WeightVector weight_utility_gradient(const ValueSystem& owner,
                                     const Eigen::Ref<const WeightVector>& candidate);

}  // namespace vsa
