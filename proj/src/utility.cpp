#include "vsa/utility.hpp"

#include <stdexcept>

namespace vsa {

namespace {

// Row vector of 1 - omega_j, validated strictly positive.
Eigen::RowVectorXd owner_margins(const ValueSystem& owner) {
  Eigen::RowVectorXd m = (1.0 - owner.weights.array()).matrix().transpose();
  if (!(m.array() > 0.0).all())
    throw std::invalid_argument("utility: owner weight at or above 1");
  return m;
}

void check_matrix_shape(const ValueSystem& owner,
                        const Eigen::Ref<const DecisionMatrix>& candidate) {
  if (candidate.rows() != owner.matrix.rows() || candidate.cols() != owner.matrix.cols())
    throw std::invalid_argument("utility: candidate matrix shape mismatch");
}

void check_weight_length(const ValueSystem& owner,
                         const Eigen::Ref<const WeightVector>& candidate) {
  if (candidate.size() != owner.weights.size())
    throw std::invalid_argument("utility: candidate weight length mismatch");
}

}  // namespace

double matrix_utility(const ValueSystem& owner,
                      const Eigen::Ref<const DecisionMatrix>& candidate) {
  check_matrix_shape(owner, candidate);
  const Eigen::RowVectorXd margins = owner_margins(owner);
  const Eigen::ArrayXXd scaled =
      (candidate - owner.matrix).array() / margins.replicate(candidate.rows(), 1).array();
  return -scaled.square().sum();
}

DecisionMatrix matrix_utility_gradient(const ValueSystem& owner,
                                       const Eigen::Ref<const DecisionMatrix>& candidate) {
  check_matrix_shape(owner, candidate);
  const Eigen::RowVectorXd margins = owner_margins(owner);
  const Eigen::MatrixXd inv_sq = margins.array().square().inverse().matrix().replicate(
      candidate.rows(), 1);
  return (-2.0 * (candidate - owner.matrix)).cwiseProduct(inv_sq);
}

double weight_utility(const ValueSystem& owner,
                      const Eigen::Ref<const WeightVector>& candidate) {
  check_weight_length(owner, candidate);
  const Eigen::ArrayXd margins = 1.0 - owner.weights.array();
  if (!(margins > 0.0).all())
    throw std::invalid_argument("utility: owner weight at or above 1");
  return -((candidate - owner.weights).array() / margins).square().sum();
}

WeightVector weight_utility_gradient(const ValueSystem& owner,
                                     const Eigen::Ref<const WeightVector>& candidate) {
  check_weight_length(owner, candidate);
  const Eigen::ArrayXd margins = 1.0 - owner.weights.array();
  if (!(margins > 0.0).all())
    throw std::invalid_argument("utility: owner weight at or above 1");
  return (-2.0 * (candidate - owner.weights).array() / margins.square()).matrix();
}

}  // namespace vsa
