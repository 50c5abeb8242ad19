#include "vsa/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vsa/geometry.hpp"
#include "vsa/utility.hpp"

namespace vsa {

namespace {

void require_members(std::span<const ValueSystem> members, const char* where) {
  if (members.empty()) throw std::invalid_argument(std::string(where) + ": empty member list");
}

// Per-member, per-value curvature weights (1 - omega_ij)^-2.
Eigen::MatrixXd curvature_weights(std::span<const ValueSystem> members) {
  const auto v = members[0].weights.size();
  Eigen::MatrixXd w(members.size(), v);
  for (size_t i = 0; i < members.size(); ++i) {
    const Eigen::ArrayXd margins = 1.0 - members[i].weights.array();
    if (!(margins > 0.0).all())
      throw std::invalid_argument("oracle: member weight at or above 1");
    w.row(i) = margins.square().inverse().matrix().transpose();
  }
  return w;
}

}  // namespace

DecisionMatrix group_optimum_matrix(std::span<const ValueSystem> members,
                                    const Interval& interval) {
  require_members(members, "group_optimum_matrix");
  const Eigen::Index rows = members[0].matrix.rows();
  const Eigen::Index cols = members[0].matrix.cols();
  const Eigen::MatrixXd w = curvature_weights(members);

  DecisionMatrix num = DecisionMatrix::Zero(rows, cols);
  Eigen::RowVectorXd den = Eigen::RowVectorXd::Zero(cols);
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i].matrix.rows() != rows || members[i].matrix.cols() != cols)
      throw std::invalid_argument("group_optimum_matrix: member shape mismatch");
    num += members[i].matrix.cwiseProduct(w.row(i).replicate(rows, 1));
    den += w.row(i);
  }
  const DecisionMatrix x_star = num.cwiseQuotient(den.replicate(rows, 1));
  return project_box(x_star, interval);  // clamp is a no-op for feasible members
}

WeightVector group_optimum_weights(std::span<const ValueSystem> members) {
  require_members(members, "group_optimum_weights");
  const auto v = members[0].weights.size();
  const Eigen::MatrixXd w = curvature_weights(members);

  // Column sums W_j and unconstrained per-coordinate means.
  Eigen::VectorXd total = Eigen::VectorXd::Zero(v);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(v);
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i].weights.size() != v)
      throw std::invalid_argument("group_optimum_weights: member length mismatch");
    total += w.row(i).transpose();
    mean += (w.row(i).transpose().array() * members[i].weights.array()).matrix();
  }
  mean.array() /= total.array();

  WeightVector omega = WeightVector::Zero(v);
  std::vector<bool> active(static_cast<size_t>(v), false);
  for (Eigen::Index round = 0; round < v; ++round) {
    double mean_sum = 0.0, shift_sum = 0.0;
    for (Eigen::Index j = 0; j < v; ++j)
      if (!active[j]) {
        mean_sum += mean(j);
        shift_sum += 1.0 / (2.0 * total(j));
      }
    if (shift_sum == 0.0)
      throw std::invalid_argument("group_optimum_weights: all coordinates eliminated");
    const double lambda = (mean_sum - 1.0) / shift_sum;

    bool clamped = false;
    for (Eigen::Index j = 0; j < v; ++j) {
      if (active[j]) {
        omega(j) = 0.0;
        continue;
      }
      omega(j) = mean(j) - lambda / (2.0 * total(j));
      if (omega(j) < 0.0) {
        active[j] = true;
        clamped = true;
      }
    }
    if (!clamped) break;
  }
  return omega;
}

GroupOptimum group_optimum(std::span<const ValueSystem> members, const Interval& interval) {
  GroupOptimum opt;
  opt.x_star = group_optimum_matrix(members, interval);
  opt.omega_star = group_optimum_weights(members);
  opt.objective = 0.0;
  for (const ValueSystem& m : members)
    opt.objective += matrix_utility(m, opt.x_star) + weight_utility(m, opt.omega_star);
  return opt;
}

WeightVector brute_force_weights_grid(std::span<const ValueSystem> members, double resolution) {
  require_members(members, "brute_force_weights_grid");
  const auto v = members[0].weights.size();
  if (v > 3) throw std::invalid_argument("brute_force_weights_grid: |V| > 3");
  if (resolution > 1e-2 || resolution <= 0.0)
    throw std::invalid_argument("brute_force_weights_grid: resolution must be in (0, 1e-2]");

  const auto steps = static_cast<long>(std::llround(1.0 / resolution));
  auto objective = [&members](const WeightVector& candidate) {
    double total = 0.0;
    for (const ValueSystem& m : members) total += weight_utility(m, candidate);
    return total;
  };

  WeightVector best = WeightVector::Zero(v);
  double best_value = -std::numeric_limits<double>::infinity();
  WeightVector candidate(v);
  if (v == 1) {
    candidate(0) = 1.0;
    return candidate;
  }
  if (v == 2) {
    for (long a = 0; a <= steps; ++a) {
      candidate(0) = static_cast<double>(a) / static_cast<double>(steps);
      candidate(1) = 1.0 - candidate(0);
      const double value = objective(candidate);
      if (value > best_value) {
        best_value = value;
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
      const double value = objective(candidate);
      if (value > best_value) {
        best_value = value;
        best = candidate;
      }
    }
  return best;
}

}  // namespace vsa
