#include "vsa/mcdm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vsa {

Ranking topsis_rank(const Eigen::Ref<const DecisionMatrix>& x,
                    const Eigen::Ref<const WeightVector>& omega, double tie_tol) {
  const Eigen::Index rows = x.rows(), cols = x.cols();
  if (rows < 1) throw std::invalid_argument("topsis_rank: need at least one alternative");
  if (omega.size() != cols) throw std::invalid_argument("topsis_rank: weight length mismatch");
  if (tie_tol < 0.0) throw std::invalid_argument("topsis_rank: negative tie tolerance");

  // Vector normalization, then weighting. A zero column carries no signal and
  // is left at zero instead of dividing by its vanishing norm.
  Eigen::MatrixXd weighted(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double norm = x.col(j).norm();
    weighted.col(j) = norm > 0.0 ? (x.col(j) * (omega(j) / norm)).eval()
                                 : Eigen::VectorXd::Zero(rows).eval();
  }
  const Eigen::RowVectorXd ideal = weighted.colwise().maxCoeff();
  const Eigen::RowVectorXd anti = weighted.colwise().minCoeff();

  Ranking ranking;
  ranking.closeness.resize(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double d_plus = (weighted.row(k) - ideal).norm();
    const double d_minus = (weighted.row(k) - anti).norm();
    ranking.closeness(k) =
        (d_plus + d_minus) > 0.0 ? d_minus / (d_plus + d_minus) : 0.5;
  }

  std::vector<int> order(static_cast<size_t>(rows));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (ranking.closeness(a) != ranking.closeness(b))
      return ranking.closeness(a) > ranking.closeness(b);
    return a < b;
  });

  for (int idx : order) {
    const bool new_group =
        ranking.groups.empty() ||
        ranking.closeness(ranking.groups.back().front()) - ranking.closeness(idx) > tie_tol;
    if (new_group)
      ranking.groups.push_back({idx});
    else
      ranking.groups.back().push_back(idx);
  }
  for (auto& group : ranking.groups) std::sort(group.begin(), group.end());
  return ranking;
}

std::string ranking_notation(const Ranking& ranking) {
  std::string out;
  for (auto it = ranking.groups.rbegin(); it != ranking.groups.rend(); ++it) {
    if (!out.empty()) out += " < ";
    for (size_t m = 0; m < it->size(); ++m) {
      if (m > 0) out += " ~ ";
      out += "o" + std::to_string((*it)[m] + 1);
    }
  }
  return out;
}

}  // namespace vsa
