#pragma once

#include <string>
#include <vector>

#include "vsa/core.hpp"

namespace vsa {

// TOPSIS ranking of the alternatives of one agreed value system. All values
// are treated as benefit criteria (higher evaluation = better).
struct Ranking {
  // Tie groups from best to worst; indices inside a group ascend.
  std::vector<std::vector<int>> groups;
  // Relative closeness per alternative, each in [0, 1].
  Eigen::VectorXd closeness;
};

// Vector-normalize each column (all-zero columns stay zero), weight, measure
// Euclidean distances d+ / d- to the columnwise ideal and anti-ideal, and
// score C_k = d- / (d+ + d-), with C_k = 0.5 when both distances vanish.
// Alternatives are sorted by descending closeness; ties are grouped within
// tie_tol.
Ranking topsis_rank(const Eigen::Ref<const DecisionMatrix>& x,
                    const Eigen::Ref<const WeightVector>& omega, double tie_tol = 1e-9);

// ASCII rendering worst to best, e.g. "o4 < o6 < o5 ~ o3 < o1"; "~" joins ties.
std::string ranking_notation(const Ranking& ranking);

}  // namespace vsa
