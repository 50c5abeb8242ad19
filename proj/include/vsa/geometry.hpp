#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

#include "vsa/core.hpp"

namespace vsa {

// Frobenius distance between equal-shape matrices.
template <typename DerivedA, typename DerivedB>
double frobenius_distance(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("frobenius_distance: shape mismatch");
  return (a.derived() - b.derived()).norm();
}

// Euclidean distance between equal-length vectors.
template <typename DerivedA, typename DerivedB>
double euclidean_distance(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size() || a.cols() != 1 || b.cols() != 1)
    throw std::invalid_argument("euclidean_distance: length mismatch");
  return (a.derived() - b.derived()).norm();
}

// Frobenius projection onto the box of matrices with entries in [lo, hi]
// (entrywise clamp). Identity on feasible points.
template <typename Derived>
DecisionMatrix project_box(const Eigen::MatrixBase<Derived>& m, const Interval& interval) {
  if (!interval.valid()) throw std::invalid_argument("project_box: invalid interval");
  if (!m.allFinite()) throw std::invalid_argument("project_box: non-finite entries");
  return m.derived().cwiseMax(interval.lo).cwiseMin(interval.hi);
}

// Euclidean projection onto the closed probability simplex {w >= 0, sum w = 1}.
WeightVector project_simplex(const Eigen::Ref<const WeightVector>& v);

// Linear-interpolation quantile of the data (position q * (n - 1) on the
// sorted sample); q = 0 is the minimum, q = 1 the maximum.
double quantile(std::vector<double> data, double q);

// All unordered-pair distances between agents' value systems, sorted ascending.
struct PairwiseDistances {
  std::vector<double> matrix_distances;  // Frobenius, n(n-1)/2 entries
  std::vector<double> weight_distances;  // Euclidean, n(n-1)/2 entries
};

PairwiseDistances pairwise_distances(const Population& pop);

enum class BoundsLevel { Q1, Q2, Q3, Max };

// One global (gamma_x, gamma_omega) pair: the chosen quantile of each pairwise
// distance multiset. Requires at least two agents. A population of identical
// agents yields the degenerate pair (0, 0), which downstream edge construction
// rejects.
ConfidenceBounds derive_confidence_bounds(const Population& pop, BoundsLevel level);

}  // namespace vsa
