#include "vsa/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace vsa {

WeightVector project_simplex(const Eigen::Ref<const WeightVector>& v) {
  const auto n = v.size();
  if (n < 1) throw std::invalid_argument("project_simplex: empty vector");
  if (!v.allFinite()) throw std::invalid_argument("project_simplex: non-finite entries");

  // Sort-and-threshold: find the largest active set whose shifted entries
  // stay positive, then clip at the corresponding threshold.
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double tau = u[0] - 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += u[k];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) tau = t;
  }
  return (v.array() - tau).max(0.0);
}

double quantile(std::vector<double> data, double q) {
  if (data.empty()) throw std::invalid_argument("quantile: empty data");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q outside [0, 1]");
  std::sort(data.begin(), data.end());
  const double pos = q * static_cast<double>(data.size() - 1);
  const auto lo = static_cast<size_t>(pos);
  if (lo + 1 >= data.size()) return data.back();
  const double frac = pos - static_cast<double>(lo);
  return data[lo] + frac * (data[lo + 1] - data[lo]);
}

PairwiseDistances pairwise_distances(const Population& pop) {
  const int n = pop.size();
  PairwiseDistances d;
  d.matrix_distances.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  d.weight_distances.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      d.matrix_distances.push_back(
          frobenius_distance(pop.agents[i].matrix, pop.agents[j].matrix));
      d.weight_distances.push_back(
          euclidean_distance(pop.agents[i].weights, pop.agents[j].weights));
    }
  std::sort(d.matrix_distances.begin(), d.matrix_distances.end());
  std::sort(d.weight_distances.begin(), d.weight_distances.end());
  return d;
}

ConfidenceBounds derive_confidence_bounds(const Population& pop, BoundsLevel level) {
  if (pop.size() < 2)
    throw std::invalid_argument("derive_confidence_bounds: need at least 2 agents");
  double q = 1.0;
  switch (level) {
    case BoundsLevel::Q1: q = 0.25; break;
    case BoundsLevel::Q2: q = 0.50; break;
    case BoundsLevel::Q3: q = 0.75; break;
    case BoundsLevel::Max: q = 1.0; break;
  }
  const PairwiseDistances d = pairwise_distances(pop);
  return {quantile(d.matrix_distances, q), quantile(d.weight_distances, q)};
}

}  // namespace vsa
