#include "vsa/analysis.hpp"

#include <numeric>
#include <stdexcept>

#include "vsa/geometry.hpp"
#include "vsa/utility.hpp"

namespace vsa {

namespace {

DistributionSummary summarize(std::vector<double> data) {
  DistributionSummary s;
  if (data.empty()) return s;
  s.mean = std::accumulate(data.begin(), data.end(), 0.0) / static_cast<double>(data.size());
  s.min = quantile(data, 0.0);
  s.q1 = quantile(data, 0.25);
  s.median = quantile(data, 0.5);
  s.q3 = quantile(data, 0.75);
  s.max = quantile(data, 1.0);
  return s;
}

void check_partition(const Population& pop, const Partition& partition) {
  if (static_cast<int>(partition.group_of.size()) != pop.size())
    throw std::invalid_argument("analysis: partition does not cover the population");
  for (int g : partition.group_of)
    if (g < 0 || g >= static_cast<int>(partition.groups.size()))
      throw std::invalid_argument("analysis: agent with invalid group index");
}

}  // namespace

UtilityReport utility_report(const Population& pop, const Partition& partition) {
  check_partition(pop, partition);
  UtilityReport report;
  std::vector<double> mu, wu;
  mu.reserve(pop.agents.size());
  wu.reserve(pop.agents.size());
  for (size_t i = 0; i < pop.agents.size(); ++i) {
    const Group& group = partition.groups[partition.group_of[i]];
    AgentUtilities entry;
    entry.agent_id = pop.agents[i].agent_id;
    entry.group = partition.group_of[i];
    entry.matrix_utility = matrix_utility(pop.agents[i], group.x_star);
    entry.weight_utility = weight_utility(pop.agents[i], group.omega_star);
    mu.push_back(entry.matrix_utility);
    wu.push_back(entry.weight_utility);
    report.agents.push_back(std::move(entry));
  }
  report.matrix_summary = summarize(std::move(mu));
  report.weight_summary = summarize(std::move(wu));
  return report;
}

PartitionSummary partition_summary(const Population& pop, const Partition& partition) {
  check_partition(pop, partition);
  PartitionSummary summary;
  summary.group_count = static_cast<int>(partition.groups.size());

  double sum_x = 0.0, sum_omega = 0.0;
  long pairs = 0;
  for (const Group& group : partition.groups) {
    summary.group_sizes.push_back(static_cast<int>(group.members.size()));
    for (size_t a = 0; a < group.members.size(); ++a)
      for (size_t b = a + 1; b < group.members.size(); ++b) {
        const ValueSystem& va = pop.agents[group.members[a]];
        const ValueSystem& vb = pop.agents[group.members[b]];
        sum_x += frobenius_distance(va.matrix, vb.matrix);
        sum_omega += euclidean_distance(va.weights, vb.weights);
        ++pairs;
      }
  }
  if (pairs > 0) {
    summary.avg_matrix_distance = sum_x / static_cast<double>(pairs);
    summary.avg_weight_distance = sum_omega / static_cast<double>(pairs);
  }
  return summary;
}

}  // namespace vsa
