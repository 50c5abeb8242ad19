#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vsa/core.hpp"
#include "vsa/solver.hpp"

namespace vsa {

struct DistributionSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct AgentUtilities {
  std::string agent_id;
  int group = 0;
  double matrix_utility = 0.0;
  double weight_utility = 0.0;
};

// Per-agent utilities under the agreed system of the agent's own group, plus
// distribution summaries. Agents in singleton groups score exactly zero.
struct UtilityReport {
  std::vector<AgentUtilities> agents;
  DistributionSummary matrix_summary;
  DistributionSummary weight_summary;
};

UtilityReport utility_report(const Population& pop, const Partition& partition);

// Group sizes plus the mean pairwise distances between group members'
// ORIGINAL value systems, pooled over all within-group pairs across groups.
// Absent when every group is a singleton (no pairs).
struct PartitionSummary {
  int group_count = 0;
  std::vector<int> group_sizes;
  std::optional<double> avg_matrix_distance;
  std::optional<double> avg_weight_distance;
};

PartitionSummary partition_summary(const Population& pop, const Partition& partition);

}  // namespace vsa
