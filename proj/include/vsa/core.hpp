#pragma once

#include <Eigen/Core>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsa {

// Rows are alternatives, columns are values: entry (k, j) scores alternative k
// under value j. All file formats use this orientation.
using DecisionMatrix = Eigen::MatrixXd;

// Point of the probability simplex over the values.
using WeightVector = Eigen::VectorXd;

// Compact evaluation interval shared by every matrix entry.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool valid() const;
};

// Per-agent acceptance radii: gamma_x in Frobenius distance over decision
// matrices, gamma_omega in Euclidean distance over weight vectors.
struct ConfidenceBounds {
  double gamma_x = 0.0;
  double gamma_omega = 0.0;

  bool positive() const;
};

struct ValueSystem {
  std::string agent_id;
  DecisionMatrix matrix;   // |A| x |V|
  WeightVector weights;    // length |V|
  std::optional<ConfidenceBounds> bounds;
  std::map<std::string, std::string> meta;  // free-form labels (e.g. planted cluster)
};

struct Population {
  std::vector<std::string> values;
  std::vector<std::string> alternatives;
  Interval interval;
  std::vector<ValueSystem> agents;

  int num_values() const { return static_cast<int>(values.size()); }
  int num_alternatives() const { return static_cast<int>(alternatives.size()); }
  int size() const { return static_cast<int>(agents.size()); }
};

// An agent's mutable view during a run: current iterates plus neighbor set.
struct AgentState {
  DecisionMatrix x;
  WeightVector omega;
  std::vector<int> neighbors;
};

struct Violation {
  std::string agent_id;  // empty for population-level problems
  std::string path;      // e.g. "agents[2].weights"
  std::string message;
};

// A stored weight vector must sum to 1 within this tolerance.
inline constexpr double kWeightSumTol = 1e-9;
// A sum deviation below this is repaired by renormalization at ingest;
// anything larger is rejected rather than silently fixed.
inline constexpr double kWeightSumRepairLimit = 1e-6;

// Checks every invariant: shapes, interval membership, open-simplex weights
// (strictly inside (0,1), sum within kWeightSumTol), unique ids, positive
// bounds where present. Violations are data, not failures: the list is empty
// iff the population is valid. Side-effect free and idempotent.
std::vector<Violation> validate_population(const Population& pop);

// Divides an agent's weights by their sum when the deviation from 1 lies in
// (kWeightSumTol, kWeightSumRepairLimit). Returns true when weights changed.
bool renormalize_weights(ValueSystem& agent);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Renders "agent 'x': path: message" (or "population: ..." without an id).
std::string to_string(const Violation& v);

}  // namespace vsa
