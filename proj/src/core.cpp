#include "vsa/core.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace vsa {

bool Interval::valid() const {
  return std::isfinite(lo) && std::isfinite(hi) && lo < hi;
}

bool ConfidenceBounds::positive() const {
  return std::isfinite(gamma_x) && std::isfinite(gamma_omega) && gamma_x > 0.0 &&
         gamma_omega > 0.0;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::vector<Violation> validate_population(const Population& pop) {
  std::vector<Violation> out;
  auto flag = [&out](std::string agent, std::string path, std::string msg) {
    out.push_back({std::move(agent), std::move(path), std::move(msg)});
  };

  if (pop.values.empty()) flag("", "values", "population must define at least one value");
  if (pop.alternatives.empty())
    flag("", "alternatives", "population must define at least one alternative");
  if (pop.agents.empty()) flag("", "agents", "population must contain at least one agent");
  if (!pop.interval.valid())
    flag("", "interval",
         "interval [" + fmt(pop.interval.lo) + ", " + fmt(pop.interval.hi) +
             "] must be finite with lo < hi");

  std::set<std::string> seen;
  for (size_t i = 0; i < pop.agents.size(); ++i) {
    const ValueSystem& a = pop.agents[i];
    const std::string base = "agents[" + std::to_string(i) + "]";
    if (a.agent_id.empty()) flag(a.agent_id, base + ".id", "agent id must be non-empty");
    if (!seen.insert(a.agent_id).second)
      flag(a.agent_id, base + ".id", "duplicate agent id '" + a.agent_id + "'");

    const auto rows = static_cast<int>(pop.alternatives.size());
    const auto cols = static_cast<int>(pop.values.size());
    if (a.matrix.rows() != rows || a.matrix.cols() != cols) {
      flag(a.agent_id, base + ".matrix",
           "matrix is " + std::to_string(a.matrix.rows()) + "x" +
               std::to_string(a.matrix.cols()) + ", expected " + std::to_string(rows) +
               "x" + std::to_string(cols));
    } else if (pop.interval.valid()) {
      for (int k = 0; k < rows; ++k)
        for (int j = 0; j < cols; ++j) {
          const double x = a.matrix(k, j);
          if (!std::isfinite(x) || !pop.interval.contains(x))
            flag(a.agent_id,
                 base + ".matrix(" + std::to_string(k) + "," + std::to_string(j) + ")",
                 "entry " + fmt(x) + " out of interval [" + fmt(pop.interval.lo) + ", " +
                     fmt(pop.interval.hi) + "]");
        }
    }

    if (a.weights.size() != cols) {
      flag(a.agent_id, base + ".weights",
           "weights length " + std::to_string(a.weights.size()) + ", expected " +
               std::to_string(cols));
    } else {
      double sum = 0.0;
      for (int j = 0; j < cols; ++j) {
        const double w = a.weights(j);
        if (!std::isfinite(w) || w <= 0.0 || w >= 1.0)
          flag(a.agent_id, base + ".weights[" + std::to_string(j) + "]",
               "weight " + fmt(w) + " must lie strictly inside (0, 1)");
        sum += w;
      }
      if (std::abs(sum - 1.0) > kWeightSumTol)
        flag(a.agent_id, base + ".weights", "weights sum " + fmt(sum) + " != 1");
    }

    if (a.bounds && !a.bounds->positive())
      flag(a.agent_id, base + ".bounds",
           "confidence bounds (" + fmt(a.bounds->gamma_x) + ", " + fmt(a.bounds->gamma_omega) +
               ") must be finite and strictly positive");
  }
  return out;
}

bool renormalize_weights(ValueSystem& agent) {
  if (agent.weights.size() == 0) return false;
  const double sum = agent.weights.sum();
  if (!std::isfinite(sum) || sum <= 0.0) return false;
  const double dev = std::abs(sum - 1.0);
  if (dev <= kWeightSumTol || dev >= kWeightSumRepairLimit) return false;
  agent.weights /= sum;
  return true;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&violations] {
        std::string msg = "population validation failed:";
        for (const Violation& v : violations) msg += "\n  " + to_string(v);
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::string to_string(const Violation& v) {
  std::string who = v.agent_id.empty() ? "population" : "agent '" + v.agent_id + "'";
  return who + ": " + v.path + ": " + v.message;
}

}  // namespace vsa
