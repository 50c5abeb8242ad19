#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsa/analysis.hpp"
#include "vsa/core.hpp"
#include "vsa/geometry.hpp"
#include "vsa/solver.hpp"

namespace vsa {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- population files -------------------------------------------------------
//
// JSON document: values[], alternatives[], interval [lo, hi], agents[] with
// {id, matrix (row-major, |A| rows of |V| reals), weights[], optional
// bounds {matrix, weights}, optional string-valued meta{}}.

Population population_from_json(const nlohmann::json& doc);
nlohmann::json population_to_json(const Population& pop);

// Parses, repairs benign weight-sum drift (see renormalize_weights), and
// validates; throws ValidationError listing every violation.
Population parse_population(const std::filesystem::path& path);
void write_population(const std::filesystem::path& path, const Population& pop);

// --- run configuration ------------------------------------------------------

enum class BoundsMode { PerAgent, Q1, Q2, Q3, Max };
enum class DiscoveryMode { Full, None };

struct RunConfig {
  BoundsMode bounds_mode = BoundsMode::PerAgent;
  DiscoveryMode discovery = DiscoveryMode::Full;
  std::optional<double> fixed_epsilon;  // empty = auto
  StepsizeSchedule schedule;
  StoppingConfig stopping;
  std::uint64_t seed = 0;
  bool trace_enabled = false;
};

// Relative margin added to derived maxima so the max level links the pair
// realizing the maximum despite the strict "<" edge test.
inline constexpr double kMaxBoundsMargin = 1e-9;

// PerAgent: requires every agent to carry bounds from the input file.
// Quantile levels: derives one global pair, applies it to every agent
// (overwriting file bounds), and returns it; Max additionally applies the
// relative margin above.
std::optional<ConfidenceBounds> apply_bounds_mode(Population& pop, BoundsMode mode);

DiscoveryStrategy make_discovery(DiscoveryMode mode);

std::string to_string(BoundsMode mode);
std::string to_string(DiscoveryMode mode);
BoundsMode bounds_mode_from_string(const std::string& s);
DiscoveryMode discovery_mode_from_string(const std::string& s);

// --- result files -----------------------------------------------------------

struct GroupRecord {
  int group_id = 0;
  std::vector<std::string> member_ids;
  DecisionMatrix x_star;
  WeightVector omega_star;
  DecisionMatrix oracle_x_star;
  WeightVector oracle_omega_star;
  double max_oracle_gap = 0.0;
  bool omega_on_boundary = false;
};

struct ResultDocument {
  RunConfig config;
  std::vector<std::string> values;
  std::vector<std::string> alternatives;
  Interval interval;
  int agent_count = 0;
  std::optional<ConfidenceBounds> applied_bounds;  // set when derived globally
  bool max_margin_applied = false;
  bool converged = false;
  long iterations = 0;
  std::vector<GroupRecord> partition;
  UtilityReport report;
  PartitionSummary summary;
};

ResultDocument make_result_document(const Population& pop, const RunConfig& config,
                                    const RunResult& run,
                                    const std::optional<ConfidenceBounds>& applied_bounds);

nlohmann::json result_to_json(const ResultDocument& doc);
ResultDocument result_from_json(const nlohmann::json& doc);
ResultDocument read_result(const std::filesystem::path& path);
void write_result(const std::filesystem::path& path, const ResultDocument& doc);

// One CSV row per iteration: t,alpha,epsilon,edge_count,component_count,
// max_dx,max_domega,max_consensus_residual.
void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);

// --- synthetic populations --------------------------------------------------

// Planted-cluster generator: cluster centers drawn uniformly (matrix entries
// in the interval, weights on the simplex) and re-drawn until pairwise
// Frobenius separation holds; members are centers plus uniform noise,
// projected back to the feasible sets. Weight noise is scaled by the interval
// width so one knob perturbs both spaces comparably. Deterministic in seed;
// cluster labels land in agent meta.
struct SynthSpec {
  int clusters = 2;
  int per_cluster = 5;
  int num_values = 3;
  int num_alternatives = 2;
  Interval interval{1.0, 7.0};
  double separation = 6.0;
  double noise = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

Population synth_population(const SynthSpec& spec);

}  // namespace vsa
