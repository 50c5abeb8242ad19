#include "vsa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "vsa/network.hpp"

namespace vsa {

namespace {

using nlohmann::json;

json matrix_to_json(const DecisionMatrix& m) {
  json rows = json::array();
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(k, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

DecisionMatrix matrix_from_json(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty())
    throw IoError(where + ": matrix must be a non-empty array of rows");
  const size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (cols == 0) throw IoError(where + ": matrix rows must be non-empty arrays");
  DecisionMatrix m(rows.size(), cols);
  for (size_t k = 0; k < rows.size(); ++k) {
    if (!rows[k].is_array() || rows[k].size() != cols)
      throw IoError(where + ": ragged matrix rows");
    for (size_t j = 0; j < cols; ++j) {
      if (!rows[k][j].is_number()) throw IoError(where + ": matrix entries must be numbers");
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = rows[k][j].get<double>();
    }
  }
  return m;
}

json vector_to_json(const WeightVector& v) {
  json out = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(v(j));
  return out;
}

WeightVector vector_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty())
    throw IoError(where + ": expected a non-empty array of numbers");
  WeightVector v(arr.size());
  for (size_t j = 0; j < arr.size(); ++j) {
    if (!arr[j].is_number()) throw IoError(where + ": entries must be numbers");
    v(static_cast<Eigen::Index>(j)) = arr[j].get<double>();
  }
  return v;
}

std::vector<std::string> strings_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw IoError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const json& s : arr) {
    if (!s.is_string()) throw IoError(where + ": entries must be strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

const json& require_key(const json& doc, const char* key, const std::string& where) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw IoError(where + ": missing required key '" + key + "'");
  return *it;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw IoError("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return doc;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// Shortest-round-trip-ish fixed formatting keeps trace files byte-stable.
std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

Population population_from_json(const json& doc) {
  if (!doc.is_object()) throw IoError("population: top-level document must be an object");
  Population pop;
  pop.values = strings_from_json(require_key(doc, "values", "population"), "population.values");
  pop.alternatives = strings_from_json(require_key(doc, "alternatives", "population"),
                                       "population.alternatives");
  const json& interval = require_key(doc, "interval", "population");
  if (!interval.is_array() || interval.size() != 2 || !interval[0].is_number() ||
      !interval[1].is_number())
    throw IoError("population.interval: expected [lo, hi]");
  pop.interval = {interval[0].get<double>(), interval[1].get<double>()};

  const json& agents = require_key(doc, "agents", "population");
  if (!agents.is_array()) throw IoError("population.agents: expected an array");
  for (size_t i = 0; i < agents.size(); ++i) {
    const std::string where = "agents[" + std::to_string(i) + "]";
    const json& a = agents[i];
    if (!a.is_object()) throw IoError(where + ": expected an object");
    ValueSystem vs;
    const json& id = require_key(a, "id", where);
    if (!id.is_string()) throw IoError(where + ".id: expected a string");
    vs.agent_id = id.get<std::string>();
    vs.matrix = matrix_from_json(require_key(a, "matrix", where), where + ".matrix");
    vs.weights = vector_from_json(require_key(a, "weights", where), where + ".weights");
    if (const auto it = a.find("bounds"); it != a.end() && !it->is_null()) {
      if (!it->is_object()) throw IoError(where + ".bounds: expected an object");
      ConfidenceBounds b;
      b.gamma_x = require_key(*it, "matrix", where + ".bounds").get<double>();
      b.gamma_omega = require_key(*it, "weights", where + ".bounds").get<double>();
      vs.bounds = b;
    }
    if (const auto it = a.find("meta"); it != a.end() && !it->is_null()) {
      if (!it->is_object()) throw IoError(where + ".meta: expected an object");
      for (const auto& [key, value] : it->items()) {
        if (!value.is_string()) throw IoError(where + ".meta: values must be strings");
        vs.meta[key] = value.get<std::string>();
      }
    }
    pop.agents.push_back(std::move(vs));
  }
  return pop;
}

json population_to_json(const Population& pop) {
  json doc;
  doc["values"] = pop.values;
  doc["alternatives"] = pop.alternatives;
  doc["interval"] = {pop.interval.lo, pop.interval.hi};
  json agents = json::array();
  for (const ValueSystem& a : pop.agents) {
    json entry;
    entry["id"] = a.agent_id;
    entry["matrix"] = matrix_to_json(a.matrix);
    entry["weights"] = vector_to_json(a.weights);
    if (a.bounds) entry["bounds"] = {{"matrix", a.bounds->gamma_x}, {"weights", a.bounds->gamma_omega}};
    if (!a.meta.empty()) entry["meta"] = a.meta;
    agents.push_back(std::move(entry));
  }
  doc["agents"] = std::move(agents);
  return doc;
}

Population parse_population(const std::filesystem::path& path) {
  Population pop;
  try {
    pop = population_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw IoError("malformed population in '" + path.string() + "': " + e.what());
  }
  for (ValueSystem& a : pop.agents) renormalize_weights(a);
  if (std::vector<Violation> violations = validate_population(pop); !violations.empty())
    throw ValidationError(std::move(violations));
  return pop;
}

void write_population(const std::filesystem::path& path, const Population& pop) {
  write_text_file(path, population_to_json(pop).dump(2) + "\n");
}

std::optional<ConfidenceBounds> apply_bounds_mode(Population& pop, BoundsMode mode) {
  if (mode == BoundsMode::PerAgent) {
    std::vector<Violation> missing;
    for (size_t i = 0; i < pop.agents.size(); ++i)
      if (!pop.agents[i].bounds || !pop.agents[i].bounds->positive())
        missing.push_back({pop.agents[i].agent_id, "agents[" + std::to_string(i) + "].bounds",
                           "per-agent bounds mode requires strictly positive bounds"});
    if (!missing.empty()) throw ValidationError(std::move(missing));
    return std::nullopt;
  }
  BoundsLevel level = BoundsLevel::Max;
  switch (mode) {
    case BoundsMode::Q1: level = BoundsLevel::Q1; break;
    case BoundsMode::Q2: level = BoundsLevel::Q2; break;
    case BoundsMode::Q3: level = BoundsLevel::Q3; break;
    default: break;
  }
  ConfidenceBounds bounds = derive_confidence_bounds(pop, level);
  if (mode == BoundsMode::Max) {
    bounds.gamma_x *= 1.0 + kMaxBoundsMargin;
    bounds.gamma_omega *= 1.0 + kMaxBoundsMargin;
  }
  for (ValueSystem& a : pop.agents) a.bounds = bounds;
  return bounds;
}

DiscoveryStrategy make_discovery(DiscoveryMode mode) {
  if (mode == DiscoveryMode::Full) return FullAccess{};
  return NoDiscovery{};
}

std::string to_string(BoundsMode mode) {
  switch (mode) {
    case BoundsMode::PerAgent: return "file";
    case BoundsMode::Q1: return "q1";
    case BoundsMode::Q2: return "q2";
    case BoundsMode::Q3: return "q3";
    case BoundsMode::Max: return "max";
  }
  return "file";
}

std::string to_string(DiscoveryMode mode) {
  return mode == DiscoveryMode::Full ? "full" : "none";
}

BoundsMode bounds_mode_from_string(const std::string& s) {
  if (s == "file") return BoundsMode::PerAgent;
  if (s == "q1") return BoundsMode::Q1;
  if (s == "q2") return BoundsMode::Q2;
  if (s == "q3") return BoundsMode::Q3;
  if (s == "max") return BoundsMode::Max;
  throw IoError("unknown bounds mode '" + s + "' (expected q1|q2|q3|max|file)");
}

DiscoveryMode discovery_mode_from_string(const std::string& s) {
  if (s == "full") return DiscoveryMode::Full;
  if (s == "none") return DiscoveryMode::None;
  throw IoError("unknown discovery mode '" + s + "' (expected full|none)");
}

namespace {

json config_to_json(const RunConfig& config) {
  json c;
  c["bounds"] = to_string(config.bounds_mode);
  c["discovery"] = to_string(config.discovery);
  if (config.fixed_epsilon)
    c["epsilon"] = *config.fixed_epsilon;
  else
    c["epsilon"] = "auto";
  c["alpha0"] = config.schedule.alpha0;
  c["decay"] = config.schedule.decay;
  c["tol_x"] = config.stopping.tol_x;
  c["tol_omega"] = config.stopping.tol_omega;
  c["consensus_tol"] = config.stopping.consensus_tol;
  c["stable_window"] = config.stopping.stable_window;
  c["max_iters"] = config.stopping.max_iters;
  c["seed"] = config.seed;
  c["trace"] = config.trace_enabled;
  return c;
}

RunConfig config_from_json(const json& c) {
  RunConfig config;
  config.bounds_mode = bounds_mode_from_string(require_key(c, "bounds", "config").get<std::string>());
  config.discovery =
      discovery_mode_from_string(require_key(c, "discovery", "config").get<std::string>());
  const json& eps = require_key(c, "epsilon", "config");
  if (eps.is_number()) config.fixed_epsilon = eps.get<double>();
  config.schedule.alpha0 = require_key(c, "alpha0", "config").get<double>();
  config.schedule.decay = require_key(c, "decay", "config").get<double>();
  config.stopping.tol_x = require_key(c, "tol_x", "config").get<double>();
  config.stopping.tol_omega = require_key(c, "tol_omega", "config").get<double>();
  config.stopping.consensus_tol = require_key(c, "consensus_tol", "config").get<double>();
  config.stopping.stable_window = require_key(c, "stable_window", "config").get<int>();
  config.stopping.max_iters = require_key(c, "max_iters", "config").get<long>();
  config.seed = require_key(c, "seed", "config").get<std::uint64_t>();
  config.trace_enabled = require_key(c, "trace", "config").get<bool>();
  return config;
}

json summary_to_json(const PartitionSummary& s) {
  json out;
  out["group_count"] = s.group_count;
  out["group_sizes"] = s.group_sizes;
  out["avg_matrix_distance"] = s.avg_matrix_distance ? json(*s.avg_matrix_distance) : json();
  out["avg_weight_distance"] = s.avg_weight_distance ? json(*s.avg_weight_distance) : json();
  out["distance_convention"] = "pooled-pairs";
  return out;
}

PartitionSummary summary_from_json(const json& doc) {
  PartitionSummary s;
  s.group_count = require_key(doc, "group_count", "summary").get<int>();
  s.group_sizes = require_key(doc, "group_sizes", "summary").get<std::vector<int>>();
  const json& dx = require_key(doc, "avg_matrix_distance", "summary");
  if (dx.is_number()) s.avg_matrix_distance = dx.get<double>();
  const json& dw = require_key(doc, "avg_weight_distance", "summary");
  if (dw.is_number()) s.avg_weight_distance = dw.get<double>();
  return s;
}

json distribution_to_json(const DistributionSummary& s) {
  return json{{"min", s.min}, {"q1", s.q1},   {"median", s.median},
              {"q3", s.q3},   {"max", s.max}, {"mean", s.mean}};
}

DistributionSummary distribution_from_json(const json& doc) {
  DistributionSummary s;
  s.min = require_key(doc, "min", "summary").get<double>();
  s.q1 = require_key(doc, "q1", "summary").get<double>();
  s.median = require_key(doc, "median", "summary").get<double>();
  s.q3 = require_key(doc, "q3", "summary").get<double>();
  s.max = require_key(doc, "max", "summary").get<double>();
  s.mean = require_key(doc, "mean", "summary").get<double>();
  return s;
}

}  // namespace

ResultDocument make_result_document(const Population& pop, const RunConfig& config,
                                    const RunResult& run,
                                    const std::optional<ConfidenceBounds>& applied_bounds) {
  ResultDocument doc;
  doc.config = config;
  doc.values = pop.values;
  doc.alternatives = pop.alternatives;
  doc.interval = pop.interval;
  doc.agent_count = pop.size();
  doc.applied_bounds = applied_bounds;
  doc.max_margin_applied = config.bounds_mode == BoundsMode::Max;
  doc.converged = run.converged;
  doc.iterations = run.iterations;
  for (size_t g = 0; g < run.partition.groups.size(); ++g) {
    const Group& group = run.partition.groups[g];
    GroupRecord rec;
    rec.group_id = static_cast<int>(g);
    for (int idx : group.members) rec.member_ids.push_back(pop.agents[idx].agent_id);
    rec.x_star = group.x_star;
    rec.omega_star = group.omega_star;
    rec.oracle_x_star = group.oracle_x_star;
    rec.oracle_omega_star = group.oracle_omega_star;
    rec.max_oracle_gap = group.max_oracle_gap;
    rec.omega_on_boundary = group.omega_on_boundary;
    doc.partition.push_back(std::move(rec));
  }
  doc.report = utility_report(pop, run.partition);
  doc.summary = partition_summary(pop, run.partition);
  return doc;
}

json result_to_json(const ResultDocument& doc) {
  json out;
  out["config"] = config_to_json(doc.config);
  out["population"] = {{"values", doc.values},
                       {"alternatives", doc.alternatives},
                       {"interval", {doc.interval.lo, doc.interval.hi}},
                       {"agent_count", doc.agent_count}};
  if (doc.applied_bounds)
    out["applied_bounds"] = {{"gamma_x", doc.applied_bounds->gamma_x},
                             {"gamma_omega", doc.applied_bounds->gamma_omega},
                             {"max_margin_applied", doc.max_margin_applied}};
  else
    out["applied_bounds"] = json();
  out["converged"] = doc.converged;
  out["iterations"] = doc.iterations;

  json partition = json::array();
  for (const GroupRecord& g : doc.partition) {
    json entry;
    entry["group_id"] = g.group_id;
    entry["member_ids"] = g.member_ids;
    entry["x_star"] = matrix_to_json(g.x_star);
    entry["omega_star"] = vector_to_json(g.omega_star);
    entry["oracle_x_star"] = matrix_to_json(g.oracle_x_star);
    entry["oracle_omega_star"] = vector_to_json(g.oracle_omega_star);
    entry["max_oracle_gap"] = g.max_oracle_gap;
    entry["omega_on_boundary"] = g.omega_on_boundary;
    partition.push_back(std::move(entry));
  }
  out["partition"] = std::move(partition);

  json agents = json::array();
  for (const AgentUtilities& a : doc.report.agents)
    agents.push_back({{"id", a.agent_id},
                      {"group", a.group},
                      {"matrix_utility", a.matrix_utility},
                      {"weight_utility", a.weight_utility}});
  out["report"] = {{"agents", std::move(agents)},
                   {"matrix_utility_summary", distribution_to_json(doc.report.matrix_summary)},
                   {"weight_utility_summary", distribution_to_json(doc.report.weight_summary)},
                   {"partition_summary", summary_to_json(doc.summary)}};
  return out;
}

ResultDocument result_from_json(const json& in) {
  ResultDocument doc;
  doc.config = config_from_json(require_key(in, "config", "result"));
  const json& pop = require_key(in, "population", "result");
  doc.values = strings_from_json(require_key(pop, "values", "result.population"), "values");
  doc.alternatives =
      strings_from_json(require_key(pop, "alternatives", "result.population"), "alternatives");
  const json& interval = require_key(pop, "interval", "result.population");
  doc.interval = {interval.at(0).get<double>(), interval.at(1).get<double>()};
  doc.agent_count = require_key(pop, "agent_count", "result.population").get<int>();
  const json& bounds = require_key(in, "applied_bounds", "result");
  if (bounds.is_object()) {
    doc.applied_bounds = ConfidenceBounds{require_key(bounds, "gamma_x", "bounds").get<double>(),
                                          require_key(bounds, "gamma_omega", "bounds").get<double>()};
    doc.max_margin_applied = require_key(bounds, "max_margin_applied", "bounds").get<bool>();
  }
  doc.converged = require_key(in, "converged", "result").get<bool>();
  doc.iterations = require_key(in, "iterations", "result").get<long>();
  for (const json& entry : require_key(in, "partition", "result")) {
    GroupRecord g;
    g.group_id = require_key(entry, "group_id", "partition").get<int>();
    g.member_ids = require_key(entry, "member_ids", "partition").get<std::vector<std::string>>();
    g.x_star = matrix_from_json(require_key(entry, "x_star", "partition"), "x_star");
    g.omega_star = vector_from_json(require_key(entry, "omega_star", "partition"), "omega_star");
    g.oracle_x_star =
        matrix_from_json(require_key(entry, "oracle_x_star", "partition"), "oracle_x_star");
    g.oracle_omega_star =
        vector_from_json(require_key(entry, "oracle_omega_star", "partition"), "oracle_omega_star");
    g.max_oracle_gap = require_key(entry, "max_oracle_gap", "partition").get<double>();
    g.omega_on_boundary = require_key(entry, "omega_on_boundary", "partition").get<bool>();
    doc.partition.push_back(std::move(g));
  }
  const json& report = require_key(in, "report", "result");
  for (const json& entry : require_key(report, "agents", "report")) {
    AgentUtilities a;
    a.agent_id = require_key(entry, "id", "report.agents").get<std::string>();
    a.group = require_key(entry, "group", "report.agents").get<int>();
    a.matrix_utility = require_key(entry, "matrix_utility", "report.agents").get<double>();
    a.weight_utility = require_key(entry, "weight_utility", "report.agents").get<double>();
    doc.report.agents.push_back(std::move(a));
  }
  doc.report.matrix_summary =
      distribution_from_json(require_key(report, "matrix_utility_summary", "report"));
  doc.report.weight_summary =
      distribution_from_json(require_key(report, "weight_utility_summary", "report"));
  doc.summary = summary_from_json(require_key(report, "partition_summary", "report"));
  return doc;
}

ResultDocument read_result(const std::filesystem::path& path) {
  try {
    return result_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw IoError("corrupt result file '" + path.string() + "': " + e.what());
  }
}

void write_result(const std::filesystem::path& path, const ResultDocument& doc) {
  write_text_file(path, result_to_json(doc).dump(2) + "\n");
}

void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
  std::ostringstream out;
  out << "t,alpha,epsilon,edge_count,component_count,max_dx,max_domega,max_consensus_residual\n";
  for (const TraceRecord& r : trace) {
    out << r.t << ',' << fmt17(r.alpha) << ',' << fmt17(r.epsilon) << ',' << r.edge_count << ','
        << r.component_count << ',' << fmt17(r.max_dx) << ',' << fmt17(r.max_domega) << ','
        << fmt17(r.max_consensus_residual) << '\n';
  }
  write_text_file(path, out.str());
}

void SynthSpec::validate() const {
  if (clusters < 1 || per_cluster < 1)
    throw std::invalid_argument("synth: clusters and per_cluster must be >= 1");
  if (num_values < 2)
    throw std::invalid_argument("synth: need at least 2 values for open-simplex weights");
  if (num_alternatives < 1) throw std::invalid_argument("synth: need at least 1 alternative");
  if (!interval.valid()) throw std::invalid_argument("synth: invalid interval");
  if (!(separation > 0.0)) throw std::invalid_argument("synth: separation must be > 0");
  if (noise < 0.0) throw std::invalid_argument("synth: noise must be >= 0");
}

Population synth_population(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> entry_dist(spec.interval.lo, spec.interval.hi);
  std::exponential_distribution<double> exp_dist(1.0);

  auto draw_matrix = [&] {
    DecisionMatrix m(spec.num_alternatives, spec.num_values);
    for (Eigen::Index k = 0; k < m.rows(); ++k)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(k, j) = entry_dist(rng);
    return m;
  };
  // Uniform on the simplex, re-drawn away from the corners so downstream
  // curvature weights (1 - w)^-2 stay well conditioned.
  auto draw_simplex = [&] {
    WeightVector w(spec.num_values);
    while (true) {
      double sum = 0.0;
      for (Eigen::Index j = 0; j < w.size(); ++j) {
        w(j) = exp_dist(rng);
        sum += w(j);
      }
      w /= sum;
      if (w.minCoeff() > 1e-4 && w.maxCoeff() < 0.99) return w;
    }
  };

  constexpr int kMaxAttemptsPerCenter = 10000;
  std::vector<DecisionMatrix> center_x;
  std::vector<WeightVector> center_w;
  for (int c = 0; c < spec.clusters; ++c) {
    int attempts = 0;
    while (true) {
      if (++attempts > kMaxAttemptsPerCenter)
        throw std::invalid_argument(
            "synth: could not place cluster centers at the requested separation "
            "(separation too large for the interval)");
      DecisionMatrix candidate = draw_matrix();
      bool far_enough = true;
      for (const DecisionMatrix& other : center_x)
        if (frobenius_distance(candidate, other) < spec.separation) {
          far_enough = false;
          break;
        }
      if (far_enough) {
        center_x.push_back(std::move(candidate));
        break;
      }
    }
    center_w.push_back(draw_simplex());
  }

  Population pop;
  for (int j = 0; j < spec.num_values; ++j) pop.values.push_back("v" + std::to_string(j + 1));
  for (int k = 0; k < spec.num_alternatives; ++k)
    pop.alternatives.push_back("o" + std::to_string(k + 1));
  pop.interval = spec.interval;

  const double weight_noise = spec.noise / spec.interval.width();
  std::uniform_real_distribution<double> noise_dist(-spec.noise, spec.noise);
  std::uniform_real_distribution<double> wnoise_dist(-weight_noise, weight_noise);

  for (int c = 0; c < spec.clusters; ++c) {
    for (int m = 0; m < spec.per_cluster; ++m) {
      ValueSystem agent;
      agent.agent_id = "c" + std::to_string(c) + "_m" + std::to_string(m);
      DecisionMatrix x = center_x[c];
      for (Eigen::Index k = 0; k < x.rows(); ++k)
        for (Eigen::Index j = 0; j < x.cols(); ++j) x(k, j) += noise_dist(rng);
      agent.matrix = project_box(x, spec.interval);
      WeightVector w = center_w[c];
      for (Eigen::Index j = 0; j < w.size(); ++j) w(j) += wnoise_dist(rng);
      w = project_simplex(w);
      // Keep weights strictly interior; the projection may land on the boundary.
      w = w.cwiseMax(1e-9);
      w /= w.sum();
      agent.weights = w;
      agent.meta["cluster"] = std::to_string(c);
      pop.agents.push_back(std::move(agent));
    }
  }
  return pop;
}

}  // namespace vsa
