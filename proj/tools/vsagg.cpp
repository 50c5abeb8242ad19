// vsagg: aggregate individual value systems into group-level agreements over a
// bounded-confidence network, then inspect, rank, and report the results.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>

#include "vsa/analysis.hpp"
#include "vsa/geometry.hpp"
#include "vsa/io.hpp"
#include "vsa/mcdm.hpp"
#include "vsa/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

struct AggregateArgs {
  std::string population;
  std::string bounds = "file";
  std::string discovery = "full";
  std::string epsilon = "auto";
  std::string output;
  std::string trace;
  vsa::StepsizeSchedule schedule;
  vsa::StoppingConfig stopping;
  std::uint64_t seed = 0;
};

int run_bounds(const std::string& path, const std::string& level) {
  const vsa::Population pop = vsa::parse_population(path);
  vsa::BoundsLevel l = vsa::BoundsLevel::Max;
  if (level == "q1") l = vsa::BoundsLevel::Q1;
  else if (level == "q2") l = vsa::BoundsLevel::Q2;
  else if (level == "q3") l = vsa::BoundsLevel::Q3;
  else if (level != "max") throw vsa::IoError("unknown level '" + level + "'");
  const vsa::ConfidenceBounds b = vsa::derive_confidence_bounds(pop, l);
  std::printf("gamma_x = %.6g, gamma_omega = %.6g\n", b.gamma_x, b.gamma_omega);
  return kExitOk;
}

int run_aggregate(const AggregateArgs& args) {
  vsa::Population pop = vsa::parse_population(args.population);

  vsa::RunConfig config;
  config.bounds_mode = vsa::bounds_mode_from_string(args.bounds);
  config.discovery = vsa::discovery_mode_from_string(args.discovery);
  if (args.epsilon != "auto") {
    try {
      size_t used = 0;
      const double value = std::stod(args.epsilon, &used);
      if (used != args.epsilon.size()) throw std::invalid_argument(args.epsilon);
      config.fixed_epsilon = value;
    } catch (const std::exception&) {
      throw vsa::IoError("--epsilon expects 'auto' or a number, got '" + args.epsilon + "'");
    }
  }
  config.schedule = args.schedule;
  config.stopping = args.stopping;
  config.seed = args.seed;
  config.trace_enabled = !args.trace.empty();

  const std::optional<vsa::ConfidenceBounds> applied =
      vsa::apply_bounds_mode(pop, config.bounds_mode);

  const vsa::RunResult run =
      vsa::run_aggregation(pop, vsa::make_discovery(config.discovery), config.schedule,
                           config.stopping, config.fixed_epsilon, config.trace_enabled);

  const vsa::ResultDocument doc = vsa::make_result_document(pop, config, run, applied);
  vsa::write_result(args.output, doc);
  if (config.trace_enabled) vsa::write_trace(args.trace, run.trace);

  double worst_gap = 0.0;
  for (const vsa::GroupRecord& g : doc.partition) {
    worst_gap = std::max(worst_gap, g.max_oracle_gap);
    if (g.omega_on_boundary)
      std::cerr << "warning: group " << g.group_id
                << " agreed weight vector touches the simplex boundary\n";
  }
  std::printf("%s after %ld iterations: %zu group(s), max oracle gap %.3g\n",
              run.converged ? "converged" : "not converged", run.iterations,
              doc.partition.size(), worst_gap);
  return run.converged ? kExitOk : kExitNotConverged;
}

int run_rank(const std::string& result_path, const std::string& group, double tie_tol) {
  const vsa::ResultDocument doc = vsa::read_result(result_path);
  int only = -1;
  if (group != "all") {
    try {
      only = std::stoi(group);
    } catch (const std::exception&) {
      throw std::invalid_argument("--group expects 'all' or a group id");
    }
  }
  bool found = false;
  for (const vsa::GroupRecord& g : doc.partition) {
    if (only >= 0 && g.group_id != only) continue;
    found = true;
    const vsa::Ranking ranking = vsa::topsis_rank(g.x_star, g.omega_star, tie_tol);
    std::printf("P%d: %s\n", g.group_id + 1, vsa::ranking_notation(ranking).c_str());
  }
  if (!found) throw std::invalid_argument("result has no group with id '" + group + "'");
  return kExitOk;
}

int run_synth(const vsa::SynthSpec& spec, const std::string& output) {
  const vsa::Population pop = vsa::synth_population(spec);
  vsa::write_population(output, pop);
  std::printf("wrote %d agents (%d clusters x %d) to %s\n", pop.size(), spec.clusters,
              spec.per_cluster, output.c_str());
  return kExitOk;
}

int run_report(const std::string& result_path, bool json_only) {
  const vsa::ResultDocument doc = vsa::read_result(result_path);

  std::vector<double> mu_sorted, wu_sorted;
  for (const vsa::AgentUtilities& a : doc.report.agents) {
    mu_sorted.push_back(a.matrix_utility);
    wu_sorted.push_back(a.weight_utility);
  }
  std::sort(mu_sorted.begin(), mu_sorted.end());
  std::sort(wu_sorted.begin(), wu_sorted.end());

  if (!json_only) {
    std::printf("agents: %d, groups: %d, converged: %s, iterations: %ld\n", doc.agent_count,
                doc.summary.group_count, doc.converged ? "yes" : "no", doc.iterations);
    std::printf("%-16s %6s %18s %18s\n", "agent", "group", "matrix_utility", "weight_utility");
    for (const vsa::AgentUtilities& a : doc.report.agents)
      std::printf("%-16s %6d %18.8g %18.8g\n", a.agent_id.c_str(), a.group, a.matrix_utility,
                  a.weight_utility);
    auto print_summary = [](const char* name, const vsa::DistributionSummary& s) {
      std::printf("%s: min=%.6g q1=%.6g median=%.6g q3=%.6g max=%.6g mean=%.6g\n", name, s.min,
                  s.q1, s.median, s.q3, s.max, s.mean);
    };
    print_summary("matrix utilities", doc.report.matrix_summary);
    print_summary("weight utilities", doc.report.weight_summary);
    std::printf("group sizes:");
    for (int s : doc.summary.group_sizes) std::printf(" %d", s);
    std::printf("\n");
    if (doc.summary.avg_matrix_distance)
      std::printf("avg within-group distances (original systems, pooled pairs): "
                  "matrix %.6g, weights %.6g\n",
                  *doc.summary.avg_matrix_distance, *doc.summary.avg_weight_distance);
    else
      std::printf("avg within-group distances: absent (all groups are singletons)\n");
    std::printf("--- report json ---\n");
  }

  nlohmann::json machine = vsa::result_to_json(doc)["report"];
  machine["plot"] = {{"matrix_utilities_sorted", mu_sorted},
                     {"weight_utilities_sorted", wu_sorted}};
  std::printf("%s\n", machine.dump(2).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized aggregation of value systems into group agreements"};
  app.require_subcommand(1);

  auto* bounds_cmd = app.add_subcommand("bounds", "derive global confidence bounds");
  std::string bounds_pop, bounds_level = "q2";
  bounds_cmd->add_option("--population", bounds_pop, "population file")->required();
  bounds_cmd->add_option("--level", bounds_level, "q1|q2|q3|max")->required();

  auto* agg_cmd = app.add_subcommand("aggregate", "run the aggregation");
  AggregateArgs agg;
  agg_cmd->add_option("--population", agg.population, "population file")->required();
  agg_cmd->add_option("--bounds", agg.bounds, "q1|q2|q3|max|file (default file)");
  agg_cmd->add_option("--discovery", agg.discovery, "full|none (default full)");
  agg_cmd->add_option("--epsilon", agg.epsilon, "auto|<value> (default auto)");
  agg_cmd->add_option("--alpha0", agg.schedule.alpha0, "stepsize numerator (default 0.1)");
  agg_cmd->add_option("--decay", agg.schedule.decay, "stepsize exponent in (0.5,1] (default 1)");
  agg_cmd->add_option("--tol-x", agg.stopping.tol_x, "X update tolerance (default 1e-6)");
  agg_cmd->add_option("--tol-omega", agg.stopping.tol_omega,
                      "Omega update tolerance (default 1e-6)");
  agg_cmd->add_option("--consensus-tol", agg.stopping.consensus_tol,
                      "within-component edge distance tolerance (default 1e-4)");
  agg_cmd->add_option("--stable-window", agg.stopping.stable_window,
                      "consecutive quiet iterations required (default 50)");
  agg_cmd->add_option("--max-iters", agg.stopping.max_iters, "iteration cap (default 100000)");
  agg_cmd->add_option("--seed", agg.seed, "echoed into the result file (default 0)");
  agg_cmd->add_option("--output", agg.output, "result file")->required();
  agg_cmd->add_option("--trace", agg.trace, "per-iteration CSV trace file");

  auto* rank_cmd = app.add_subcommand("rank", "TOPSIS rankings from agreed systems");
  std::string rank_result, rank_group = "all";
  double rank_tie_tol = 1e-9;
  rank_cmd->add_option("--result", rank_result, "result file")->required();
  rank_cmd->add_option("--group", rank_group, "group id or 'all' (default all)");
  rank_cmd->add_option("--tie-tol", rank_tie_tol, "closeness tie tolerance (default 1e-9)");

  auto* synth_cmd = app.add_subcommand("synth", "generate a planted-cluster population");
  vsa::SynthSpec spec;
  std::string synth_output;
  synth_cmd->add_option("--clusters", spec.clusters, "cluster count (default 2)");
  synth_cmd->add_option("--per-cluster", spec.per_cluster, "agents per cluster (default 5)");
  synth_cmd->add_option("--values", spec.num_values, "|V| (default 3)");
  synth_cmd->add_option("--alternatives", spec.num_alternatives, "|A| (default 2)");
  synth_cmd->add_option("--interval-lo", spec.interval.lo, "interval lower end (default 1)");
  synth_cmd->add_option("--interval-hi", spec.interval.hi, "interval upper end (default 7)");
  synth_cmd->add_option("--separation", spec.separation,
                        "min center Frobenius distance (default 6)");
  synth_cmd->add_option("--noise", spec.noise, "within-cluster uniform noise (default 0.5)");
  synth_cmd->add_option("--seed", spec.seed, "RNG seed (default 0)");
  synth_cmd->add_option("--output", synth_output, "population file")->required();

  auto* report_cmd = app.add_subcommand("report", "utilities and partition statistics");
  std::string report_result;
  bool report_json_only = false;
  report_cmd->add_option("--result", report_result, "result file")->required();
  report_cmd->add_flag("--json-only", report_json_only, "emit only the machine-readable section");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (bounds_cmd->parsed()) return run_bounds(bounds_pop, bounds_level);
    if (agg_cmd->parsed()) return run_aggregate(agg);
    if (rank_cmd->parsed()) return run_rank(rank_result, rank_group, rank_tie_tol);
    if (synth_cmd->parsed()) return run_synth(spec, synth_output);
    if (report_cmd->parsed()) return run_report(report_result, report_json_only);
  } catch (const vsa::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const vsa::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const vsa::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
