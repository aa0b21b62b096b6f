#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcb/blockcost.hpp"
#include "gcb/detect.hpp"
#include "gcb/experiment.hpp"
#include "gcb/graph.hpp"
#include "gcb/log.hpp"
#include "gcb/ordering.hpp"
#include "gcb/partition.hpp"
#include "gcb/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

using Clock = std::chrono::steady_clock;

struct RunArgs {
  std::string config_path;
  std::optional<std::uint32_t> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::optional<std::string> json_output;
  std::optional<std::vector<std::string>> methods;
  std::optional<std::vector<std::uint32_t>> block_widths;
  std::optional<double> slashburn_k;
  bool report_timings = false;
};

int cmd_run(const RunArgs& args) {
  gcb::ExperimentConfig config;
  try {
    config = gcb::load_config(args.config_path);
    if (args.jobs) config.jobs = *args.jobs;
    if (args.seed) config.seed = *args.seed;
    if (args.output) config.output = *args.output;
    if (args.json_output) config.json_output = *args.json_output;
    if (args.methods) config.methods = *args.methods;
    if (args.block_widths) config.block_widths = *args.block_widths;
    if (args.slashburn_k) config.slashburn_k = *args.slashburn_k;
    if (args.report_timings) config.report_timings = true;
    gcb::validate_config(config);
  } catch (const std::exception& e) {
    gcb::log::error(e.what());
    return kExitUsage;
  }

  gcb::ExperimentResult result = gcb::run_experiment(config);
  if (result.rows.empty()) {
    gcb::log::error("no results: all datasets failed");
    return kExitRuntime;
  }
  try {
    if (config.output.empty()) {
      gcb::emit_csv(result.rows, std::cout);
    } else {
      gcb::emit_csv_file(result.rows, config.output);
    }
    if (!config.json_output.empty()) {
      gcb::emit_json_file(result.rows, config.json_output);
    }
  } catch (const std::exception& e) {
    gcb::log::error(e.what());
    return kExitRuntime;
  }
  return result.failures > 0 ? kExitRuntime : kExitOk;
}

int cmd_detect(const std::string& method, const std::string& graph_path,
               std::uint64_t seed, const std::string& out_path) {
  gcb::Graph graph = gcb::load_edge_list_file(graph_path).graph;
  gcb::DetectParams params;
  params.seed = seed;

  auto t0 = Clock::now();
  gcb::DetectResult detected;
  if (method == "labelprop") detected = gcb::label_propagation(graph, params);
  else if (method == "multilevel") detected = gcb::louvain_multilevel(graph, params);
  else if (method == "fastgreedy") detected = gcb::fast_greedy(graph, params);
  else if (method == "leadingeigen") detected = gcb::leading_eigenvector(graph, params);
  else if (method == "infomap") detected = gcb::infomap_two_level(graph, params);
  else throw std::runtime_error("unknown detection method: " + method);
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  gcb::save_partition_file(detected.partition, out_path, method, seed,
                           detected.objective, ms);
  std::cout << "communities " << detected.partition.num_communities() << '\n'
            << detected.objective_name << ' ' << detected.objective << '\n';
  return kExitOk;
}

int cmd_order(const std::string& strategy, const std::string& graph_path,
              const std::string& partition_path, double k_setting,
              std::uint64_t seed, const std::string& out_path) {
  gcb::Graph graph = gcb::load_edge_list_file(graph_path).graph;
  gcb::Ordering ordering;
  std::uint32_t iterations = 0;
  std::string params_desc;

  if (strategy == "community-naive") {
    if (partition_path.empty()) {
      throw CLI::ValidationError("--partition is required for community-naive");
    }
    gcb::Partition partition = gcb::load_partition_file(partition_path);
    ordering = gcb::naive_community_ordering(graph, partition);
    params_desc = "partition=" + partition_path;
  } else if (strategy == "slashburn") {
    gcb::NodeId n = graph.num_nodes();
    std::uint64_t k;
    if (k_setting < 1.0) {
      k = static_cast<std::uint64_t>(std::ceil(k_setting * n));
      if (k < 1) k = 1;
    } else {
      k = static_cast<std::uint64_t>(k_setting);
    }
    if (k >= n) k = n > 1 ? n - 1 : 1;
    gcb::SlashBurnResult result =
        gcb::slashburn_ordering(graph, {static_cast<gcb::NodeId>(k)});
    ordering = std::move(result.ordering);
    iterations = result.iterations;
    params_desc = "k=" + std::to_string(k);
  } else if (strategy == "random") {
    ordering = gcb::random_ordering(graph.num_nodes(), seed);
    params_desc = "seed=" + std::to_string(seed);
  } else if (strategy == "identity") {
    ordering = gcb::identity_ordering(graph.num_nodes());
  } else {
    throw CLI::ValidationError("unknown strategy: " + strategy);
  }

  gcb::save_ordering_file(ordering, out_path, strategy, params_desc, iterations);
  std::cout << "positions " << ordering.size() << '\n'
            << "iterations " << iterations << '\n';
  return kExitOk;
}

int cmd_cost(const std::string& graph_path, const std::string& order_path,
             std::uint32_t b, bool dump_blocks, std::uint64_t dump_cap) {
  gcb::Graph graph = gcb::load_edge_list_file(graph_path).graph;
  gcb::Ordering ordering = order_path.empty()
                               ? gcb::identity_ordering(graph.num_nodes())
                               : gcb::load_ordering_file(order_path);
  gcb::BlockHistogram hist =
      gcb::block_histogram(graph, ordering, gcb::CostParams{b});
  gcb::CostReport report =
      gcb::cost2_from_histogram(hist, graph.num_nodes(), graph.num_edges());

  std::cout << "n " << report.n << '\n'
            << "m " << report.m << '\n'
            << "b " << report.b << '\n'
            << "cost1 " << report.nonempty_blocks << '\n'
            << "nonempty_fraction " << report.nonempty_fraction << '\n'
            << "cost2_total_bits " << report.total_bits << '\n'
            << "bits_per_link " << report.bits_per_link << '\n';
  if (dump_blocks) {
    std::uint64_t shown = 0;
    for (const auto& entry : hist.blocks) {
      if (shown++ >= dump_cap) {
        std::cout << "# dump capped at " << dump_cap << " blocks\n";
        break;
      }
      std::cout << "block " << entry.row_block << ' ' << entry.col_block << ' '
                << entry.ones << '\n';
    }
  }
  return kExitOk;
}

int cmd_synth(const std::string& kind, std::uint32_t cliques,
              std::uint32_t clique_size, double epsilon, std::uint64_t nodes,
              std::uint32_t attach, std::uint64_t seed,
              const std::string& out_path) {
  gcb::Graph graph;
  if (kind == "planted-cliques") {
    graph = gcb::planted_cliques(cliques, clique_size, epsilon, seed);
  } else if (kind == "power-law") {
    graph = gcb::power_law(static_cast<gcb::NodeId>(nodes), attach, seed);
  } else {
    throw CLI::ValidationError("unknown kind: " + kind);
  }
  gcb::write_edge_list_file(graph, out_path);
  std::cout << "n " << graph.num_nodes() << '\n'
            << "m " << graph.num_edges() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"community-ordering graph compression benchmark"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("--config", run_args.config_path, "JSON config file")
      ->required();
  run->add_option("--jobs", run_args.jobs, "parallel cells");
  run->add_option("--seed", run_args.seed, "seed override");
  run->add_option("--output", run_args.output, "CSV output path");
  run->add_option("--json-output", run_args.json_output, "JSON output path");
  run->add_option("--methods", run_args.methods, "method list override")
      ->delimiter(',');
  run->add_option("--block-widths", run_args.block_widths,
                  "block width override")
      ->delimiter(',');
  run->add_option("--slashburn-k", run_args.slashburn_k,
                  "hub set size (count, or fraction of n when < 1)");
  run->add_flag("--report-timings", run_args.report_timings,
                "write wall-clock timings into the CSV (breaks byte "
                "reproducibility)");

  std::string detect_method, detect_graph, detect_out;
  std::uint64_t detect_seed = 1;
  auto* detect = app.add_subcommand("detect", "detect communities");
  detect->add_option("--method", detect_method, "detection method")
      ->required()
      ->check(CLI::IsMember({"labelprop", "multilevel", "fastgreedy",
                             "leadingeigen", "infomap"}));
  detect->add_option("--graph", detect_graph, "edge list file")->required();
  detect->add_option("--seed", detect_seed, "seed");
  detect->add_option("--out", detect_out, "partition output path")->required();

  std::string order_strategy, order_graph, order_partition, order_out;
  double order_k = 0.005;
  std::uint64_t order_seed = 1;
  auto* order = app.add_subcommand("order", "build a node ordering");
  order->add_option("--strategy", order_strategy, "ordering strategy")
      ->required()
      ->check(CLI::IsMember(
          {"community-naive", "slashburn", "random", "identity"}));
  order->add_option("--graph", order_graph, "edge list file")->required();
  order->add_option("--partition", order_partition,
                    "partition file (community-naive)");
  order->add_option("--k", order_k,
                    "slashburn hub set size (count, or fraction of n when < 1)");
  order->add_option("--seed", order_seed, "seed (random)");
  order->add_option("--out", order_out, "ordering output path")->required();

  std::string cost_graph, cost_order;
  std::uint32_t cost_b = 512;
  bool cost_dump = false;
  std::uint64_t cost_dump_cap = 1000;
  auto* cost = app.add_subcommand("cost", "evaluate block costs");
  cost->add_option("--graph", cost_graph, "edge list file")->required();
  cost->add_option("--order", cost_order,
                   "ordering file (identity when omitted)");
  cost->add_option("--block-width", cost_b, "block width b")->required();
  cost->add_flag("--dump-blocks", cost_dump, "print per-block counts");
  cost->add_option("--dump-cap", cost_dump_cap, "max blocks to dump");

  std::string synth_kind, synth_out;
  std::uint32_t synth_cliques = 2, synth_clique_size = 4, synth_attach = 2;
  double synth_epsilon = 0.0;
  std::uint64_t synth_nodes = 1000, synth_seed = 1;
  auto* synth = app.add_subcommand("synth", "generate a synthetic graph");
  synth->add_option("--kind", synth_kind, "planted-cliques or power-law")
      ->required()
      ->check(CLI::IsMember({"planted-cliques", "power-law"}));
  synth->add_option("--cliques", synth_cliques, "clique count");
  synth->add_option("--clique-size", synth_clique_size, "clique size");
  synth->add_option("--epsilon", synth_epsilon,
                    "per-clique-pair bridge probability");
  synth->add_option("--nodes", synth_nodes, "node count (power-law)");
  synth->add_option("--attach", synth_attach, "edges per new node (power-law)");
  synth->add_option("--seed", synth_seed, "seed");
  synth->add_option("--out", synth_out, "edge list output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (detect->parsed()) {
      return cmd_detect(detect_method, detect_graph, detect_seed, detect_out);
    }
    if (order->parsed()) {
      return cmd_order(order_strategy, order_graph, order_partition, order_k,
                       order_seed, order_out);
    }
    if (cost->parsed()) {
      return cmd_cost(cost_graph, cost_order, cost_b, cost_dump, cost_dump_cap);
    }
    if (synth->parsed()) {
      return cmd_synth(synth_kind, synth_cliques, synth_clique_size,
                       synth_epsilon, synth_nodes, synth_attach, synth_seed,
                       synth_out);
    }
  } catch (const CLI::ValidationError& e) {
    gcb::log::error(e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    gcb::log::error(e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    gcb::log::error(e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
