#include "gcb/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gcb/blockcost.hpp"
#include "gcb/detect.hpp"
#include "gcb/graph.hpp"
#include "gcb/log.hpp"
#include "gcb/ordering.hpp"
#include "gcb/partition.hpp"
#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gcb {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

bool is_detection_method(const std::string& method) {
  return method == "labelprop" || method == "multilevel" ||
         method == "fastgreedy" || method == "leadingeigen" ||
         method == "infomap";
}

NodeId slashburn_k_for(double setting, NodeId n) {
  std::uint64_t k;
  if (setting < 1.0) {
    k = static_cast<std::uint64_t>(
        std::ceil(setting * static_cast<double>(n)));
    if (k < 1) k = 1;
  } else {
    k = static_cast<std::uint64_t>(setting);
  }
  if (k >= n) {
    k = n > 1 ? n - 1 : 1;
    log::warn("slashburn_k clamped to " + std::to_string(k));
  }
  return static_cast<NodeId>(k);
}

}  // namespace

void validate_config(const ExperimentConfig& config) {
  if (config.datasets.empty()) throw std::runtime_error("config: no datasets");
  if (config.methods.empty()) throw std::runtime_error("config: no methods");
  if (config.block_widths.empty()) {
    throw std::runtime_error("config: no block widths");
  }
  for (std::uint32_t b : config.block_widths) {
    if (b < 1) throw std::runtime_error("config: block width must be >= 1");
  }
  for (const std::string& method : config.methods) {
    if (std::find(kAllMethods.begin(), kAllMethods.end(), method) ==
        kAllMethods.end()) {
      throw std::runtime_error("config: unknown method '" + method + "'");
    }
  }
  if (config.slashburn_k <= 0.0) {
    throw std::runtime_error("config: slashburn_k must be positive");
  }
  if (config.jobs < 1) throw std::runtime_error("config: jobs must be >= 1");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config parse error: " + std::string(e.what()));
  }

  ExperimentConfig config;
  try {
    if (doc.contains("datasets")) {
      for (const auto& d : doc.at("datasets")) {
        config.datasets.push_back({d.at("name").get<std::string>(),
                                   d.at("path").get<std::string>()});
      }
    }
    if (doc.contains("manifest")) {
      std::string manifest_path = doc.at("manifest").get<std::string>();
      std::ifstream min(manifest_path);
      if (!min) throw std::runtime_error("cannot open manifest: " + manifest_path);
      nlohmann::json manifest;
      min >> manifest;
      for (const auto& [name, p] : manifest.items()) {
        config.datasets.push_back({name, p.get<std::string>()});
      }
    }
    config.methods = doc.value("methods", kAllMethods);
    config.block_widths =
        doc.value("block_widths", std::vector<std::uint32_t>{512, 1024});
    config.seed = doc.value("seed", std::uint64_t{1});
    config.slashburn_k = doc.value("slashburn_k", 0.005);
    config.output = doc.value("output", std::string{});
    config.json_output = doc.value("json_output", std::string{});
    config.jobs = doc.value("jobs", 1u);
    config.report_timings = doc.value("report_timings", false);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config field error: " + std::string(e.what()));
  }
  return config;
}

namespace {

struct CellOutput {
  std::vector<ReportRow> rows;
  bool failed = false;
};

CellOutput run_cell(const Graph& graph, const std::string& dataset,
                    const std::string& method, const ExperimentConfig& config) {
  CellOutput out;
  try {
    DetectParams params;
    params.seed = config.seed;

    double detect_ms = 0.0;
    double order_ms = 0.0;
    std::optional<std::uint64_t> num_communities;
    std::optional<double> objective;
    Ordering ordering;

    if (is_detection_method(method)) {
      auto t0 = Clock::now();
      DetectResult detected;
      if (method == "labelprop") detected = label_propagation(graph, params);
      else if (method == "multilevel") detected = louvain_multilevel(graph, params);
      else if (method == "fastgreedy") detected = fast_greedy(graph, params);
      else if (method == "leadingeigen") detected = leading_eigenvector(graph, params);
      else detected = infomap_two_level(graph, params);
      detect_ms = elapsed_ms(t0);
      num_communities = detected.partition.num_communities();
      objective = detected.objective;

      auto t1 = Clock::now();
      ordering = naive_community_ordering(graph, detected.partition);
      order_ms = elapsed_ms(t1);
    } else if (method == "slashburn") {
      auto t1 = Clock::now();
      SlashBurnParams sb{slashburn_k_for(config.slashburn_k, graph.num_nodes())};
      SlashBurnResult result = slashburn_ordering(graph, sb);
      ordering = std::move(result.ordering);
      order_ms = elapsed_ms(t1);
    } else if (method == "random") {
      auto t1 = Clock::now();
      ordering = random_ordering(graph.num_nodes(), config.seed);
      order_ms = elapsed_ms(t1);
    } else {  // identity
      auto t1 = Clock::now();
      ordering = identity_ordering(graph.num_nodes());
      order_ms = elapsed_ms(t1);
    }

    for (std::uint32_t b : config.block_widths) {
      auto t2 = Clock::now();
      CostReport cost = cost2(graph, ordering, CostParams{b});
      double cost_ms = elapsed_ms(t2);

      ReportRow row;
      row.dataset = dataset;
      row.method = method;
      row.seed = config.seed;
      row.b = b;
      row.n = graph.num_nodes();
      row.m = graph.num_edges();
      row.num_communities = num_communities;
      row.objective = objective;
      row.cost1 = cost.nonempty_blocks;
      row.nonempty_fraction = cost.nonempty_fraction;
      row.cost2_total_bits = cost.total_bits;
      row.bits_per_link = cost.bits_per_link;
      log::info(dataset + "/" + method + " b=" + std::to_string(b) +
                ": detect " + format_real(detect_ms) + " ms, order " +
                format_real(order_ms) + " ms, cost " + format_real(cost_ms) +
                " ms");
      if (config.report_timings) {
        row.detect_ms = detect_ms;
        row.order_ms = order_ms;
        row.cost_ms = cost_ms;
      }
      out.rows.push_back(std::move(row));
    }
  } catch (const std::exception& e) {
    log::error(dataset + "/" + method + " failed: " + e.what());
    out.rows.clear();
    out.failed = true;
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);

  ExperimentResult result;
  std::vector<Graph> graphs;
  std::vector<std::size_t> loaded;  // indices into config.datasets
  for (std::size_t i = 0; i < config.datasets.size(); ++i) {
    const DatasetRef& ref = config.datasets[i];
    try {
      EdgeListResult loaded_graph = load_edge_list_file(ref.path);
      log::info("loaded " + ref.name + ": n=" +
                std::to_string(loaded_graph.graph.num_nodes()) + " m=" +
                std::to_string(loaded_graph.graph.num_edges()) + " (dropped " +
                std::to_string(loaded_graph.duplicates_dropped) +
                " duplicates, " +
                std::to_string(loaded_graph.self_loops_dropped) +
                " self-loops)");
      graphs.push_back(std::move(loaded_graph.graph));
      loaded.push_back(i);
    } catch (const std::exception& e) {
      log::error("dataset " + ref.name + ": " + e.what());
      ++result.failures;
    }
  }

  const std::size_t num_cells = loaded.size() * config.methods.size();
  std::vector<CellOutput> cells(num_cells);

  // Cells are independent and individually seeded, so rows come out the
  // same for any jobs setting; they are stitched back in config order.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.jobs) \
    if (config.jobs > 1)
#endif
  for (std::size_t cell = 0; cell < num_cells; ++cell) {
    const std::size_t di = cell / config.methods.size();
    const std::size_t mi = cell % config.methods.size();
    cells[cell] = run_cell(graphs[di], config.datasets[loaded[di]].name,
                           config.methods[mi], config);
  }

  std::uint32_t cells_failed = 0;
  for (CellOutput& cell : cells) {
    if (cell.failed) ++cells_failed;
    for (ReportRow& row : cell.rows) result.rows.push_back(std::move(row));
  }
  result.failures += cells_failed;
  return result;
}

namespace {

void check_row_identities(const ReportRow& row) {
  if (row.m > 0) {
    double expect = row.cost2_total_bits / static_cast<double>(row.m);
    if (std::abs(expect - row.bits_per_link) >
        1e-9 * std::max(1.0, std::abs(expect))) {
      throw std::logic_error("row identity violated: bits_per_link");
    }
  }
  const double side = std::ceil(static_cast<double>(row.n) / row.b);
  double expect_fraction = static_cast<double>(row.cost1) / (side * side);
  if (std::abs(expect_fraction - row.nonempty_fraction) > 1e-9) {
    throw std::logic_error("row identity violated: nonempty_fraction");
  }
}

}  // namespace

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  out << kCsvHeader << '\n';
  for (const ReportRow& row : rows) {
    check_row_identities(row);
    out << row.dataset << ',' << row.method << ',' << row.seed << ',' << row.b
        << ',' << row.n << ',' << row.m << ',';
    if (row.num_communities) out << *row.num_communities;
    out << ',';
    if (row.objective) out << format_real(*row.objective);
    out << ',' << row.cost1 << ',' << format_real(row.nonempty_fraction) << ','
        << format_real(row.cost2_total_bits) << ','
        << format_real(row.bits_per_link) << ',' << format_real(row.detect_ms)
        << ',' << format_real(row.order_ms) << ',' << format_real(row.cost_ms)
        << '\n';
  }
}

void emit_csv_file(const std::vector<ReportRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV: " + path);
  emit_csv(rows, out);
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

namespace {

nlohmann::json row_to_json(const ReportRow& row) {
  nlohmann::json j = {
      {"dataset", row.dataset},
      {"method", row.method},
      {"seed", row.seed},
      {"b", row.b},
      {"n", row.n},
      {"m", row.m},
      {"cost1", row.cost1},
      {"nonempty_fraction", row.nonempty_fraction},
      {"cost2_total_bits", row.cost2_total_bits},
      {"bits_per_link", row.bits_per_link},
      {"detect_ms", row.detect_ms},
      {"order_ms", row.order_ms},
      {"cost_ms", row.cost_ms},
  };
  j["num_communities"] =
      row.num_communities ? nlohmann::json(*row.num_communities)
                          : nlohmann::json(nullptr);
  j["objective"] = row.objective ? nlohmann::json(*row.objective)
                                 : nlohmann::json(nullptr);
  return j;
}

}  // namespace

void emit_json(const std::vector<ReportRow>& rows, std::ostream& out) {
  if (rows.empty()) throw std::invalid_argument("emit_json: no rows");
  nlohmann::json doc = nlohmann::json::array();
  for (const ReportRow& row : rows) {
    check_row_identities(row);
    doc.push_back(row_to_json(row));
  }
  out << doc.dump(2) << '\n';
}

void emit_json_file(const std::vector<ReportRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_json: no rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write JSON: " + path);
  emit_json(rows, out);
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

std::vector<ReportRow> rows_from_json(std::istream& in) {
  nlohmann::json doc;
  in >> doc;
  std::vector<ReportRow> rows;
  for (const auto& j : doc) {
    ReportRow row;
    row.dataset = j.at("dataset").get<std::string>();
    row.method = j.at("method").get<std::string>();
    row.seed = j.at("seed").get<std::uint64_t>();
    row.b = j.at("b").get<std::uint32_t>();
    row.n = j.at("n").get<std::uint64_t>();
    row.m = j.at("m").get<std::uint64_t>();
    if (!j.at("num_communities").is_null()) {
      row.num_communities = j.at("num_communities").get<std::uint64_t>();
    }
    if (!j.at("objective").is_null()) {
      row.objective = j.at("objective").get<double>();
    }
    row.cost1 = j.at("cost1").get<std::uint64_t>();
    row.nonempty_fraction = j.at("nonempty_fraction").get<double>();
    row.cost2_total_bits = j.at("cost2_total_bits").get<double>();
    row.bits_per_link = j.at("bits_per_link").get<double>();
    row.detect_ms = j.at("detect_ms").get<double>();
    row.order_ms = j.at("order_ms").get<double>();
    row.cost_ms = j.at("cost_ms").get<double>();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gcb
