#include <stdexcept>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "gcb/experiment.hpp"
#include "gcb/graph.hpp"
#include "gcb/synth.hpp"
#include "test_util.hpp"

using namespace gcb;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("gcb_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

ExperimentConfig four_cycle_config(const TempDir& dir) {
  std::ofstream edges(dir.file("c4.txt"));
  edges << "0 1\n1 2\n2 3\n3 0\n";
  edges.close();

  ExperimentConfig config;
  config.datasets = {{"fourcycle", dir.file("c4.txt")}};
  config.methods = {"identity"};
  config.block_widths = {2};
  config.seed = 1;
  return config;
}

}  // namespace

TEST_CASE("run_experiment on the four-cycle") {
  TempDir dir;
  ExperimentConfig config = four_cycle_config(dir);
  ExperimentResult result = run_experiment(config);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.failures == 0);
  const ReportRow& row = result.rows[0];
  CHECK(row.dataset == "fourcycle");
  CHECK(row.method == "identity");
  CHECK(row.cost1 == 4);
  CHECK(row.bits_per_link == doctest::Approx(6.0).epsilon(1e-12));
  CHECK_FALSE(row.num_communities.has_value());
  CHECK_FALSE(row.objective.has_value());
}

TEST_CASE("planted structure beats random ordering") {
  TempDir dir;
  Graph g = planted_cliques(2, 16, 0.0, 5);
  write_edge_list_file(g, dir.file("cliques.txt"));

  ExperimentConfig config;
  config.datasets = {{"cliques", dir.file("cliques.txt")}};
  config.methods = {"multilevel", "random"};
  config.block_widths = {8};
  config.seed = 3;
  ExperimentResult result = run_experiment(config);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].method == "multilevel");
  CHECK(result.rows[1].method == "random");
  CHECK(result.rows[0].cost1 <= result.rows[1].cost1);
}

TEST_CASE("experiment output is deterministic") {
  TempDir dir;
  ExperimentConfig config = four_cycle_config(dir);
  config.methods = {"labelprop", "multilevel", "slashburn", "random", "identity"};
  config.block_widths = {2, 4};

  std::ostringstream first, second;
  emit_csv(run_experiment(config).rows, first);
  emit_csv(run_experiment(config).rows, second);
  CHECK(first.str() == second.str());

  config.jobs = 4;
  std::ostringstream parallel;
  emit_csv(run_experiment(config).rows, parallel);
  CHECK(parallel.str() == first.str());
}

TEST_CASE("missing dataset is a partial failure") {
  TempDir dir;
  ExperimentConfig config = four_cycle_config(dir);
  config.datasets.push_back({"ghost", dir.file("missing.txt")});
  ExperimentResult result = run_experiment(config);
  CHECK(result.failures == 1);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].dataset == "fourcycle");
}

TEST_CASE("emit_csv writes the pinned header") {
  TempDir dir;
  ExperimentResult result = run_experiment(four_cycle_config(dir));
  std::ostringstream out;
  emit_csv(result.rows, out);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "dataset,method,seed,b,n,m,num_communities,objective,cost1,"
        "nonempty_fraction,cost2_total_bits,bits_per_link,detect_ms,order_ms,"
        "cost_ms");
  std::string row;
  std::getline(lines, row);
  CHECK(row == "fourcycle,identity,1,2,4,4,,,4,1,24,6,0,0,0");
}

TEST_CASE("emit_csv rejects empty row sets") {
  std::ostringstream out;
  CHECK_THROWS_AS(emit_csv({}, out), std::invalid_argument);
  CHECK_THROWS_AS(emit_json({}, out), std::invalid_argument);
}

TEST_CASE("JSON mirrors the rows") {
  TempDir dir;
  ExperimentConfig config = four_cycle_config(dir);
  config.methods = {"multilevel", "identity"};
  ExperimentResult result = run_experiment(config);

  std::stringstream buffer;
  emit_json(result.rows, buffer);
  std::vector<ReportRow> round = rows_from_json(buffer);
  REQUIRE(round.size() == result.rows.size());
  for (std::size_t i = 0; i < round.size(); ++i) {
    CHECK(round[i].dataset == result.rows[i].dataset);
    CHECK(round[i].method == result.rows[i].method);
    CHECK(round[i].b == result.rows[i].b);
    CHECK(round[i].cost1 == result.rows[i].cost1);
    CHECK(round[i].num_communities == result.rows[i].num_communities);
    CHECK(round[i].objective == result.rows[i].objective);
    CHECK(round[i].bits_per_link == result.rows[i].bits_per_link);
  }
}

TEST_CASE("config loading and validation") {
  TempDir dir;
  {
    std::ofstream edges(dir.file("g.txt"));
    edges << "0 1\n";
  }
  {
    std::ofstream manifest(dir.file("manifest.json"));
    manifest << R"({"tiny": ")" << dir.file("g.txt") << R"("})";
  }
  {
    std::ofstream cfg(dir.file("config.json"));
    cfg << R"({"manifest": ")" << dir.file("manifest.json")
        << R"(", "methods": ["identity"], "block_widths": [2], "seed": 9})";
  }
  ExperimentConfig config = load_config(dir.file("config.json"));
  REQUIRE(config.datasets.size() == 1);
  CHECK(config.datasets[0].name == "tiny");
  CHECK(config.seed == 9);
  CHECK_NOTHROW(validate_config(config));

  config.methods = {"bogus"};
  CHECK_THROWS_AS(validate_config(config), std::runtime_error);
  CHECK_THROWS_AS(load_config(dir.file("nonexistent.json")), std::runtime_error);
}

TEST_CASE("synthetic generators") {
  SUBCASE("two disjoint 4-cliques") {
    Graph g = planted_cliques(2, 4, 0.0, 1);
    CHECK(g.num_nodes() == 8);
    CHECK(g.num_edges() == 12);
    CHECK(connected_components(g).num_components() == 2);
  }
  SUBCASE("power law edge count") {
    Graph g = power_law(1000, 2, 42);
    CHECK(g.num_nodes() == 1000);
    CHECK(g.num_edges() == 1997);
    CHECK(connected_components(g).num_components() == 1);
  }
  SUBCASE("determinism") {
    CHECK(power_law(500, 2, 7) == power_law(500, 2, 7));
    CHECK(planted_cliques(3, 5, 0.5, 9) == planted_cliques(3, 5, 0.5, 9));
  }
  SUBCASE("written fixtures reload identically") {
    TempDir dir;
    Graph g = power_law(200, 2, 11);
    write_edge_list_file(g, dir.file("pl.txt"));
    CHECK(load_edge_list_file(dir.file("pl.txt")).graph == g);
  }
}
