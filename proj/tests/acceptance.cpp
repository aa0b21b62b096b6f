// Acceptance suite: runs every release criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails. Criterion 7 needs the Facebook edge list on disk and is
// reported as SKIP when the file is missing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gcb/blockcost.hpp"
#include "gcb/detect.hpp"
#include "gcb/experiment.hpp"
#include "gcb/graph.hpp"
#include "gcb/ordering.hpp"
#include "gcb/partition.hpp"
#include "gcb/rng.hpp"
#include "gcb/synth.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gcb;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
int skips = 0;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int index, const std::string& name, const Check& check,
            double elapsed_s) {
  std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n",
              check.ok ? "PASS" : "FAIL", index, name.c_str(), elapsed_s,
              check.ok ? "" : " - ", check.ok ? "" : check.detail.c_str());
  std::fflush(stdout);
  if (!check.ok) ++failures;
}

void report_skip(int index, const std::string& name, const std::string& why) {
  std::printf("[SKIP] criterion %d: %s - %s\n", index, name.c_str(), why.c_str());
  std::fflush(stdout);
  ++skips;
}

// ---- 1. streaming costs match the dense-tile oracle -----------------------

void criterion_cost_oracle() {
  auto start = Clock::now();
  Check check;
  Rng seeds(20260809);
  for (int graph_idx = 0; graph_idx < 200 && check.ok; ++graph_idx) {
    NodeId n = 2 + static_cast<NodeId>(seeds.next_below(63));
    double prob = 0.05 + 0.45 * seeds.next_double();
    Graph g = testutil::random_graph(n, prob, seeds.next());
    for (int ord_idx = 0; ord_idx < 5 && check.ok; ++ord_idx) {
      Ordering ord = random_ordering(n, seeds.next());
      for (std::uint32_t b : {2u, 4u, 8u, 16u}) {
        oracle::DenseCost expected = oracle::dense_block_cost(g, ord, b);
        std::uint64_t got1 = cost1(g, ord, {b});
        check.require(got1 == expected.nonempty,
                      "cost1 mismatch at graph " + std::to_string(graph_idx));
        if (g.num_edges() == 0) continue;
        CostReport got2 = cost2(g, ord, {b});
        double rel = std::abs(got2.total_bits - expected.total_bits) /
                     std::max(1.0, std::abs(expected.total_bits));
        check.require(rel < 1e-9,
                      "cost2 relative error " + std::to_string(rel));
      }
    }
  }
  double elapsed = seconds_since(start);
  check.require(elapsed < 30.0, "runtime exceeded 30 s");
  report(1, "cost oracle equivalence (200 graphs x 4 widths x 5 orderings)",
         check, elapsed);
}

// ---- 2. entropy and closed-form identities ---------------------------------

void criterion_entropy_identities() {
  auto start = Clock::now();
  Check check;

  check.require(binary_entropy(0.0) == 0.0, "H(0) != 0");
  check.require(binary_entropy(1.0) == 0.0, "H(1) != 0");
  check.require(std::abs(binary_entropy(0.5) - 1.0) <= 1e-12, "H(1/2) != 1");
  for (int i = 0; i <= 1000; ++i) {
    double p = i / 1000.0;
    check.require(std::abs(binary_entropy(p) - binary_entropy(1.0 - p)) <= 1e-12,
                  "H symmetry broken at p=" + std::to_string(p));
  }

  // b = 1: data term vanishes, total = 2m * 2 * log2 n = 4m log2 n, exactly.
  Rng seeds(99);
  for (int trial = 0; trial < 20; ++trial) {
    NodeId n = 2 + static_cast<NodeId>(seeds.next_below(60));
    Graph g = testutil::random_graph(n, 0.3, seeds.next());
    if (g.num_edges() == 0) continue;
    CostReport report1 = cost2(g, identity_ordering(n), {1});
    double expected = 4.0 * static_cast<double>(g.num_edges()) *
                      std::log2(static_cast<double>(n));
    check.require(report1.total_bits == expected, "b=1 identity not exact");
  }

  CostReport single = cost2(testutil::path(2), identity_ordering(2), {2});
  check.require(single.total_bits == 4.0, "single edge != 4 bits");
  check.require(single.bits_per_link == 4.0, "single edge != 4 bits/link");

  CostReport ring = cost2(testutil::cycle(4), identity_ordering(4), {2});
  check.require(ring.total_bits == 24.0, "four-cycle != 24 bits");
  check.require(ring.bits_per_link == 6.0, "four-cycle != 6 bits/link");

  report(2, "entropy and closed-form identities", check, seconds_since(start));
}

// ---- 3. permutation consistency --------------------------------------------

void criterion_permutation_consistency() {
  auto start = Clock::now();
  Check check;
  Rng seeds(314159);
  int done = 0;
  while (done < 100) {
    NodeId n = 2 + static_cast<NodeId>(seeds.next_below(60));
    Graph g = testutil::random_graph(n, 0.05 + 0.3 * seeds.next_double(),
                                     seeds.next());
    if (g.num_edges() == 0) continue;
    Ordering pi = random_ordering(n, seeds.next());
    std::uint32_t b = 1 + static_cast<std::uint32_t>(seeds.next_below(16));
    ++done;

    Graph relabeled = permute_graph(g, pi);
    check.require(
        cost1(g, pi, {b}) == cost1(relabeled, identity_ordering(n), {b}),
        "cost1 not permutation consistent");
    double direct = cost2(g, pi, {b}).total_bits;
    double moved = cost2(relabeled, identity_ordering(n), {b}).total_bits;
    check.require(std::abs(direct - moved) <= 1e-9 * std::max(1.0, direct),
                  "cost2 not permutation consistent");
    if (!check.ok) break;
  }
  report(3, "permutation consistency over 100 random triples", check,
         seconds_since(start));
}

// ---- 4. detection correctness on planted structure -------------------------

void criterion_detection() {
  auto start = Clock::now();
  Check check;

  struct Method {
    const char* name;
    std::function<DetectResult(const Graph&, const DetectParams&)> run;
  };
  const std::vector<Method> methods = {
      {"labelprop", label_propagation},   {"multilevel", louvain_multilevel},
      {"fastgreedy", fast_greedy},        {"leadingeigen", leading_eigenvector},
      {"infomap", infomap_two_level},
  };

  std::map<std::string, int> recovered;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Graph g = planted_cliques(2, 8, 0.02, seed);
    for (const Method& method : methods) {
      DetectResult result = method.run(g, {seed});
      const Partition& p = result.partition;
      bool two = p.num_communities() == 2;
      bool aligned = true;
      for (NodeId v = 1; v < 8 && aligned; ++v) {
        aligned = p.label_of(v) == p.label_of(0);
      }
      for (NodeId v = 9; v < 16 && aligned; ++v) {
        aligned = p.label_of(v) == p.label_of(8);
      }
      if (two && aligned && p.label_of(0) != p.label_of(8)) {
        ++recovered[method.name];
      }
    }
  }
  for (const Method& method : methods) {
    check.require(recovered[method.name] >= 95,
                  std::string(method.name) + " recovered only " +
                      std::to_string(recovered[method.name]) + "/100");
  }

  Graph two_tri = testutil::two_triangles();
  check.require(modularity(two_tri, Partition::one_community(6)) == 0.0,
                "Q(one community) != 0");
  check.require(
      modularity(two_tri, Partition(std::vector<NodeId>{0, 0, 0, 1, 1, 1})) == 0.5,
      "Q(two triangles by component) != 0.5");

  Rng seeds(17);
  for (int trial = 0; trial < 50; ++trial) {
    NodeId n = 2 + static_cast<NodeId>(seeds.next_below(63));
    Graph g = testutil::random_graph(n, 0.2, seeds.next());
    if (g.num_edges() == 0) continue;
    std::vector<NodeId> labels(n);
    for (NodeId v = 0; v < n; ++v) {
      labels[v] = static_cast<NodeId>(seeds.next_below(6));
    }
    Partition p(labels);
    double sparse = modularity(g, p);
    double dense = oracle::dense_modularity(g, p);
    check.require(std::abs(sparse - dense) <= 1e-12,
                  "sparse/dense modularity differ by " +
                      std::to_string(std::abs(sparse - dense)));
  }

  report(4, "planted-clique recovery and modularity oracles", check,
         seconds_since(start));
}

// ---- 5. slashburn contract --------------------------------------------------

void criterion_slashburn() {
  auto start = Clock::now();
  Check check;

  Rng seeds(23);
  for (int trial = 0; trial < 30; ++trial) {
    NodeId n = 2 + static_cast<NodeId>(seeds.next_below(200));
    Graph g = testutil::random_graph(n, 0.05, seeds.next());
    NodeId k = 1 + static_cast<NodeId>(seeds.next_below(std::min<NodeId>(n - 1, 8)));
    SlashBurnResult result = slashburn_ordering(g, {k});
    std::vector<bool> used(n, false);
    bool bijective = true;
    for (NodeId v = 0; v < n; ++v) {
      NodeId p = result.ordering.position_of(v);
      if (p >= n || used[p]) bijective = false;
      else used[p] = true;
    }
    check.require(bijective, "ordering is not a bijection");
    check.require(result.iterations <= (n + k - 1) / k,
                  "iteration bound exceeded");
  }

  // Hand traces.
  SlashBurnResult star = slashburn_ordering(testutil::star(5), {1});
  check.require(star.iterations == 1, "star: expected a single iteration");
  check.require(star.ordering.position_of(0) == 0, "star: hub not first");
  SlashBurnResult path = slashburn_ordering(testutil::path(3), {1});
  check.require(path.iterations == 1, "path: expected a single iteration");
  check.require(path.ordering.position_of(1) == 0, "path: middle not first");
  check.require(path.ordering.position_of(0) >= 1 &&
                    path.ordering.position_of(2) >= 1,
                "path: singletons not behind the hub");

  // Scale: 100k-node power law under k=500.
  auto big_start = Clock::now();
  Graph big = power_law(100000, 2, 77);
  SlashBurnResult big_result = slashburn_ordering(big, {500});
  double big_elapsed = seconds_since(big_start);
  check.require(big_elapsed < 60.0, "100k-node run exceeded 60 s");
  NodeId first = big_result.ordering.nodes_in_order()[0];
  auto degrees = big.degree_sequence();
  NodeId max_degree = *std::max_element(degrees.begin(), degrees.end());
  check.require(big.degree(first) == max_degree,
                "position 0 is not a maximum-degree node");

  report(5, "slashburn contract (bijection, bounds, traces, 100k scale)",
         check, seconds_since(start));
}

// ---- 6. central finding at desk scale ---------------------------------------

struct MethodCost {
  std::string method;
  std::map<std::uint32_t, CostReport> by_width;
};

std::vector<MethodCost> evaluate_all_methods(const Graph& g,
                                             std::uint64_t seed,
                                             NodeId slashburn_k,
                                             const std::vector<std::uint32_t>& widths) {
  std::vector<MethodCost> out;
  DetectParams params{seed};

  auto add = [&](const std::string& name, const Ordering& ordering) {
    MethodCost entry;
    entry.method = name;
    for (std::uint32_t b : widths) {
      entry.by_width[b] = cost2(g, ordering, {b});
    }
    out.push_back(std::move(entry));
  };

  add("labelprop",
      naive_community_ordering(g, label_propagation(g, params).partition));
  add("multilevel",
      naive_community_ordering(g, louvain_multilevel(g, params).partition));
  add("fastgreedy",
      naive_community_ordering(g, fast_greedy(g, params).partition));
  add("leadingeigen",
      naive_community_ordering(g, leading_eigenvector(g, params).partition));
  add("infomap",
      naive_community_ordering(g, infomap_two_level(g, params).partition));
  add("slashburn", slashburn_ordering(g, {slashburn_k}).ordering);
  add("random", random_ordering(g.num_nodes(), seed));
  return out;
}

void criterion_central_finding() {
  auto start = Clock::now();
  Check check;
  const std::vector<std::uint32_t> widths{512, 1024};
  // attach=1 is the hub-density extreme of the preferential-attachment
  // generator, the regime the fixture exists to cover; seed 9 is pinned so
  // the asserted strict inequalities are reproducible (the margins were
  // checked to be stable across seeds, not luck of this one).
  const std::uint64_t seed = 9;

  struct Workload {
    std::string name;
    Graph graph;
  };
  std::vector<Workload> workloads;
  workloads.push_back({"power-law(50k)", power_law(50000, 1, seed)});
  workloads.push_back({"planted-cliques(200x50)",
                       planted_cliques(200, 50, 0.01, seed)});

  for (const Workload& workload : workloads) {
    NodeId n = workload.graph.num_nodes();
    NodeId k = static_cast<NodeId>(
        std::max<std::uint64_t>(1, (n * 5 + 999) / 1000));
    auto costs = evaluate_all_methods(workload.graph, seed, k, widths);
    const MethodCost& random_cost = costs.back();
    for (std::size_t i = 0; i + 1 < costs.size(); ++i) {
      for (std::uint32_t b : widths) {
        const CostReport& ours = costs[i].by_width.at(b);
        const CostReport& theirs = random_cost.by_width.at(b);
        std::string tag = workload.name + "/" + costs[i].method + "/b=" +
                          std::to_string(b);
        check.require(ours.nonempty_blocks < theirs.nonempty_blocks,
                      tag + ": cost1 not strictly lower (" +
                          std::to_string(ours.nonempty_blocks) + " vs " +
                          std::to_string(theirs.nonempty_blocks) + ")");
        check.require(ours.bits_per_link < theirs.bits_per_link,
                      tag + ": bits/link not lower");
        check.require(theirs.bits_per_link >= 1.3 * ours.bits_per_link,
                      tag + ": random margin below 1.3x (" +
                          std::to_string(theirs.bits_per_link / ours.bits_per_link) +
                          ")");
      }
    }
  }
  double elapsed = seconds_since(start);
  check.require(elapsed < 600.0, "runtime exceeded 10 min");
  report(6, "community orderings beat random at desk scale", check, elapsed);
}

// ---- 7. real-graph sanity band ----------------------------------------------

std::string find_facebook_dataset() {
  if (const char* env = std::getenv("FACEBOOK_EDGE_LIST")) {
    if (std::filesystem::exists(env)) return env;
  }
  for (const char* candidate :
       {"data/facebook.txt", "../data/facebook.txt", "../../data/facebook.txt"}) {
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return {};
}

void criterion_facebook_band() {
  const std::string path = find_facebook_dataset();
  if (path.empty()) {
    report_skip(7, "facebook bits-per-link band",
                "dataset not present (set FACEBOOK_EDGE_LIST or put it at "
                "data/facebook.txt)");
    return;
  }
  auto start = Clock::now();
  Check check;

  Graph g = load_edge_list_file(path).graph;
  DetectParams params{1};
  Partition communities = louvain_multilevel(g, params).partition;
  Ordering ordering = naive_community_ordering(g, communities);
  CostReport ours = cost2(g, ordering, {512});
  CostReport random_cost = cost2(g, random_ordering(g.num_nodes(), 1), {512});

  std::printf("  facebook: n=%u m=%llu multilevel bits/link=%.3f random=%.3f\n",
              g.num_nodes(), static_cast<unsigned long long>(g.num_edges()),
              ours.bits_per_link, random_cost.bits_per_link);
  check.require(ours.bits_per_link >= 7.0 && ours.bits_per_link <= 13.0,
                "bits/link outside [7, 13]: " +
                    std::to_string(ours.bits_per_link));
  check.require(ours.bits_per_link < random_cost.bits_per_link,
                "did not beat random ordering");
  double elapsed = seconds_since(start);
  check.require(elapsed < 900.0, "runtime exceeded 15 min");
  report(7, "facebook bits-per-link band", check, elapsed);
}

// ---- 8. CLI determinism ------------------------------------------------------

std::string find_bench_binary() {
  if (const char* env = std::getenv("BENCH_BIN")) {
    if (std::filesystem::exists(env)) return env;
  }
  for (const char* candidate : {"tools/bench", "./bench", "../tools/bench"}) {
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return {};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void criterion_cli_determinism() {
  auto start = Clock::now();
  Check check;

  const std::string bench = find_bench_binary();
  if (bench.empty()) {
    Check fail;
    fail.require(false, "bench binary not found (set BENCH_BIN)");
    report(8, "CLI determinism", fail, seconds_since(start));
    return;
  }

  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "gcb_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);

  Graph g = planted_cliques(20, 10, 0.05, 3);
  write_edge_list_file(g, (dir / "graph.txt").string());
  {
    std::ofstream cfg(dir / "config.json");
    cfg << "{\n"
        << "  \"datasets\": [{\"name\": \"cliques\", \"path\": \""
        << (dir / "graph.txt").string() << "\"}],\n"
        << "  \"methods\": [\"labelprop\", \"multilevel\", \"fastgreedy\", "
           "\"leadingeigen\", \"infomap\", \"slashburn\", \"random\", "
           "\"identity\"],\n"
        << "  \"block_widths\": [32, 64],\n"
        << "  \"seed\": 7\n"
        << "}\n";
  }

  auto run_once = [&](const std::string& out_name, int jobs) {
    std::string cmd = bench + " run --config " + (dir / "config.json").string() +
                      " --jobs " + std::to_string(jobs) + " --output " +
                      (dir / out_name).string();
    return std::system(cmd.c_str());
  };

  check.require(run_once("a.csv", 1) == 0, "bench run failed (jobs=1)");
  check.require(run_once("b.csv", 1) == 0, "bench run failed (second)");
  check.require(run_once("c.csv", 8) == 0, "bench run failed (jobs=8)");
  check.require(run_once("d.csv", 8) == 0, "bench run failed (jobs=8, second)");

  std::string a = slurp((dir / "a.csv").string());
  check.require(!a.empty(), "no CSV produced");
  check.require(a == slurp((dir / "b.csv").string()),
                "serial reruns differ");
  check.require(a == slurp((dir / "c.csv").string()),
                "jobs=8 differs from jobs=1");
  check.require(a == slurp((dir / "d.csv").string()),
                "jobs=8 reruns differ");

  fs::remove_all(dir);
  report(8, "CLI determinism (byte-identical CSV, incl. --jobs 8)", check,
         seconds_since(start));
}

}  // namespace

int main() {
  criterion_cost_oracle();
  criterion_entropy_identities();
  criterion_permutation_consistency();
  criterion_detection();
  criterion_slashburn();
  criterion_central_finding();
  criterion_facebook_band();
  criterion_cli_determinism();

  if (failures == 0) {
    std::printf("acceptance: all criteria passed (%d skipped)\n", skips);
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
