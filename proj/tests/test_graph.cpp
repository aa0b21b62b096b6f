#include <stdexcept>
#include <algorithm>
#include <map>
#include <sstream>

#include "doctest.h"
#include "gcb/graph.hpp"
#include "gcb/ordering.hpp"
#include "gcb/rng.hpp"
#include "test_util.hpp"

using namespace gcb;

namespace {

Graph load_string(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in).graph;
}

std::vector<std::uint64_t> sorted_component_sizes(const Graph& g) {
  auto sizes = connected_components(g).component_sizes;
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

TEST_CASE("load_edge_list basic parsing") {
  Graph g = load_string("0 1\n1 2\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 2);
}

TEST_CASE("load_edge_list drops duplicates and self-loops with counts") {
  std::istringstream in("0 1\n1 0\n0 0\n");
  EdgeListResult result = load_edge_list(in);
  CHECK(result.graph.num_nodes() == 2);
  CHECK(result.graph.num_edges() == 1);
  CHECK(result.duplicates_dropped == 1);
  CHECK(result.self_loops_dropped == 1);
}

TEST_CASE("load_edge_list skips comments and remaps labels in appearance order") {
  Graph g = load_string("# c\na b\nb c\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 2);
  REQUIRE(g.has_labels());
  CHECK(g.label(0) == "a");
  CHECK(g.label(1) == "b");
  CHECK(g.label(2) == "c");
}

TEST_CASE("load_edge_list percent comments and whitespace") {
  Graph g = load_string("% header\n  3   7 \n7 9\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.label(0) == "3");
}

TEST_CASE("load_edge_list malformed line reports line number") {
  std::istringstream in("0 1\n0 1 2\n");
  CHECK_THROWS_WITH_AS(load_edge_list(in),
                       doctest::Contains("line 2"), std::runtime_error);
}

TEST_CASE("load_edge_list empty input") {
  std::istringstream in("# only comments\n");
  CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("no edges"),
                       std::runtime_error);
}

TEST_CASE("degree examples") {
  CHECK(testutil::triangle().degree(0) == 2);
  CHECK(testutil::star(5).degree(0) == 5);
  Graph p = testutil::path(3);
  CHECK(p.degree(1) == 2);
  CHECK(p.degree(0) == 1);
  CHECK(p.degree(2) == 1);
  CHECK_THROWS_AS(p.degree(3), std::out_of_range);
}

TEST_CASE("degree_sequence sums to 2m") {
  Graph g = testutil::random_graph(40, 0.2, 7);
  auto degs = g.degree_sequence();
  std::uint64_t total = 0;
  for (NodeId d : degs) total += d;
  CHECK(total == 2 * g.num_edges());
}

TEST_CASE("connected_components examples") {
  SUBCASE("two disjoint triangles") {
    auto labeling = connected_components(testutil::two_triangles());
    CHECK(labeling.num_components() == 2);
    CHECK(labeling.component_sizes == std::vector<std::uint64_t>{3, 3});
    CHECK(labeling.giant_component_id == 0);
  }
  SUBCASE("edgeless graph") {
    auto labeling = connected_components(testutil::from_edges(4, {}));
    CHECK(labeling.num_components() == 4);
    for (NodeId v = 0; v < 4; ++v) CHECK(labeling.component_of[v] == v);
  }
  SUBCASE("four-cycle") {
    auto labeling = connected_components(testutil::cycle(4));
    CHECK(labeling.num_components() == 1);
    CHECK(labeling.component_sizes[0] == 4);
  }
}

TEST_CASE("components numbered by smallest member id") {
  Graph g = testutil::from_edges(5, {{4, 2}, {1, 3}});
  auto labeling = connected_components(g);
  CHECK(labeling.component_of[0] == 0);
  CHECK(labeling.component_of[1] == 1);
  CHECK(labeling.component_of[3] == 1);
  CHECK(labeling.component_of[2] == 2);
  CHECK(labeling.component_of[4] == 2);
}

TEST_CASE("remove_nodes examples") {
  SUBCASE("star hub removal isolates the leaves") {
    auto result = remove_nodes(testutil::star(5), {0});
    CHECK(result.graph.num_nodes() == 5);
    CHECK(result.graph.num_edges() == 0);
    auto labeling = connected_components(result.graph);
    CHECK(labeling.num_components() == 5);
  }
  SUBCASE("empty removal is the identity") {
    Graph k3 = testutil::triangle();
    auto result = remove_nodes(k3, {});
    CHECK(result.graph == k3);
    for (NodeId v = 0; v < 3; ++v) CHECK(result.survivor_map[v] == v);
  }
  SUBCASE("cycle minus one node is a path") {
    auto result = remove_nodes(testutil::cycle(4), {0});
    CHECK(result.graph.num_nodes() == 3);
    CHECK(result.graph.num_edges() == 2);
    CHECK(result.survivor_map[0] == kInvalidNode);
    CHECK(result.graph == testutil::path(3));
  }
  SUBCASE("out of range") {
    CHECK_THROWS_AS(remove_nodes(testutil::triangle(), {5}), std::out_of_range);
  }
}

TEST_CASE("permute_graph examples") {
  Graph p = testutil::path(3);
  SUBCASE("identity") {
    CHECK(permute_graph(p, identity_ordering(3)) == p);
  }
  SUBCASE("reversal of a path relabels onto itself") {
    Ordering rev(std::vector<NodeId>{2, 1, 0});
    CHECK(permute_graph(p, rev) == p);
  }
  SUBCASE("permute then inverse-permute restores the graph") {
    Graph g = testutil::random_graph(20, 0.3, 11);
    Ordering pi = random_ordering(20, 5);
    CHECK(permute_graph(permute_graph(g, pi), invert(pi)) == g);
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(permute_graph(p, identity_ordering(4)),
                    std::invalid_argument);
  }
}

TEST_CASE("permutation preserves structure" *
          doctest::description("n, m, degree multiset, component sizes")) {
  Rng seeds(99);
  for (int trial = 0; trial < 25; ++trial) {
    NodeId n = 2 + static_cast<NodeId>(seeds.next_below(30));
    Graph g = testutil::random_graph(n, 0.15, seeds.next());
    Ordering pi = random_ordering(n, seeds.next());
    Graph h = permute_graph(g, pi);

    CHECK(h.num_nodes() == g.num_nodes());
    CHECK(h.num_edges() == g.num_edges());

    auto dg = g.degree_sequence();
    auto dh = h.degree_sequence();
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    CHECK(dg == dh);

    CHECK(sorted_component_sizes(g) == sorted_component_sizes(h));
  }
}

TEST_CASE("graph symmetry and sorted rows hold for loaded graphs") {
  Graph g = testutil::random_graph(30, 0.25, 3);
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    auto row = g.neighbors(u);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) CHECK(row[i] > row[i - 1]);
      CHECK(g.has_edge(row[i], u));
    }
  }
}

TEST_CASE("edge list round-trip") {
  SUBCASE("loaded graphs reload identically") {
    for (const char* text :
         {"0 1\n1 2\n", "# c\na b\nb c\n", "0 3\n1 2\n", "0 1\n2 3\n1 3\n"}) {
      Graph g = load_string(text);
      std::ostringstream out;
      write_edge_list(g, out);
      Graph back = load_string(out.str());
      CHECK(back == g);
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        CHECK(back.label(v) == g.label(v));
      }
    }
  }
  SUBCASE("one round trip canonicalizes arbitrary graphs") {
    Rng seeds(41);
    for (int trial = 0; trial < 20; ++trial) {
      NodeId n = 2 + static_cast<NodeId>(seeds.next_below(25));
      Graph g0 = testutil::random_graph(n, 0.2, seeds.next());
      if (g0.num_edges() == 0) continue;
      std::ostringstream first;
      write_edge_list(g0, first);
      Graph g1 = load_string(first.str());
      std::ostringstream second;
      write_edge_list(g1, second);
      Graph g2 = load_string(second.str());
      CHECK(g1 == g2);
    }
  }
}
