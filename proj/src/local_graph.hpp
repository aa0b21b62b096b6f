#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "gcb/graph.hpp"

namespace gcb::detail {

// Weighted undirected working graph for the multilevel optimizers.
// Aggregating a level turns each community into a supernode whose self-loop
// carries the internal weight; strengths count self-loops twice.
struct LocalGraph {
  std::vector<std::vector<std::pair<NodeId, double>>> adjacency;
  std::vector<double> self_loop;  // full weight of internal (loop) edges
  std::vector<double> strength;   // sum of incident weights, loops twice
  double total_weight = 0.0;      // sum of edge weights incl. loops (m at level 0)

  NodeId num_nodes() const { return static_cast<NodeId>(adjacency.size()); }

  static LocalGraph from_graph(const Graph& g) {
    LocalGraph lg;
    lg.adjacency.resize(g.num_nodes());
    lg.self_loop.assign(g.num_nodes(), 0.0);
    lg.strength.assign(g.num_nodes(), 0.0);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      auto row = g.neighbors(u);
      lg.adjacency[u].reserve(row.size());
      for (NodeId v : row) lg.adjacency[u].emplace_back(v, 1.0);
      lg.strength[u] = static_cast<double>(row.size());
    }
    lg.total_weight = static_cast<double>(g.num_edges());
    return lg;
  }

  LocalGraph aggregate(const std::vector<NodeId>& label_of,
                       NodeId num_communities) const {
    LocalGraph out;
    out.adjacency.resize(num_communities);
    out.self_loop.assign(num_communities, 0.0);
    out.strength.assign(num_communities, 0.0);
    out.total_weight = total_weight;

    // Accumulate per-community rows with a scratch buffer keyed by target
    // community; deterministic because nodes are scanned in id order.
    std::vector<double> weight_to(num_communities, 0.0);
    std::vector<NodeId> touched;
    std::vector<std::vector<NodeId>> members(num_communities);
    for (NodeId v = 0; v < num_nodes(); ++v) members[label_of[v]].push_back(v);

    for (NodeId c = 0; c < num_communities; ++c) {
      touched.clear();
      double internal = 0.0;
      for (NodeId v : members[c]) {
        internal += self_loop[v];
        for (const auto& [w, weight] : adjacency[v]) {
          NodeId cw = label_of[w];
          if (cw == c) {
            internal += weight * 0.5;  // both endpoints scan the edge
          } else {
            if (weight_to[cw] == 0.0) touched.push_back(cw);
            weight_to[cw] += weight;
          }
        }
      }
      out.self_loop[c] = internal;
      out.adjacency[c].reserve(touched.size());
      std::sort(touched.begin(), touched.end());
      for (NodeId cw : touched) {
        out.adjacency[c].emplace_back(cw, weight_to[cw]);
        weight_to[cw] = 0.0;
      }
      double s = 2.0 * internal;
      for (const auto& [cw, w] : out.adjacency[c]) s += w;
      out.strength[c] = s;
    }
    return out;
  }
};

}  // namespace gcb::detail
