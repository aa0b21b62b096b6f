#include <numeric>
#include <stdexcept>
#include <vector>

#include "gcb/detect.hpp"
#include "gcb/rng.hpp"
#include "local_graph.hpp"

namespace gcb {

namespace {

using detail::LocalGraph;

// One local-move phase: greedy gain-improving single-node moves in
// seeded-random order until a full sweep moves nothing. Returns the number
// of distinct communities left and rewrites `label` in place.
NodeId local_moves(const LocalGraph& lg, std::vector<NodeId>& label, Rng& rng,
                   std::uint32_t max_sweeps) {
  const NodeId n = lg.num_nodes();
  const double two_w = 2.0 * lg.total_weight;

  std::vector<double> community_strength(n, 0.0);
  for (NodeId v = 0; v < n; ++v) community_strength[label[v]] += lg.strength[v];

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});

  std::vector<double> weight_to(n, 0.0);
  std::vector<NodeId> touched;

  for (std::uint32_t sweep = 0; sweep < max_sweeps; ++sweep) {
    rng.shuffle(order);
    bool moved = false;
    for (NodeId u : order) {
      const NodeId home = label[u];
      touched.clear();
      for (const auto& [v, w] : lg.adjacency[u]) {
        NodeId cv = label[v];
        if (weight_to[cv] == 0.0) touched.push_back(cv);
        weight_to[cv] += w;
      }

      community_strength[home] -= lg.strength[u];
      // Gain of joining community c, relative to staying alone:
      //   w(u->c)/W - strength_u * K_c / (2 W^2)
      // Common factors are dropped; only the argmax matters.
      double best_gain = weight_to[home] -
                         lg.strength[u] * community_strength[home] / two_w;
      NodeId best = home;
      for (NodeId c : touched) {
        if (c == home) continue;
        double gain =
            weight_to[c] - lg.strength[u] * community_strength[c] / two_w;
        if (gain > best_gain || (gain == best_gain && c < best)) {
          best_gain = gain;
          best = c;
        }
      }
      community_strength[best] += lg.strength[u];
      for (NodeId c : touched) weight_to[c] = 0.0;
      if (best != home) {
        label[u] = best;
        moved = true;
      }
    }
    if (!moved) break;
  }

  // Compact community ids.
  std::vector<NodeId> remap(n, kInvalidNode);
  NodeId next = 0;
  for (NodeId& l : label) {
    if (remap[l] == kInvalidNode) remap[l] = next++;
    l = remap[l];
  }
  return next;
}

}  // namespace

DetectResult louvain_multilevel(const Graph& g, const DetectParams& params) {
  const NodeId n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("louvain: empty graph");

  DetectResult result;
  result.objective_name = "modularity";
  if (g.num_edges() == 0) {
    result.partition = Partition::singletons(n);
    result.objective = 0.0;
    return result;
  }

  Rng rng(params.seed);
  LocalGraph lg = LocalGraph::from_graph(g);

  // flat[v] = community of original node v under the partition built so far.
  std::vector<NodeId> flat(n);
  std::iota(flat.begin(), flat.end(), NodeId{0});

  while (true) {
    std::vector<NodeId> label(lg.num_nodes());
    std::iota(label.begin(), label.end(), NodeId{0});
    NodeId communities = local_moves(lg, label, rng, params.max_iterations);
    if (communities == lg.num_nodes()) break;  // no merge happened, done

    for (NodeId v = 0; v < n; ++v) flat[v] = label[flat[v]];
    if (communities == 1) break;
    lg = lg.aggregate(label, communities);
  }

  result.partition = Partition(std::move(flat));
  result.objective = modularity(g, result.partition);
  return result;
}

}  // namespace gcb
