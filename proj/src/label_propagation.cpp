#include <numeric>
#include <stdexcept>
#include <vector>

#include "gcb/detect.hpp"
#include "gcb/rng.hpp"

namespace gcb {

DetectResult label_propagation(const Graph& g, const DetectParams& params) {
  const NodeId n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("label_propagation: empty graph");

  std::vector<NodeId> label(n);
  std::iota(label.begin(), label.end(), NodeId{0});

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});

  // Scratch counters indexed by label; labels never leave [0, n).
  std::vector<NodeId> count(n, 0);
  std::vector<NodeId> touched;

  Rng rng(params.seed);
  for (std::uint32_t sweep = 0; sweep < params.max_iterations; ++sweep) {
    rng.shuffle(order);
    bool changed = false;
    for (NodeId u : order) {
      auto row = g.neighbors(u);
      if (row.empty()) continue;  // isolated nodes keep their own label

      touched.clear();
      NodeId best_count = 0;
      for (NodeId v : row) {
        NodeId lv = label[v];
        if (count[lv] == 0) touched.push_back(lv);
        if (++count[lv] > best_count) best_count = count[lv];
      }
      // Keep the current label when it ties the maximum, otherwise adopt
      // the lowest label among the maxima.
      NodeId current = label[u];
      NodeId winner = kInvalidNode;
      for (NodeId lv : touched) {
        if (count[lv] == best_count && lv < winner) winner = lv;
      }
      bool keep = count[current] == best_count;
      for (NodeId lv : touched) count[lv] = 0;
      if (!keep && winner != current) {
        label[u] = winner;
        changed = true;
      }
    }
    if (!changed) break;
  }

  DetectResult result;
  result.partition = Partition(std::move(label));
  result.objective = modularity(g, result.partition);
  result.objective_name = "modularity";
  return result;
}

}  // namespace gcb
