#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gcb/detect.hpp"
#include "gcb/rng.hpp"
#include "local_graph.hpp"

namespace gcb {

namespace {

using detail::LocalGraph;

inline double plogp(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Module bookkeeping for the map-equation local moves. All rates are
// normalized by 2W with W the (level-0) total edge weight, which never
// changes across aggregation levels.
struct ModuleState {
  std::vector<double> cut;       // boundary weight per module
  std::vector<double> strength;  // strength sum per module
  double sum_exit = 0.0;         // sum of cut / 2W

  double partition_terms(double two_w) const {
    double sum_exit_log = 0.0;
    double sum_stay_log = 0.0;
    for (std::size_t c = 0; c < cut.size(); ++c) {
      double q = cut[c] / two_w;
      sum_exit_log += plogp(q);
      sum_stay_log += plogp(q + strength[c] / two_w);
    }
    return plogp(sum_exit) - 2.0 * sum_exit_log + sum_stay_log;
  }
};

// Greedy codelength-lowering single-node moves; mirrors the modularity
// local phase but scores with the map equation.
NodeId map_local_moves(const LocalGraph& lg, std::vector<NodeId>& label,
                       Rng& rng, std::uint32_t max_sweeps) {
  const NodeId n = lg.num_nodes();
  const double two_w = 2.0 * lg.total_weight;

  ModuleState state;
  state.cut.assign(n, 0.0);
  state.strength.assign(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    state.strength[label[v]] += lg.strength[v];
    for (const auto& [w, weight] : lg.adjacency[v]) {
      if (label[w] != label[v]) state.cut[label[v]] += weight;
    }
  }
  for (NodeId c = 0; c < n; ++c) state.sum_exit += state.cut[c] / two_w;

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
      double out_u = 0.0;
      for (const auto& [v, w] : lg.adjacency[u]) {
        NodeId cv = label[v];
        if (weight_to[cv] == 0.0) touched.push_back(cv);
        weight_to[cv] += w;
        out_u += w;
      }
      const double s_u = lg.strength[u];
      const double w_home = weight_to[home];

      // Terms of the codelength touched by pulling u out of `home`.
      auto terms = [&](double cut_c, double k_c, double sum_exit) {
        double q = cut_c / two_w;
        return plogp(sum_exit) - 2.0 * plogp(q) + plogp(q + k_c / two_w);
      };
      const double cut_home_without =
          state.cut[home] + 2.0 * w_home - out_u;
      const double exit_without =
          state.sum_exit + (2.0 * w_home - out_u) / two_w;

      double best_delta = 0.0;
      NodeId best = home;
      for (NodeId c : touched) {
        if (c == home) continue;
        double cut_c_with = state.cut[c] + out_u - 2.0 * weight_to[c];
        double exit_with = exit_without + (out_u - 2.0 * weight_to[c]) / two_w;
        double before = terms(state.cut[home], state.strength[home], 0.0) +
                        terms(state.cut[c], state.strength[c], state.sum_exit);
        double after =
            terms(cut_home_without, state.strength[home] - s_u, 0.0) +
            terms(cut_c_with, state.strength[c] + s_u, exit_with);
        double delta = after - before;
        if (delta < best_delta - 1e-13 ||
            (std::abs(delta - best_delta) <= 1e-13 && best != home && c < best)) {
          best_delta = delta;
          best = c;
        }
      }
      if (best != home) {
        state.cut[home] = cut_home_without;
        state.cut[best] += out_u - 2.0 * weight_to[best];
        state.sum_exit =
            exit_without + (out_u - 2.0 * weight_to[best]) / two_w;
        state.strength[home] -= s_u;
        state.strength[best] += s_u;
        label[u] = best;
        moved = true;
      }
      for (NodeId c : touched) weight_to[c] = 0.0;
    }
    if (!moved) break;
  }

  std::vector<NodeId> remap(n, kInvalidNode);
  NodeId next = 0;
  for (NodeId& l : label) {
    if (remap[l] == kInvalidNode) remap[l] = next++;
    l = remap[l];
  }
  return next;
}

}  // namespace

DetectResult infomap_two_level(const Graph& g, const DetectParams& params) {
  const NodeId n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("infomap: empty graph");

  DetectResult result;
  result.objective_name = "codelength";
  if (g.num_edges() == 0) {
    result.partition = Partition::singletons(n);
    result.objective = 0.0;
    return result;
  }

  Rng rng(params.seed);
  LocalGraph lg = LocalGraph::from_graph(g);
  std::vector<NodeId> flat(n);
  std::iota(flat.begin(), flat.end(), NodeId{0});

  while (true) {
    std::vector<NodeId> label(lg.num_nodes());
    std::iota(label.begin(), label.end(), NodeId{0});
    NodeId modules = map_local_moves(lg, label, rng, params.max_iterations);
    if (modules == lg.num_nodes()) break;
    for (NodeId v = 0; v < n; ++v) flat[v] = label[flat[v]];
    if (modules == 1) break;
    lg = lg.aggregate(label, modules);
  }

  Partition found(std::move(flat));
  double found_length = map_equation_codelength(g, found);
  double one_module_length =
      map_equation_codelength(g, Partition::one_community(n));
  if (one_module_length < found_length) {
    result.partition = Partition::one_community(n);
    result.objective = one_module_length;
  } else {
    result.partition = std::move(found);
    result.objective = found_length;
  }
  return result;
}

}  // namespace gcb
