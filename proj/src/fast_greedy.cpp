#include <cstdint>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "gcb/detect.hpp"

namespace gcb {

namespace {

struct MergeCandidate {
  double gain;
  NodeId a, b;  // a < b
  std::uint32_t stamp_a, stamp_b;
};

struct CandidateLess {
  bool operator()(const MergeCandidate& x, const MergeCandidate& y) const {
    if (x.gain != y.gain) return x.gain < y.gain;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  }
};

}  // namespace

DetectResult fast_greedy(const Graph& g, const DetectParams&) {
  const NodeId n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("fast_greedy: empty graph");

  DetectResult result;
  result.objective_name = "modularity";
  if (g.num_edges() == 0) {
    result.partition = Partition::singletons(n);
    result.objective = 0.0;
    return result;
  }

  const double m = static_cast<double>(g.num_edges());
  // Merging communities A and B changes Q by m_AB/m - K_A*K_B/(2 m^2).
  auto gain_of = [m](double edges_between, double ka, double kb) {
    return edges_between / m - ka * kb / (2.0 * m * m);
  };

  std::vector<double> degree_sum(n);
  std::vector<std::unordered_map<NodeId, double>> between(n);
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<bool> alive(n, true);

  std::priority_queue<MergeCandidate, std::vector<MergeCandidate>, CandidateLess>
      heap;
  for (NodeId u = 0; u < n; ++u) {
    degree_sum[u] = static_cast<double>(g.degree(u));
    for (NodeId v : g.neighbors(u)) {
      between[u][v] = 1.0;
      if (u < v) {
        heap.push({gain_of(1.0, degree_sum[u], degree_sum[v]), u, v, 0, 0});
      }
    }
  }

  // Union-find over original nodes; community ids live on the roots.
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };

  while (!heap.empty()) {
    MergeCandidate top = heap.top();
    heap.pop();
    if (!alive[top.a] || !alive[top.b] || stamp[top.a] != top.stamp_a ||
        stamp[top.b] != top.stamp_b) {
      continue;
    }
    if (top.gain <= 0.0) break;  // modularity peak reached

    // Merge b into a.
    NodeId a = top.a;
    NodeId b = top.b;
    parent[b] = a;
    alive[b] = false;
    ++stamp[a];
    ++stamp[b];
    degree_sum[a] += degree_sum[b];

    for (const auto& [x, w] : between[b]) {
      if (x == a || !alive[x]) continue;
      between[a][x] += w;
      auto& row = between[x];
      row.erase(b);
      row[a] = between[a][x];
    }
    between[b].clear();

    for (const auto& [x, w] : between[a]) {
      if (!alive[x]) continue;
      NodeId lo = std::min(a, x);
      NodeId hi = std::max(a, x);
      heap.push({gain_of(w, degree_sum[a], degree_sum[x]), lo, hi, stamp[lo],
                 stamp[hi]});
    }
  }

  std::vector<NodeId> label(n);
  for (NodeId v = 0; v < n; ++v) label[v] = find(v);
  result.partition = Partition(std::move(label));
  result.objective = modularity(g, result.partition);
  return result;
}

}  // namespace gcb
