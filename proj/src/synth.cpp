#include "gcb/synth.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "gcb/rng.hpp"

namespace gcb {

Graph planted_cliques(std::uint32_t num_cliques, std::uint32_t clique_size,
                      double inter_edge_prob, std::uint64_t seed) {
  if (num_cliques < 1 || clique_size < 1) {
    throw std::invalid_argument("planted_cliques: need at least one clique of size 1");
  }
  if (inter_edge_prob < 0.0 || inter_edge_prob > 1.0) {
    throw std::invalid_argument("planted_cliques: inter_edge_prob outside [0, 1]");
  }
  const std::uint64_t n64 =
      static_cast<std::uint64_t>(num_cliques) * clique_size;
  if (n64 > 0xFFFFFFFFULL) throw std::invalid_argument("planted_cliques: too large");
  const NodeId n = static_cast<NodeId>(n64);

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(num_cliques) * clique_size *
                (clique_size - 1) / 2);
  for (std::uint32_t c = 0; c < num_cliques; ++c) {
    NodeId base = c * clique_size;
    for (std::uint32_t i = 0; i < clique_size; ++i) {
      for (std::uint32_t j = i + 1; j < clique_size; ++j) {
        edges.emplace_back(base + i, base + j);
      }
    }
  }
  // Sparse bridges: each clique pair gets one edge between uniformly
  // chosen endpoints with probability inter_edge_prob.
  Rng rng(seed);
  for (std::uint32_t a = 0; a < num_cliques; ++a) {
    for (std::uint32_t b = a + 1; b < num_cliques; ++b) {
      if (inter_edge_prob > 0.0 && rng.bernoulli(inter_edge_prob)) {
        NodeId u = a * clique_size +
                   static_cast<NodeId>(rng.next_below(clique_size));
        NodeId v = b * clique_size +
                   static_cast<NodeId>(rng.next_below(clique_size));
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph power_law(NodeId n, std::uint32_t attach, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("power_law: n must be >= 1");
  if (attach < 1) throw std::invalid_argument("power_law: attach must be >= 1");

  std::vector<std::pair<NodeId, NodeId>> edges;
  // Endpoint pool: picking a uniform entry selects a node with probability
  // proportional to its degree.
  std::vector<NodeId> pool;
  Rng rng(seed);

  if (n >= 2) {
    edges.emplace_back(0, 1);
    pool.push_back(0);
    pool.push_back(1);
  }
  std::vector<NodeId> picked;
  for (NodeId v = 2; v < n; ++v) {
    const std::uint32_t want = std::min<std::uint32_t>(attach, v);
    picked.clear();
    while (picked.size() < want) {
      NodeId target = pool[rng.next_below(pool.size())];
      bool fresh = true;
      for (NodeId p : picked) {
        if (p == target) {
          fresh = false;
          break;
        }
      }
      if (fresh) picked.push_back(target);
    }
    for (NodeId target : picked) {
      edges.emplace_back(v, target);
      pool.push_back(v);
      pool.push_back(target);
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace gcb
