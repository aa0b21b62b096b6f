#pragma once

#include <cstdint>

#include "gcb/graph.hpp"

namespace gcb {

// c disjoint cliques of size s, plus sparse bridges: each pair of cliques
// gets one edge between uniformly chosen endpoints with probability
// inter_edge_prob.
Graph planted_cliques(std::uint32_t num_cliques, std::uint32_t clique_size,
                      double inter_edge_prob, std::uint64_t seed);

// Preferential attachment: node 0 starts alone, node 1 links to it, every
// later node attaches to `attach` distinct existing nodes chosen with
// probability proportional to degree. m = 1 + attach * (n - 2) for n >= 2.
Graph power_law(NodeId n, std::uint32_t attach, std::uint64_t seed);

}  // namespace gcb
