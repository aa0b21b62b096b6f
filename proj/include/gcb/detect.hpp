#pragma once

#include <cstdint>
#include <string>

#include "gcb/graph.hpp"
#include "gcb/partition.hpp"

namespace gcb {

struct DetectParams {
  std::uint64_t seed = 1;
  std::uint32_t max_iterations = 100;  // sweeps / levels, method dependent
  double tolerance = 1e-9;             // eigensolver convergence threshold
};

struct DetectResult {
  Partition partition;
  // Modularity for the modularity-driven methods and label propagation,
  // map-equation codelength for infomap.
  double objective = 0.0;
  std::string objective_name;
};

// Asynchronous label propagation: each sweep visits nodes in seeded-random
// order and adopts a most frequent neighbor label (current label kept when
// tied, otherwise the lowest label wins). Stops at a fixed point or after
// max_iterations sweeps.
DetectResult label_propagation(const Graph& g, const DetectParams& params);

// Multilevel modularity optimization: local moves to a gain fixed point,
// then community aggregation, repeated until modularity stops improving.
DetectResult louvain_multilevel(const Graph& g, const DetectParams& params);

// Agglomerative modularity optimization from singletons with a lazy
// max-gain heap; merging stops when the best gain is no longer positive.
DetectResult fast_greedy(const Graph& g, const DetectParams& params);

// Recursive spectral bisection on the (generalized) modularity matrix.
// The leading eigenvector comes from shifted power iteration; a community
// splits only while the split contributes positive modularity.
DetectResult leading_eigenvector(const Graph& g, const DetectParams& params);

// Two-level map equation minimization with Louvain-style local moves and
// aggregation. Never returns a partition coding worse than one module.
DetectResult infomap_two_level(const Graph& g, const DetectParams& params);

}  // namespace gcb
