#pragma once

#include <cstdint>
#include <vector>

#include "gcb/graph.hpp"
#include "gcb/ordering.hpp"

namespace gcb {

struct CostParams {
  std::uint32_t b = 1;  // block width in matrix cells, b >= 1
};

/// Per-block 1-entry counts for the non-empty blocks of the permuted
/// symmetric adjacency matrix, sorted by (row_block, col_block).
struct BlockHistogram {
  struct Entry {
    std::uint32_t row_block;
    std::uint32_t col_block;
    std::uint64_t ones;  // z, in [1, b^2]
  };
  std::vector<Entry> blocks;
  std::uint32_t b = 1;

  std::uint64_t num_nonempty() const { return blocks.size(); }
  std::uint64_t total_ones() const;  // equals 2m
};

struct CostReport {
  std::string dataset;
  std::string ordering_name;
  std::uint64_t nonempty_blocks = 0;  // cost1
  double total_bits = 0.0;            // cost2 numerator
  double bits_per_link = 0.0;         // total_bits / m
  std::uint32_t b = 1;
  NodeId n = 0;
  std::uint64_t m = 0;
  double nonempty_fraction = 0.0;     // nonempty_blocks / ceil(n/b)^2
};

// Binary Shannon entropy in bits, with H(0) = H(1) = 0.
// Throws std::domain_error for p outside [0, 1].
double binary_entropy(double p);

// Streaming single pass over the edges: each edge (u, v) contributes the
// two symmetric cells (pos(u), pos(v)) and (pos(v), pos(u)). Memory is
// proportional to 2m block keys; the dense matrix is never built.
// The default entry point uses the OpenMP kernels; the _serial variant is
// the reference implementation and produces identical output.
BlockHistogram block_histogram(const Graph& g, const Ordering& ordering,
                               const CostParams& params);
BlockHistogram block_histogram_serial(const Graph& g, const Ordering& ordering,
                                      const CostParams& params);

// Number of non-empty b-by-b blocks.
std::uint64_t cost1(const Graph& g, const Ordering& ordering,
                    const CostParams& params);

// Entropy-bound block encoding size:
//   total_bits = |B| * 2 * log2(n / b) + sum_{beta in B} b^2 * H(z/b^2)
// Blocks at a ragged edge count as zero-padded to b x b. When n < b the
// block-address term is clamped at zero (with a warning). Throws
// std::runtime_error("no links") when m = 0.
CostReport cost2(const Graph& g, const Ordering& ordering,
                 const CostParams& params);
CostReport cost2_from_histogram(const BlockHistogram& hist, NodeId n,
                                std::uint64_t m);

// Cartesian evaluation over orderings x block widths, one report per cell,
// in row-major (ordering-major) input order.
std::vector<CostReport> sweep(const Graph& g,
                              const std::vector<Ordering>& orderings,
                              const std::vector<std::uint32_t>& block_widths);

}  // namespace gcb
