#include "gcb/blockcost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gcb/log.hpp"

#ifdef _OPENMP
#include <omp.h>
#include <parallel/algorithm>
#endif

namespace gcb {

std::uint64_t BlockHistogram::total_ones() const {
  std::uint64_t total = 0;
  for (const Entry& e : blocks) total += e.ones;
  return total;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binary_entropy: p must lie in [0, 1]");
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  return p * std::log2(1.0 / p) + (1.0 - p) * std::log2(1.0 / (1.0 - p));
}

namespace {

inline std::uint64_t num_side_blocks(NodeId n, std::uint32_t b) {
  return (static_cast<std::uint64_t>(n) + b - 1) / b;
}

void check_cost_inputs(const Graph& g, const Ordering& ordering,
                       const CostParams& params) {
  if (ordering.size() != g.num_nodes()) {
    throw std::invalid_argument("block cost: ordering size mismatch");
  }
  if (params.b < 1) throw std::invalid_argument("block cost: b must be >= 1");
}

// Every directed edge (u, v) yields one block key, covering both symmetric
// cells of the undirected edge across the whole pass.
std::vector<std::uint64_t> block_keys(const Graph& g, const Ordering& ordering,
                                      std::uint32_t b, bool parallel) {
  const std::uint64_t side = num_side_blocks(g.num_nodes(), b);
  std::vector<std::uint64_t> keys(2 * g.num_edges());

  const NodeId n = g.num_nodes();
  std::vector<std::uint64_t> row_start(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) row_start[u + 1] = row_start[u] + g.degree(u);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (NodeId u = 0; u < n; ++u) {
    const std::uint64_t rb = ordering.position_of(u) / b;
    std::uint64_t at = row_start[u];
    for (NodeId v : g.neighbors(u)) {
      keys[at++] = rb * side + ordering.position_of(v) / b;
    }
  }
  (void)parallel;
  return keys;
}

BlockHistogram histogram_from_keys(std::vector<std::uint64_t> keys,
                                   std::uint32_t b, std::uint64_t side) {
  BlockHistogram hist;
  hist.b = b;
  std::size_t i = 0;
  while (i < keys.size()) {
    std::size_t j = i + 1;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    hist.blocks.push_back({static_cast<std::uint32_t>(keys[i] / side),
                           static_cast<std::uint32_t>(keys[i] % side),
                           static_cast<std::uint64_t>(j - i)});
    i = j;
  }
  return hist;
}

}  // namespace

BlockHistogram block_histogram_serial(const Graph& g, const Ordering& ordering,
                                      const CostParams& params) {
  check_cost_inputs(g, ordering, params);
  auto keys = block_keys(g, ordering, params.b, /*parallel=*/false);
  std::sort(keys.begin(), keys.end());
  return histogram_from_keys(std::move(keys), params.b,
                             num_side_blocks(g.num_nodes(), params.b));
}

BlockHistogram block_histogram(const Graph& g, const Ordering& ordering,
                               const CostParams& params) {
  check_cost_inputs(g, ordering, params);
  auto keys = block_keys(g, ordering, params.b, /*parallel=*/true);
#ifdef _OPENMP
  __gnu_parallel::sort(keys.begin(), keys.end());
#else
  std::sort(keys.begin(), keys.end());
#endif
  return histogram_from_keys(std::move(keys), params.b,
                             num_side_blocks(g.num_nodes(), params.b));
}

std::uint64_t cost1(const Graph& g, const Ordering& ordering,
                    const CostParams& params) {
  return block_histogram(g, ordering, params).num_nonempty();
}

CostReport cost2_from_histogram(const BlockHistogram& hist, NodeId n,
                                std::uint64_t m) {
  if (m == 0) throw std::runtime_error("no links");
  const std::uint32_t b = hist.b;

  double address_bits = 2.0 * std::log2(static_cast<double>(n) / b);
  if (address_bits < 0.0) {
    log::warn("block width exceeds node count; clamping block-address bits at 0");
    address_bits = 0.0;
  }

  // Chunked accumulation: partial sums over fixed 4096-entry ranges are
  // reduced in index order, so the result does not depend on the thread
  // count.
  const double cells = static_cast<double>(b) * static_cast<double>(b);
  const std::size_t kChunk = 4096;
  const std::size_t num_chunks = (hist.blocks.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(num_chunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::size_t c = 0; c < num_chunks; ++c) {
    const std::size_t end = std::min(hist.blocks.size(), (c + 1) * kChunk);
    double sum = 0.0;
    for (std::size_t i = c * kChunk; i < end; ++i) {
      sum += cells * binary_entropy(static_cast<double>(hist.blocks[i].ones) / cells);
    }
    partial[c] = sum;
  }
  double data_bits = 0.0;
  for (double s : partial) data_bits += s;

  CostReport report;
  report.b = b;
  report.n = n;
  report.m = m;
  report.nonempty_blocks = hist.num_nonempty();
  report.total_bits =
      static_cast<double>(hist.num_nonempty()) * address_bits + data_bits;
  report.bits_per_link = report.total_bits / static_cast<double>(m);
  const double side = static_cast<double>(num_side_blocks(n, b));
  report.nonempty_fraction =
      static_cast<double>(report.nonempty_blocks) / (side * side);
  return report;
}

CostReport cost2(const Graph& g, const Ordering& ordering,
                 const CostParams& params) {
  const BlockHistogram hist = block_histogram(g, ordering, params);
  return cost2_from_histogram(hist, g.num_nodes(), g.num_edges());
}

std::vector<CostReport> sweep(const Graph& g,
                              const std::vector<Ordering>& orderings,
                              const std::vector<std::uint32_t>& block_widths) {
  if (g.num_edges() == 0) throw std::runtime_error("no links");
  for (const Ordering& o : orderings) {
    if (o.size() != g.num_nodes()) {
      throw std::invalid_argument("sweep: ordering size mismatch");
    }
  }
  std::vector<CostReport> reports(orderings.size() * block_widths.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) collapse(2)
#endif
  for (std::size_t i = 0; i < orderings.size(); ++i) {
    for (std::size_t j = 0; j < block_widths.size(); ++j) {
      reports[i * block_widths.size() + j] =
          cost2(g, orderings[i], CostParams{block_widths[j]});
    }
  }
  return reports;
}

}  // namespace gcb
