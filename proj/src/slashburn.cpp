#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gcb/ordering.hpp"

namespace gcb {

namespace {

struct SpokeKey {
  std::uint64_t comp_size;
  NodeId comp_id;  // components are numbered by smallest member id
  NodeId degree;
  NodeId node;
};

}  // namespace

SlashBurnResult slashburn_ordering(const Graph& g, const SlashBurnParams& params) {
  const NodeId n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("slashburn: empty graph");
  const NodeId k = params.k;
  if (k < 1 || k >= n) {
    throw std::invalid_argument("slashburn: k must satisfy 1 <= k < n");
  }

  std::vector<NodeId> position(n, kInvalidNode);
  NodeId front = 0;
  NodeId back = n - 1;

  // Degrees are maintained incrementally over the shrinking working set.
  std::vector<NodeId> degree = g.degree_sequence();
  std::vector<bool> alive(n, true);
  std::vector<NodeId> working(n);
  std::iota(working.begin(), working.end(), NodeId{0});

  auto higher_degree = [&](NodeId a, NodeId b) {
    if (degree[a] != degree[b]) return degree[a] > degree[b];
    return a < b;
  };

  std::uint32_t iterations = 0;
  std::vector<NodeId> comp_of(n, kInvalidNode);
  std::vector<NodeId> queue;

  while (!working.empty()) {
    if (working.size() <= k) {
      // The working graph fits in one hub set: its nodes fill the
      // remaining middle range by degree, and the loop ends.
      std::sort(working.begin(), working.end(), higher_degree);
      for (NodeId v : working) position[v] = front++;
      break;
    }
    ++iterations;

    // Slash: k highest-degree nodes take the lowest free positions.
    std::nth_element(working.begin(), working.begin() + k - 1, working.end(),
                     higher_degree);
    std::sort(working.begin(), working.begin() + k, higher_degree);
    for (NodeId i = 0; i < k; ++i) {
      NodeId hub = working[i];
      position[hub] = front++;
      alive[hub] = false;
    }
    for (NodeId i = 0; i < k; ++i) {
      for (NodeId v : g.neighbors(working[i])) {
        if (alive[v] && degree[v] > 0) --degree[v];
      }
    }
    working.erase(working.begin(), working.begin() + k);
    if (working.empty()) break;

    // Burn: label components of the remainder. Scanning seeds in id order
    // numbers components by their smallest member.
    std::sort(working.begin(), working.end());
    std::vector<std::uint64_t> comp_sizes;
    for (NodeId s : working) comp_of[s] = kInvalidNode;
    for (NodeId s : working) {
      if (comp_of[s] != kInvalidNode) continue;
      NodeId comp = static_cast<NodeId>(comp_sizes.size());
      std::uint64_t size = 0;
      queue.clear();
      queue.push_back(s);
      comp_of[s] = comp;
      while (!queue.empty()) {
        NodeId u = queue.back();
        queue.pop_back();
        ++size;
        for (NodeId v : g.neighbors(u)) {
          if (alive[v] && comp_of[v] == kInvalidNode) {
            comp_of[v] = comp;
            queue.push_back(v);
          }
        }
      }
      comp_sizes.push_back(size);
    }
    NodeId giant = 0;
    for (NodeId c = 1; c < comp_sizes.size(); ++c) {
      if (comp_sizes[c] > comp_sizes[giant]) giant = c;
    }

    // Spokes: everything outside the giant component goes to the back,
    // largest components first, then degree, then id.
    std::vector<SpokeKey> spokes;
    std::vector<NodeId> next_working;
    for (NodeId v : working) {
      if (comp_of[v] == giant) {
        next_working.push_back(v);
      } else {
        spokes.push_back({comp_sizes[comp_of[v]], comp_of[v], degree[v], v});
      }
    }
    std::sort(spokes.begin(), spokes.end(), [](const SpokeKey& a, const SpokeKey& b) {
      if (a.comp_size != b.comp_size) return a.comp_size > b.comp_size;
      if (a.comp_id != b.comp_id) return a.comp_id < b.comp_id;
      if (a.degree != b.degree) return a.degree > b.degree;
      return a.node < b.node;
    });
    for (const SpokeKey& s : spokes) {
      position[s.node] = back--;
      alive[s.node] = false;
    }
    working = std::move(next_working);
  }

  return SlashBurnResult{Ordering(std::move(position)), iterations};
}

}  // namespace gcb
