#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gcb/graph.hpp"

namespace gcb {

class Partition;

/// Bijection from node id to adjacency-matrix position.
class Ordering {
public:
  Ordering() = default;

  // Takes position_of[v] = matrix position of node v. Throws
  // std::invalid_argument unless the map is a bijection on [0, n).
  explicit Ordering(std::vector<NodeId> position_of);

  static Ordering identity(NodeId n);

  NodeId size() const { return static_cast<NodeId>(position_of_.size()); }
  NodeId position_of(NodeId v) const { return position_of_[v]; }
  const std::vector<NodeId>& positions() const { return position_of_; }

  // node_at_position[p] = node placed at matrix position p.
  std::vector<NodeId> nodes_in_order() const;

  bool operator==(const Ordering& other) const {
    return position_of_ == other.position_of_;
  }

private:
  std::vector<NodeId> position_of_;
};

Ordering invert(const Ordering& ordering);
// compose(outer, inner): node v goes to outer.position_of(inner.position_of(v)).
Ordering compose(const Ordering& outer, const Ordering& inner);

// Communities sorted by size descending (ties: smaller minimum member id
// first); within a community nodes sorted by degree descending (ties:
// smaller id first). Positions are assigned sequentially in that order.
Ordering naive_community_ordering(const Graph& g, const Partition& p);
// Same rule driven by an explicit degree vector. This is the sorting kernel
// behind the graph overload.
Ordering naive_community_ordering(const std::vector<NodeId>& degrees,
                                  const Partition& p);

struct SlashBurnParams {
  NodeId k = 1;  // hub-set size per iteration, 1 <= k < n
};

struct SlashBurnResult {
  Ordering ordering;
  std::uint32_t iterations = 0;
};

// Iterative hub-removal ordering. Each iteration removes the k
// highest-degree nodes of the working graph (degree recomputed per
// iteration, ties by lower original id) and assigns them the lowest free
// positions in degree-descending order. Nodes outside the giant component
// of the remainder become spokes and fill the highest free positions from
// the back: spoke components sorted by size descending (ties by smallest
// member id), nodes within a component by degree descending then id. The
// next iteration runs on the giant component; when its size drops below k
// the remaining nodes fill the middle positions by degree descending.
SlashBurnResult slashburn_ordering(const Graph& g, const SlashBurnParams& params);

Ordering random_ordering(NodeId n, std::uint64_t seed);
Ordering identity_ordering(NodeId n);

// Text form: line i holds the node id placed at position i.
void save_ordering(const Ordering& o, std::ostream& out);
void save_ordering_file(const Ordering& o, const std::string& path,
                        const std::string& strategy,
                        const std::string& params_desc,
                        std::uint32_t iterations);
Ordering load_ordering(std::istream& in);
Ordering load_ordering_file(const std::string& path);

}  // namespace gcb
