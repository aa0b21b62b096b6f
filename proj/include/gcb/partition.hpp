#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gcb/graph.hpp"

namespace gcb {

/// Node-to-community labeling with contiguous community ids. The numbering
/// is canonical: communities are numbered by their smallest member id, so
/// two labelings with the same blocks compare equal.
class Partition {
public:
  Partition() = default;

  // Accepts arbitrary labels and canonicalizes them.
  explicit Partition(std::vector<NodeId> label_of);

  static Partition singletons(NodeId n);
  static Partition one_community(NodeId n);

  NodeId num_nodes() const { return static_cast<NodeId>(label_of_.size()); }
  NodeId num_communities() const { return num_communities_; }
  NodeId label_of(NodeId v) const { return label_of_[v]; }
  const std::vector<NodeId>& labels() const { return label_of_; }

  std::vector<std::uint64_t> community_sizes() const;
  std::vector<std::vector<NodeId>> members() const;

  bool operator==(const Partition& other) const {
    return label_of_ == other.label_of_;
  }

private:
  std::vector<NodeId> label_of_;
  NodeId num_communities_ = 0;
};

// Newman modularity Q = sum_c (m_c / m - (K_c / 2m)^2) with m_c the
// intra-community edge count and K_c the community degree sum.
// Zero-edge graphs have no null model; they score 0.
double modularity(const Graph& g, const Partition& p);

// Two-level map equation codelength in bits, with node visit rates
// deg(v)/2m (the stationary distribution of an undirected walk).
double map_equation_codelength(const Graph& g, const Partition& p);

// Text form: one "node_id community_id" line per node.
void save_partition(const Partition& p, std::ostream& out);
void save_partition_file(const Partition& p, const std::string& path,
                         const std::string& method, std::uint64_t seed,
                         double objective, double runtime_ms);
Partition load_partition(std::istream& in);
Partition load_partition_file(const std::string& path);

}  // namespace gcb
