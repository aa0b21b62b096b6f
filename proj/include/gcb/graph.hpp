#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gcb {

using NodeId = std::uint32_t;

class Ordering;

/// Immutable undirected simple graph in compressed sparse row form.
/// Node ids are dense in [0, n); each neighbor list is strictly increasing;
/// the structure is symmetric and free of self-loops and multi-edges.
/// These invariants are checked whenever a Graph is built.
class Graph {
public:
  Graph() = default;

  // Builds from an undirected edge list. Self-loops are dropped and
  // duplicate edges (in either direction) are collapsed; the counts of
  // dropped entries are written to the optional out-parameters.
  static Graph from_edges(NodeId num_nodes,
                          std::vector<std::pair<NodeId, NodeId>> edges,
                          std::uint64_t* duplicates_dropped = nullptr,
                          std::uint64_t* self_loops_dropped = nullptr);

  NodeId num_nodes() const { return num_nodes_; }
  std::uint64_t num_edges() const { return num_edges_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    check_node(v);
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }

  NodeId degree(NodeId v) const {
    check_node(v);
    return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]);
  }

  std::vector<NodeId> degree_sequence() const;

  bool has_edge(NodeId u, NodeId v) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(NodeId v) const {
    check_node(v);
    return labels_[v];
  }
  void set_labels(std::vector<std::string> labels);

  bool operator==(const Graph& other) const {
    return num_nodes_ == other.num_nodes_ && offsets_ == other.offsets_ &&
           adjacency_ == other.adjacency_;
  }

private:
  void check_node(NodeId v) const;
  void check_invariants() const;

  NodeId num_nodes_ = 0;
  std::uint64_t num_edges_ = 0;
  std::vector<std::uint64_t> offsets_;  // size n+1
  std::vector<NodeId> adjacency_;       // size 2m, rows sorted
  std::vector<std::string> labels_;     // optional, dense id -> source label
};

struct EdgeListResult {
  Graph graph;
  std::uint64_t duplicates_dropped = 0;
  std::uint64_t self_loops_dropped = 0;
};

// Parses whitespace-separated node pairs, one edge per line. Lines starting
// with '#' or '%' are comments. Tokens may be arbitrary strings; they are
// remapped to dense ids in first-appearance order and kept as labels.
// Throws std::runtime_error on a malformed line (with its line number) or
// when the stream contains no edges.
EdgeListResult load_edge_list(std::istream& in);
EdgeListResult load_edge_list_file(const std::string& path);

// Writes one "u v" line per edge with u's row scanned in id order, using
// original labels when present. Reloading the output reproduces the graph.
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

/// Connected components with deterministic numbering: components are
/// numbered by their smallest contained node id.
struct ComponentLabeling {
  std::vector<NodeId> component_of;       // node id -> component id
  std::vector<std::uint64_t> component_sizes;  // indexed by component id
  NodeId giant_component_id = 0;          // max size, ties to lowest id

  NodeId num_components() const {
    return static_cast<NodeId>(component_sizes.size());
  }
};

ComponentLabeling connected_components(const Graph& g);

struct RemovalResult {
  Graph graph;
  // old id -> new id for survivors; removed nodes map to kInvalidNode.
  std::vector<NodeId> survivor_map;
};

inline constexpr NodeId kInvalidNode = static_cast<NodeId>(-1);

// Induced subgraph on the nodes not in `node_set`, with dense re-ids.
RemovalResult remove_nodes(const Graph& g, const std::vector<NodeId>& node_set);

// Relabels nodes: edge (u, v) becomes (position_of(u), position_of(v)).
Graph permute_graph(const Graph& g, const Ordering& ordering);

}  // namespace gcb
