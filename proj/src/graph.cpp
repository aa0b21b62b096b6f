#include "gcb/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "gcb/ordering.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gcb {

void Graph::check_node(NodeId v) const {
  if (v >= num_nodes_) {
    throw std::out_of_range("node id " + std::to_string(v) +
                            " out of range [0, " + std::to_string(num_nodes_) +
                            ")");
  }
}

void Graph::check_invariants() const {
  if (offsets_.size() != static_cast<std::size_t>(num_nodes_) + 1 ||
      offsets_[0] != 0 || offsets_[num_nodes_] != adjacency_.size()) {
    throw std::logic_error("graph: broken CSR offsets");
  }
  if (adjacency_.size() != 2 * num_edges_) {
    throw std::logic_error("graph: endpoint count != 2m");
  }
  for (NodeId u = 0; u < num_nodes_; ++u) {
    auto row = neighbors(u);
    for (std::size_t i = 0; i < row.size(); ++i) {
      NodeId v = row[i];
      if (v >= num_nodes_) throw std::logic_error("graph: neighbor out of range");
      if (v == u) throw std::logic_error("graph: self-loop");
      if (i > 0 && row[i] <= row[i - 1]) {
        throw std::logic_error("graph: row not strictly increasing");
      }
      auto back = neighbors(v);
      if (!std::binary_search(back.begin(), back.end(), u)) {
        throw std::logic_error("graph: asymmetric edge");
      }
    }
  }
}

Graph Graph::from_edges(NodeId num_nodes,
                        std::vector<std::pair<NodeId, NodeId>> edges,
                        std::uint64_t* duplicates_dropped,
                        std::uint64_t* self_loops_dropped) {
  std::uint64_t loops = 0;
  std::size_t kept = 0;
  for (auto& [u, v] : edges) {
    if (u >= num_nodes || v >= num_nodes) {
      throw std::out_of_range("edge endpoint out of range");
    }
    if (u == v) {
      ++loops;
      continue;
    }
    edges[kept++] = {std::min(u, v), std::max(u, v)};
  }
  edges.resize(kept);
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  std::uint64_t dups = static_cast<std::uint64_t>(edges.end() - last);
  edges.erase(last, edges.end());

  if (duplicates_dropped != nullptr) *duplicates_dropped = dups;
  if (self_loops_dropped != nullptr) *self_loops_dropped = loops;

  Graph g;
  g.num_nodes_ = num_nodes;
  g.num_edges_ = edges.size();
  g.offsets_.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (NodeId i = 0; i < num_nodes; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.adjacency_.resize(2 * g.num_edges_);
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adjacency_[cursor[u]++] = v;
    g.adjacency_[cursor[v]++] = u;
  }
  // Edges were processed in (u, v)-sorted order, so every row containing
  // only larger neighbors is already sorted; rows mixing smaller ones are
  // not. Sort each row to be safe.
  for (NodeId u = 0; u < num_nodes; ++u) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]));
  }
  g.check_invariants();
  return g;
}

std::vector<NodeId> Graph::degree_sequence() const {
  std::vector<NodeId> degs(num_nodes_);
  for (NodeId v = 0; v < num_nodes_; ++v) {
    degs[v] = static_cast<NodeId>(offsets_[v + 1] - offsets_[v]);
  }
  return degs;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto row = neighbors(u);
  check_node(v);
  return std::binary_search(row.begin(), row.end(), v);
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (labels.size() != num_nodes_) {
    throw std::invalid_argument("label count != node count");
  }
  labels_ = std::move(labels);
}

namespace {

// Splits a line into whitespace-separated tokens.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

EdgeListResult load_edge_list(std::istream& in) {
  std::unordered_map<std::string, NodeId> id_of;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;

  auto intern = [&](std::string_view token) {
    auto it = id_of.find(std::string(token));
    if (it != id_of.end()) return it->second;
    NodeId id = static_cast<NodeId>(labels.size());
    labels.emplace_back(token);
    id_of.emplace(labels.back(), id);
    return id;
  };

  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0][0] == '#' || tokens[0][0] == '%') continue;
    if (tokens.size() != 2) {
      throw std::runtime_error("edge list parse error at line " +
                               std::to_string(line_no) + ": expected 2 tokens, got " +
                               std::to_string(tokens.size()));
    }
    NodeId u = intern(tokens[0]);
    NodeId v = intern(tokens[1]);
    edges.emplace_back(u, v);
  }
  if (edges.empty()) {
    throw std::runtime_error("edge list: no edges");
  }

  EdgeListResult result;
  result.graph = Graph::from_edges(static_cast<NodeId>(labels.size()),
                                   std::move(edges), &result.duplicates_dropped,
                                   &result.self_loops_dropped);
  result.graph.set_labels(std::move(labels));
  return result;
}

EdgeListResult load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open edge list: " + path);
  }
  return load_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  auto name = [&](NodeId v) {
    return g.has_labels() ? g.label(v) : std::to_string(v);
  };
  // Emission order keeps first appearances aligned with node ids, so a
  // reload reproduces the same dense numbering. Each node is introduced at
  // its own turn, through its smallest neighbor if none smaller exists.
  std::vector<bool> mentioned(g.num_nodes(), false);
  std::vector<NodeId> intro_partner(g.num_nodes(), kInvalidNode);
  for (NodeId w = 0; w < g.num_nodes(); ++w) {
    auto row = g.neighbors(w);
    if (!mentioned[w] && !row.empty()) {
      NodeId j = row.front();
      out << name(w) << ' ' << name(j) << '\n';
      mentioned[w] = true;
      mentioned[j] = true;
      intro_partner[w] = j;
    }
    for (NodeId a : row) {
      if (a >= w) break;
      if (intro_partner[w] == a || intro_partner[a] == w) continue;
      out << name(a) << ' ' << name(w) << '\n';
      mentioned[w] = true;
    }
  }
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write edge list: " + path);
  }
  write_edge_list(g, out);
  if (!out.good()) {
    throw std::runtime_error("write failed: " + path);
  }
}

ComponentLabeling connected_components(const Graph& g) {
  ComponentLabeling labeling;
  labeling.component_of.assign(g.num_nodes(), kInvalidNode);
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (labeling.component_of[s] != kInvalidNode) continue;
    NodeId comp = static_cast<NodeId>(labeling.component_sizes.size());
    std::uint64_t size = 0;
    queue.clear();
    queue.push_back(s);
    labeling.component_of[s] = comp;
    while (!queue.empty()) {
      NodeId u = queue.back();
      queue.pop_back();
      ++size;
      for (NodeId v : g.neighbors(u)) {
        if (labeling.component_of[v] == kInvalidNode) {
          labeling.component_of[v] = comp;
          queue.push_back(v);
        }
      }
    }
    labeling.component_sizes.push_back(size);
  }
  NodeId giant = 0;
  for (NodeId c = 1; c < labeling.num_components(); ++c) {
    if (labeling.component_sizes[c] > labeling.component_sizes[giant]) giant = c;
  }
  labeling.giant_component_id = giant;
  return labeling;
}

RemovalResult remove_nodes(const Graph& g, const std::vector<NodeId>& node_set) {
  std::vector<bool> removed(g.num_nodes(), false);
  for (NodeId v : node_set) {
    if (v >= g.num_nodes()) {
      throw std::out_of_range("remove_nodes: node id out of range");
    }
    removed[v] = true;
  }
  RemovalResult result;
  result.survivor_map.assign(g.num_nodes(), kInvalidNode);
  NodeId next = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (!removed[v]) result.survivor_map[v] = next++;
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (removed[u]) continue;
    for (NodeId v : g.neighbors(u)) {
      if (v > u && !removed[v]) {
        edges.emplace_back(result.survivor_map[u], result.survivor_map[v]);
      }
    }
  }
  result.graph = Graph::from_edges(next, std::move(edges));
  return result;
}

Graph permute_graph(const Graph& g, const Ordering& ordering) {
  if (ordering.size() != g.num_nodes()) {
    throw std::invalid_argument("permute_graph: ordering size mismatch");
  }
  std::vector<std::pair<NodeId, NodeId>> edges(g.num_edges());
  std::size_t idx = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    NodeId pu = ordering.position_of(u);
    for (NodeId v : g.neighbors(u)) {
      if (v > u) edges[idx++] = {pu, ordering.position_of(v)};
    }
  }
  return Graph::from_edges(g.num_nodes(), std::move(edges));
}

}  // namespace gcb
