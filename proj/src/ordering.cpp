#include "gcb/ordering.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "gcb/partition.hpp"
#include "gcb/rng.hpp"
#include "json.hpp"

namespace gcb {

Ordering::Ordering(std::vector<NodeId> position_of)
    : position_of_(std::move(position_of)) {
  std::vector<bool> seen(position_of_.size(), false);
  for (NodeId p : position_of_) {
    if (p >= position_of_.size() || seen[p]) {
      throw std::invalid_argument("ordering is not a bijection");
    }
    seen[p] = true;
  }
}

Ordering Ordering::identity(NodeId n) {
  std::vector<NodeId> pos(n);
  std::iota(pos.begin(), pos.end(), NodeId{0});
  return Ordering(std::move(pos));
}

std::vector<NodeId> Ordering::nodes_in_order() const {
  std::vector<NodeId> node_at(position_of_.size());
  for (NodeId v = 0; v < size(); ++v) node_at[position_of_[v]] = v;
  return node_at;
}

Ordering invert(const Ordering& ordering) {
  return Ordering(ordering.nodes_in_order());
}

Ordering compose(const Ordering& outer, const Ordering& inner) {
  if (outer.size() != inner.size()) {
    throw std::invalid_argument("compose: size mismatch");
  }
  std::vector<NodeId> pos(inner.size());
  for (NodeId v = 0; v < inner.size(); ++v) {
    pos[v] = outer.position_of(inner.position_of(v));
  }
  return Ordering(std::move(pos));
}

Ordering naive_community_ordering(const std::vector<NodeId>& degrees,
                                  const Partition& p) {
  if (degrees.size() != p.num_nodes()) {
    throw std::invalid_argument("naive ordering: degree/partition size mismatch");
  }
  const NodeId n = p.num_nodes();
  auto sizes = p.community_sizes();

  // Canonical community ids already increase with the smallest member id,
  // so sorting communities by (size desc, id asc) realizes the tie-break
  // "smaller minimum member id first".
  std::vector<NodeId> comm_rank(p.num_communities());
  {
    std::vector<NodeId> comms(p.num_communities());
    std::iota(comms.begin(), comms.end(), NodeId{0});
    std::sort(comms.begin(), comms.end(), [&](NodeId a, NodeId b) {
      if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
      return a < b;
    });
    for (NodeId r = 0; r < comms.size(); ++r) comm_rank[comms[r]] = r;
  }

  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
    NodeId ra = comm_rank[p.label_of(a)];
    NodeId rb = comm_rank[p.label_of(b)];
    if (ra != rb) return ra < rb;
    if (degrees[a] != degrees[b]) return degrees[a] > degrees[b];
    return a < b;
  });

  std::vector<NodeId> pos(n);
  for (NodeId i = 0; i < n; ++i) pos[nodes[i]] = i;
  return Ordering(std::move(pos));
}

Ordering naive_community_ordering(const Graph& g, const Partition& p) {
  if (g.num_nodes() != p.num_nodes()) {
    throw std::invalid_argument("naive ordering: graph/partition size mismatch");
  }
  return naive_community_ordering(g.degree_sequence(), p);
}

Ordering random_ordering(NodeId n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_ordering: n must be >= 1");
  std::vector<NodeId> pos(n);
  std::iota(pos.begin(), pos.end(), NodeId{0});
  Rng rng(seed);
  rng.shuffle(pos);
  return Ordering(std::move(pos));
}

Ordering identity_ordering(NodeId n) {
  if (n < 1) throw std::invalid_argument("identity_ordering: n must be >= 1");
  return Ordering::identity(n);
}

void save_ordering(const Ordering& o, std::ostream& out) {
  for (NodeId v : o.nodes_in_order()) out << v << '\n';
}

void save_ordering_file(const Ordering& o, const std::string& path,
                        const std::string& strategy,
                        const std::string& params_desc,
                        std::uint32_t iterations) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write ordering: " + path);
  save_ordering(o, out);
  if (!out.good()) throw std::runtime_error("write failed: " + path);

  nlohmann::json sidecar = {
      {"strategy", strategy},
      {"params", params_desc},
      {"iterations", iterations},
      {"num_nodes", o.size()},
  };
  std::ofstream side(path + ".json");
  if (!side) throw std::runtime_error("cannot write sidecar: " + path + ".json");
  side << sidecar.dump(2) << '\n';
}

Ordering load_ordering(std::istream& in) {
  std::vector<NodeId> node_at;
  std::uint64_t v = 0;
  while (in >> v) node_at.push_back(static_cast<NodeId>(v));
  std::vector<NodeId> pos(node_at.size());
  std::vector<bool> seen(node_at.size(), false);
  for (NodeId i = 0; i < node_at.size(); ++i) {
    NodeId node = node_at[i];
    if (node >= node_at.size() || seen[node]) {
      throw std::runtime_error("ordering file is not a permutation");
    }
    seen[node] = true;
    pos[node] = i;
  }
  return Ordering(std::move(pos));
}

Ordering load_ordering_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ordering: " + path);
  return load_ordering(in);
}

}  // namespace gcb
