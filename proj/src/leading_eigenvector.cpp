#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcb/detect.hpp"
#include "gcb/log.hpp"
#include "gcb/rng.hpp"

namespace gcb {

namespace {

// One subdivision attempt on the node group `members`. Uses the generalized
// modularity matrix
//   B_ij = A_ij - k_i k_j / 2m - delta_ij (k_i^in - k_i K_g / 2m)
// applied matrix-free. Returns false when the group is indivisible (or the
// eigensolver failed to converge).
struct SplitOutcome {
  bool split = false;
  std::vector<NodeId> side_a, side_b;
};

SplitOutcome try_split(const Graph& g, const std::vector<NodeId>& members,
                       double tolerance, std::uint64_t max_iter, Rng& rng) {
  SplitOutcome outcome;
  const std::size_t size = members.size();
  if (size < 2) return outcome;

  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  std::vector<NodeId> local_id(g.num_nodes(), kInvalidNode);
  for (std::size_t i = 0; i < size; ++i) local_id[members[i]] = static_cast<NodeId>(i);

  std::vector<double> degree(size);
  std::vector<double> internal_degree(size, 0.0);
  std::vector<double> neighbor_degree_sum(size, 0.0);
  double group_degree = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    NodeId u = members[i];
    degree[i] = static_cast<double>(g.degree(u));
    group_degree += degree[i];
  }
  for (std::size_t i = 0; i < size; ++i) {
    NodeId u = members[i];
    for (NodeId v : g.neighbors(u)) {
      if (local_id[v] != kInvalidNode) {
        internal_degree[i] += 1.0;
        neighbor_degree_sum[i] += static_cast<double>(g.degree(v));
      }
    }
  }
  std::vector<double> diag(size);
  for (std::size_t i = 0; i < size; ++i) {
    diag[i] = -degree[i] * degree[i] / two_m -
              (internal_degree[i] - degree[i] * group_degree / two_m);
  }

  // Gershgorin shift: with sigma at least -min_i (B_ii - R_i) every
  // eigenvalue of B + sigma I is nonnegative, so power iteration locks onto
  // the algebraically largest eigenvalue of B. The exact row radius
  //   R_i = sum_{j~i} |1 - k_i k_j / 2m| + (k_i/2m) (K_g - k_i - S_i)
  // with S_i the degree sum over in-group neighbors keeps the shift tight,
  // which is what governs the convergence rate.
  double shift = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    NodeId u = members[i];
    double adjacent = 0.0;
    for (NodeId v : g.neighbors(u)) {
      if (local_id[v] != kInvalidNode) {
        adjacent += std::abs(1.0 - degree[i] * static_cast<double>(g.degree(v)) / two_m);
      }
    }
    double distant =
        degree[i] * (group_degree - degree[i] - neighbor_degree_sum[i]) / two_m;
    shift = std::max(shift, adjacent + std::max(0.0, distant) - diag[i]);
  }

  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    double weighted = 0.0;
    for (std::size_t i = 0; i < size; ++i) weighted += degree[i] * x[i];
    for (std::size_t i = 0; i < size; ++i) {
      double acc = (diag[i] + shift) * x[i] - degree[i] * weighted / two_m;
      NodeId u = members[i];
      for (NodeId v : g.neighbors(u)) {
        NodeId j = local_id[v];
        if (j != kInvalidNode) acc += x[j];
      }
      y[i] = acc;
    }
  };

  std::vector<double> x(size), next(size);
  for (double& xi : x) xi = rng.next_double() - 0.5;
  {
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& xi : x) xi /= norm;
  }

  // Converged when the Rayleigh quotient has stabilized to the tolerance
  // and the sign pattern (all the bisection consumes) stopped moving.
  bool converged = false;
  double prev_lambda = 0.0;
  for (std::uint64_t iter = 0; iter < max_iter; ++iter) {
    apply(x, next);
    double lambda = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      lambda += x[i] * next[i];
      norm += next[i] * next[i];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      // x is in the kernel of the shifted matrix; restart deterministically.
      for (double& xi : next) xi = rng.next_double() - 0.5;
      norm = 0.0;
      for (double v : next) norm += v * v;
      norm = std::sqrt(norm);
      prev_lambda = 0.0;
    }
    bool signs_stable = true;
    double max_step = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      double scaled = next[i] / norm;
      signs_stable = signs_stable && (scaled >= 0.0) == (x[i] >= 0.0);
      max_step = std::max(max_step, std::abs(scaled - x[i]));
      x[i] = scaled;
    }
    bool lambda_stable =
        iter > 0 &&
        std::abs(lambda - prev_lambda) <= tolerance * std::max(1.0, std::abs(lambda));
    prev_lambda = lambda;
    if (max_step <= tolerance || (signs_stable && lambda_stable)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    log::warn("leading_eigenvector: power iteration did not converge on a group of " +
              std::to_string(size) + " nodes; leaving it whole");
    return outcome;
  }

  std::vector<double> sign(size);
  for (std::size_t i = 0; i < size; ++i) sign[i] = x[i] >= 0.0 ? 1.0 : -1.0;

  // Modularity contribution of the sign split: (1/4m) s^T B s.
  double weighted = 0.0;
  double contribution = 0.0;
  for (std::size_t i = 0; i < size; ++i) weighted += degree[i] * sign[i];
  for (std::size_t i = 0; i < size; ++i) {
    double acc = diag[i] * sign[i] - degree[i] * weighted / two_m;
    NodeId u = members[i];
    for (NodeId v : g.neighbors(u)) {
      NodeId j = local_id[v];
      if (j != kInvalidNode) acc += sign[j];
    }
    contribution += sign[i] * acc;
  }
  contribution /= 2.0 * two_m;
  if (contribution <= 1e-12) return outcome;

  for (std::size_t i = 0; i < size; ++i) {
    (sign[i] > 0.0 ? outcome.side_a : outcome.side_b).push_back(members[i]);
  }
  if (outcome.side_a.empty() || outcome.side_b.empty()) return outcome;
  outcome.split = true;
  return outcome;
}

}  // namespace

DetectResult leading_eigenvector(const Graph& g, const DetectParams& params) {
  const NodeId n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("leading_eigenvector: empty graph");

  DetectResult result;
  result.objective_name = "modularity";
  if (g.num_edges() == 0) {
    result.partition = Partition::singletons(n);
    result.objective = 0.0;
    return result;
  }

  Rng rng(params.seed);

  std::vector<NodeId> label(n, 0);
  std::vector<std::vector<NodeId>> pending;
  {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    pending.push_back(std::move(all));
  }
  NodeId next_label = 1;
  while (!pending.empty()) {
    std::vector<NodeId> group = std::move(pending.back());
    pending.pop_back();
    // Iteration budget scales with the subgraph the matrix is built on.
    const std::uint64_t max_iter = std::max<std::uint64_t>(10 * group.size(), 500);
    SplitOutcome outcome = try_split(g, group, params.tolerance, max_iter, rng);
    if (!outcome.split) continue;
    for (NodeId v : outcome.side_b) label[v] = next_label;
    ++next_label;
    pending.push_back(std::move(outcome.side_a));
    pending.push_back(std::move(outcome.side_b));
  }

  result.partition = Partition(std::move(label));
  result.objective = modularity(g, result.partition);
  return result;
}

}  // namespace gcb
