#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <unordered_set>

#include "ebm/harness.hpp"
#include "ebm/rng.hpp"

namespace ebm {

namespace {

std::vector<std::pair<NodeId, NodeId>> random_graph(NodeId n, double avg_degree,
                                                    std::mt19937_64& rng) {
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const auto wanted = static_cast<std::uint64_t>(std::llround(n * avg_degree / 2.0));
  if (wanted > max_edges && n > 1)
    throw ConfigError("average degree too large for " + std::to_string(n) + " nodes");
  const std::uint64_t m = std::min(wanted, max_edges);

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  while (edges.size() < m) {
    auto a = static_cast<NodeId>(uniform_index(rng, n));
    auto b = static_cast<NodeId>(uniform_index(rng, n));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (seen.insert((static_cast<std::uint64_t>(a) << 32) | b).second) edges.emplace_back(a, b);
  }
  return edges;
}

std::vector<std::pair<NodeId, NodeId>> preferential_graph(NodeId n, NodeId per_node,
                                                          std::mt19937_64& rng) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  // Every endpoint occurrence; sampling from it is degree-proportional.
  std::vector<NodeId> endpoints;
  const NodeId core = std::min<NodeId>(n, per_node + 1);
  for (NodeId a = 0; a < core; ++a)
    for (NodeId b = a + 1; b < core; ++b) {
      edges.emplace_back(a, b);
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  std::vector<NodeId> picked;
  for (NodeId v = core; v < n; ++v) {
    picked.clear();
    while (picked.size() < per_node) {
      const NodeId u = endpoints[uniform_index(rng, endpoints.size())];
      if (std::find(picked.begin(), picked.end(), u) == picked.end()) picked.push_back(u);
    }
    for (NodeId u : picked) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return edges;
}

}  // namespace

std::vector<std::pair<NodeId, NodeId>> generate_synthetic(SyntheticKind kind, NodeId n,
                                                          double param, std::uint64_t seed) {
  if (n < 1) throw ConfigError("synthetic graph needs at least one node");
  if (!(param >= 0.0) || !std::isfinite(param))
    throw ConfigError("synthetic graph parameter must be non-negative");
  std::mt19937_64 rng(seed);
  if (kind == SyntheticKind::kRandom) return random_graph(n, param, rng);
  if (param < 1.0 || param != std::floor(param))
    throw ConfigError("preferential attachment needs a positive integer edges-per-node");
  return preferential_graph(n, static_cast<NodeId>(param), rng);
}

void write_synthetic(std::ostream& out, SyntheticKind kind, NodeId n, double param,
                     std::uint64_t seed) {
  const auto edges = generate_synthetic(kind, n, param, seed);
  out << "# " << (kind == SyntheticKind::kRandom ? "random" : "preferential") << " n=" << n
      << " param=" << param << " seed=" << seed << " edges=" << edges.size() << '\n';
  for (const auto& [a, b] : edges) out << a << ' ' << b << '\n';
}

}  // namespace ebm
