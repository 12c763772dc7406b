#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ebm/graph.hpp"
#include "ebm/rng.hpp"

namespace ebm::test {

inline std::string fixture(const std::string& name) { return std::string(EBM_TEST_DATA) + "/" + name; }

inline SocialGraph parse_graph(const std::string& text, bool directed) {
  std::istringstream in(text);
  return load_edge_list(in, directed);
}

// Graph on nodes 0..n-1 from (src, dst, prob) triples; keeps ids as given.
inline SocialGraph make_graph(NodeId n, std::vector<Edge> edges, bool directed = true) {
  return SocialGraph(n, std::move(edges), directed);
}

inline NodeEconomics economics(std::vector<double> cost, std::vector<double> benefit) {
  return NodeEconomics::from_vectors(std::move(cost), std::move(benefit));
}

inline NodeEconomics unit_costs(NodeId n, std::vector<double> benefit) {
  return economics(std::vector<double>(n, 1.0), std::move(benefit));
}

// Directed graph with `m` distinct random arcs and probabilities in (0, 1].
inline SocialGraph random_graph(std::mt19937_64& rng, NodeId n, std::size_t m) {
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<Edge> edges;
  const std::size_t max_arcs = static_cast<std::size_t>(n) * (n - 1);
  while (edges.size() < m && edges.size() < max_arcs) {
    const auto a = static_cast<NodeId>(uniform_index(rng, n));
    const auto b = static_cast<NodeId>(uniform_index(rng, n));
    if (a == b || !used.emplace(a, b).second) continue;
    edges.push_back({a, b, 1.0 - uniform01(rng)});
  }
  return SocialGraph(n, std::move(edges), true);
}

// Random costs in [1, 10); each node is a target with probability 1/2.
inline NodeEconomics random_economics(std::mt19937_64& rng, NodeId n) {
  std::vector<double> cost(n), benefit(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    cost[u] = uniform_real(rng, 1.0, 10.0);
    if (uniform01(rng) < 0.5) benefit[u] = uniform_real(rng, 1.0, 10.0);
  }
  return economics(std::move(cost), std::move(benefit));
}

inline std::vector<NodeId> random_subset(std::mt19937_64& rng, NodeId n, double keep) {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < n; ++u)
    if (uniform01(rng) < keep) out.push_back(u);
  return out;
}

// Reference reachability oracle written against the raw arc list, not the
// library: enumerates every live subset of `arcs` and sums the probability
// of those in which `to` is reachable from `from` using at most `max_hops`
// live arcs.
inline double reach_probability(NodeId n, const std::vector<Edge>& arcs, NodeId from, NodeId to,
                                unsigned max_hops = ~0U) {
  const std::size_t m = arcs.size();
  double total = 0.0;
  for (std::uint64_t live = 0; live < (std::uint64_t{1} << m); ++live) {
    double pr = 1.0;
    for (std::size_t a = 0; a < m; ++a) pr *= ((live >> a) & 1U) ? arcs[a].prob : 1.0 - arcs[a].prob;
    std::vector<unsigned> dist(n, ~0U);
    dist[from] = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t a = 0; a < m; ++a) {
        if (!((live >> a) & 1U) || dist[arcs[a].src] == ~0U) continue;
        const unsigned d = dist[arcs[a].src] + 1;
        if (d < dist[arcs[a].dst]) {
          dist[arcs[a].dst] = d;
          changed = true;
        }
      }
    }
    if (dist[to] <= max_hops) total += pr;
  }
  return total;
}

// Reference earned benefit: enumerates live subsets of `arcs` (directed).
inline double expected_benefit(NodeId n, const std::vector<Edge>& arcs,
                               const std::vector<double>& benefit,
                               const std::vector<NodeId>& seeds) {
  const std::size_t m = arcs.size();
  double total = 0.0;
  for (std::uint64_t live = 0; live < (std::uint64_t{1} << m); ++live) {
    double pr = 1.0;
    for (std::size_t a = 0; a < m; ++a) pr *= ((live >> a) & 1U) ? arcs[a].prob : 1.0 - arcs[a].prob;
    std::vector<bool> on(n, false);
    for (NodeId s : seeds) on[s] = true;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t a = 0; a < m; ++a)
        if (((live >> a) & 1U) && on[arcs[a].src] && !on[arcs[a].dst]) {
          on[arcs[a].dst] = true;
          changed = true;
        }
    }
    double b = 0.0;
    for (NodeId u = 0; u < n; ++u)
      if (on[u]) b += benefit[u];
    total += pr * b;
  }
  return total;
}

// Fixture from the greedy counterexample: node 0 is a cheap isolated target
// (cost 1 - eps, benefit 1); nodes 1..p form a complete digraph with
// certain arcs, cost p and benefit 1 each. Budget is p.
struct RatioTrap {
  SocialGraph graph;
  NodeEconomics econ;
  double budget;
};

inline RatioTrap ratio_trap(NodeId p = 4, double eps = 0.5) {
  std::vector<Edge> edges;
  for (NodeId a = 1; a <= p; ++a)
    for (NodeId b = 1; b <= p; ++b)
      if (a != b) edges.push_back({a, b, 1.0});
  std::vector<double> cost(p + 1, static_cast<double>(p)), benefit(p + 1, 1.0);
  cost[0] = 1.0 - eps;
  return {SocialGraph(p + 1, std::move(edges), true), economics(cost, benefit),
          static_cast<double>(p)};
}

}  // namespace ebm::test
