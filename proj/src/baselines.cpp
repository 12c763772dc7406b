#include "ebm/baselines.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ebm {

namespace {

void check_inputs(const SocialGraph& graph, const NodeEconomics& econ, double budget) {
  if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
  if (econ.cost.size() != graph.node_count())
    throw std::invalid_argument("economics do not match the graph");
}

void take(SelectionResult& result, const NodeEconomics& econ, double budget, NodeId u,
          double score) {
  result.seeds.push_back(u);
  result.spent += econ.cost[u];
  result.trace.push_back({u, score, budget - result.spent, 0});
}

// Repeatedly takes the affordable node with the highest effective degree.
// `on_pick(u, eff)` lowers eff for u's neighbours; values never increase,
// so a max-heap with stale-entry skipping is exact.
SelectionResult discount_select(
    const SocialGraph& graph, const NodeEconomics& econ, double budget,
    const std::function<void(NodeId, std::vector<double>&, const std::vector<bool>&)>& on_pick) {
  check_inputs(graph, econ, budget);
  const NodeId n = graph.node_count();
  std::vector<double> eff(n);
  for (NodeId u = 0; u < n; ++u) eff[u] = static_cast<double>(graph.degree(u));

  struct Entry {
    double value;
    NodeId node;
  };
  auto lower_priority = [](const Entry& a, const Entry& b) {
    return a.value < b.value || (a.value == b.value && a.node > b.node);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);
  for (NodeId u = 0; u < n; ++u) heap.push({eff[u], u});

  std::vector<bool> seeded(n, false);
  std::vector<double> before;
  SelectionResult result;
  while (!heap.empty() && result.spent < budget) {
    const Entry top = heap.top();
    heap.pop();
    if (seeded[top.node] || top.value != eff[top.node]) continue;
    if (result.spent + econ.cost[top.node] > budget) continue;
    seeded[top.node] = true;
    take(result, econ, budget, top.node, top.value);
    const auto neighbors = graph.out_arcs(top.node).nodes;
    before.clear();
    for (const NodeId v : neighbors) before.push_back(eff[v]);
    on_pick(top.node, eff, seeded);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      const NodeId v = neighbors[i];
      if (!seeded[v] && eff[v] != before[i]) heap.push({eff[v], v});
    }
  }
  result.estimated_benefit = std::numeric_limits<double>::quiet_NaN();
  return result;
}

}  // namespace

SelectionResult max_degree_select(const SocialGraph& graph, const NodeEconomics& econ,
                                  double budget) {
  check_inputs(graph, econ, budget);
  const NodeId n = graph.node_count();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return graph.degree(a) > graph.degree(b); });
  SelectionResult result;
  for (NodeId u : order) {
    if (result.spent >= budget) break;
    if (result.spent + econ.cost[u] > budget) continue;
    take(result, econ, budget, u, static_cast<double>(graph.degree(u)));
  }
  result.estimated_benefit = std::numeric_limits<double>::quiet_NaN();
  return result;
}

SelectionResult degree_discount_select(const SocialGraph& graph, const NodeEconomics& econ,
                                       double budget, std::optional<double> p) {
  std::vector<std::size_t> seeded_neighbors(graph.node_count(), 0);
  return discount_select(
      graph, econ, budget,
      [&](NodeId u, std::vector<double>& eff, const std::vector<bool>& seeded) {
        const ArcRange arcs = graph.out_arcs(u);
        for (std::size_t i = 0; i < arcs.nodes.size(); ++i) {
          const NodeId v = arcs.nodes[i];
          if (seeded[v]) continue;
          const double t = static_cast<double>(++seeded_neighbors[v]);
          const double d = static_cast<double>(graph.degree(v));
          // Recomputed from the original degree; the min keeps it
          // non-increasing when per-arc probabilities differ.
          eff[v] = std::min(eff[v], discounted_degree(d, t, p.value_or(arcs.probs[i])));
        }
      });
}

SelectionResult single_discount_select(const SocialGraph& graph, const NodeEconomics& econ,
                                       double budget) {
  return discount_select(graph, econ, budget,
                         [&](NodeId u, std::vector<double>& eff, const std::vector<bool>& seeded) {
                           for (const NodeId v : graph.out_arcs(u).nodes)
                             if (!seeded[v]) eff[v] -= 1.0;
                         });
}

}  // namespace ebm
