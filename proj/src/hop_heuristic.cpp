#include "ebm/hop_heuristic.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace ebm {

void HopConfig::validate() const {
  if (hops < 1) throw std::invalid_argument("hop count must be at least 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
}

namespace {

using SparseProbs = std::vector<std::pair<NodeId, double>>;

// Depth-bounded in-tree recursion for one target at a time. Reusable across
// targets; dense scratch rows (one per depth) are cleared through their
// touched lists.
class InTreeSolver {
 public:
  InTreeSolver(const SocialGraph& graph, unsigned hops)
      : graph_(graph),
        hops_(hops),
        acc_(hops + 1, std::vector<double>(graph.node_count(), 0.0)),
        touched_(hops + 1) {}

  // (s, P(s -> target)) for all sources, ascending, target excluded.
  SparseProbs solve_target(NodeId target) {
    target_ = target;
    memo_.clear();
    SparseProbs all = solve(target, hops_);
    std::erase_if(all, [target](const auto& e) { return e.first == target; });
    return all;
  }

 private:
  // P_depth(s -> x) for every s with a positive value; includes (x, 1).
  SparseProbs solve(NodeId x, unsigned depth) {
    if (depth == 0) return {{x, 1.0}};
    const std::uint64_t key = static_cast<std::uint64_t>(x) * (hops_ + 1) + depth;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<double>& acc = acc_[depth];
    std::vector<NodeId>& touched = touched_[depth];
    const auto in_nodes = graph_.in_nodes(x);
    const auto in_probs = graph_.in_probs(x);
    for (std::size_t i = 0; i < in_nodes.size(); ++i) {
      const NodeId w = in_nodes[i];
      if (w == target_) continue;
      const SparseProbs sub = solve(w, depth - 1);
      for (const auto& [s, p_sw] : sub) {
        if (s == x) continue;
        const double term = p_sw * in_probs[i];
        if (term <= 0.0) continue;
        double& a = acc[s];
        if (a == 0.0) touched.push_back(s);
        // Union of independent events; one term stays bit-exact.
        a = a + term * (1.0 - a);
      }
    }
    SparseProbs out;
    out.reserve(touched.size() + 1);
    out.emplace_back(x, 1.0);
    for (NodeId s : touched) {
      out.emplace_back(s, acc[s]);
      acc[s] = 0.0;
    }
    touched.clear();
    std::sort(out.begin(), out.end());
    memo_.emplace(key, out);
    return out;
  }

  const SocialGraph& graph_;
  unsigned hops_;
  NodeId target_ = 0;
  std::vector<std::vector<double>> acc_;
  std::vector<std::vector<NodeId>> touched_;
  std::unordered_map<std::uint64_t, SparseProbs> memo_;
};

void check_node(const SocialGraph& graph, NodeId u) {
  if (u >= graph.node_count()) throw std::out_of_range("node " + std::to_string(u));
}

}  // namespace

std::vector<HopNeighbor> h_hop_in_neighborhood(const SocialGraph& graph, NodeId target,
                                               unsigned hops) {
  check_node(graph, target);
  std::unordered_map<NodeId, unsigned> dist{{target, 0}};
  std::vector<HopNeighbor> out;
  std::vector<NodeId> frontier{target};
  for (unsigned d = 1; d <= hops && !frontier.empty(); ++d) {
    std::vector<NodeId> next;
    for (NodeId x : frontier)
      for (NodeId w : graph.in_nodes(x))
        if (dist.emplace(w, d).second) next.push_back(w);
    std::sort(next.begin(), next.end());
    for (NodeId w : next) out.push_back({w, d});
    frontier = std::move(next);
  }
  return out;
}

std::vector<std::pair<NodeId, double>> influence_probabilities_to(const SocialGraph& graph,
                                                                  NodeId target, unsigned hops) {
  check_node(graph, target);
  if (hops < 1) throw std::invalid_argument("hop count must be at least 1");
  InTreeSolver solver(graph, hops);
  return solver.solve_target(target);
}

double influence_probability(const SocialGraph& graph, NodeId source, NodeId target,
                             unsigned hops) {
  check_node(graph, source);
  if (source == target) return 0.0;
  const auto probs = influence_probabilities_to(graph, target, hops);
  const auto it = std::lower_bound(probs.begin(), probs.end(),
                                   std::pair<NodeId, double>{source, -1.0});
  return it != probs.end() && it->first == source ? it->second : 0.0;
}

ScoreTable compute_scores(const SocialGraph& graph, const NodeEconomics& econ,
                          const HopConfig& config) {
  config.validate();
  econ.validate(graph.node_count());
  const NodeId n = graph.node_count();
  ScoreTable table{econ.benefit, std::vector<double>(n, 0.0)};

  const std::vector<NodeId>& targets = econ.targets;
  const int threads = std::max(1, config.threads);
  std::vector<InTreeSolver> solvers;
  solvers.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) solvers.emplace_back(graph, config.hops);

  // Blocks bound the memory of buffered per-target contributions.
  constexpr std::size_t kBlock = 4096;
  std::vector<SparseProbs> effective(std::min(kBlock, targets.size()));
  for (std::size_t begin = 0; begin < targets.size(); begin += kBlock) {
    const std::size_t count = std::min(kBlock, targets.size() - begin);
    auto work = [&](std::size_t i, int tid) {
      SparseProbs probs = solvers[static_cast<std::size_t>(tid)].solve_target(targets[begin + i]);
      std::erase_if(probs, [&](const auto& e) { return e.second < config.alpha; });
      effective[i] = std::move(probs);
    };
    if (threads == 1) {
      for (std::size_t i = 0; i < count; ++i) work(i, 0);
    } else {
      const auto signed_count = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
      for (std::int64_t i = 0; i < signed_count; ++i)
        work(static_cast<std::size_t>(i), omp_get_thread_num());
    }
    for (std::size_t i = 0; i < count; ++i) {
      const double b = econ.benefit[targets[begin + i]];
      for (const auto& [w, p] : effective[i]) table.earned_benefit[w] += p * b;
    }
  }
  for (NodeId u = 0; u < n; ++u) table.score[u] = table.earned_benefit[u] / econ.cost[u];
  return table;
}

SelectionResult hop_based_select(const ScoreTable& scores, const NodeEconomics& econ,
                                 double budget, bool skip_zero,
                                 const BenefitEstimator* reporter) {
  if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
  const auto n = static_cast<NodeId>(scores.score.size());
  if (econ.cost.size() != n) throw std::invalid_argument("score table does not match economics");
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return scores.score[a] > scores.score[b]; });

  SelectionResult result;
  for (NodeId u : order) {
    if (result.spent >= budget) break;
    if (skip_zero && scores.score[u] <= 0.0) break;
    if (result.spent + econ.cost[u] > budget) continue;
    result.seeds.push_back(u);
    result.spent += econ.cost[u];
    result.trace.push_back({u, scores.score[u], budget - result.spent, 0});
  }
  result.estimated_benefit = reporter ? reporter->estimate(result.seeds)
                                      : std::numeric_limits<double>::quiet_NaN();
  return result;
}

SelectionResult hop_based_select(const SocialGraph& graph, const NodeEconomics& econ,
                                 const HopConfig& config, double budget,
                                 const BenefitEstimator* reporter) {
  if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
  return hop_based_select(compute_scores(graph, econ, config), econ, budget, config.skip_zero,
                          reporter);
}

}  // namespace ebm
