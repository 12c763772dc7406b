#include "ebm/selection.hpp"

#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ebm {

namespace {

void check_budget(double budget) {
  if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
}

void check_sizes(const GainOracle& oracle, const NodeEconomics& econ) {
  if (econ.cost.size() != oracle.node_count())
    throw std::invalid_argument("economics do not match the oracle's node count");
}

void commit(SelectionResult& result, GainOracle& oracle, const NodeEconomics& econ,
            double budget, NodeId u, double gain, std::size_t evaluations) {
  oracle.add(u);
  result.seeds.push_back(u);
  result.spent += econ.cost[u];
  result.trace.push_back({u, gain, budget - result.spent, evaluations});
}

}  // namespace

SelectionResult greedy_ratio_select(GainOracle& oracle, const NodeEconomics& econ, double budget,
                                    GreedyOptions options) {
  check_budget(budget);
  check_sizes(oracle, econ);
  const NodeId n = oracle.node_count();
  oracle.reset();
  SelectionResult result;
  std::vector<bool> chosen(n, false);

  while (result.spent < budget) {
    std::optional<NodeId> best;
    double best_ratio = 0.0, best_gain = 0.0;
    std::size_t evaluations = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (chosen[v] || result.spent + econ.cost[v] > budget) continue;
      const double g = oracle.gain(v);
      ++evaluations;
      const double ratio = g / econ.cost[v];
      if (!best || ratio > best_ratio) {
        best = v;
        best_ratio = ratio;
        best_gain = g;
      }
    }
    result.evaluations += evaluations;
    if (!best) break;
    if (!options.strict && best_ratio <= 0.0) {
      result.stopped_on_zero_gain = true;
      break;
    }
    chosen[*best] = true;
    commit(result, oracle, econ, budget, *best, best_gain, evaluations);
  }
  result.estimated_benefit = oracle.value(result.seeds);
  return result;
}

SelectionResult greedy_ratio_select(const BenefitEstimator& estimator, const NodeEconomics& econ,
                                    double budget, GreedyOptions options) {
  SampledGainOracle oracle(estimator);
  return greedy_ratio_select(oracle, econ, budget, options);
}

SingleNodeChoice best_single_node(const GainOracle& oracle, const NodeEconomics& econ,
                                  double budget) {
  check_sizes(oracle, econ);
  SingleNodeChoice choice;
  for (NodeId v = 0; v < oracle.node_count(); ++v) {
    if (econ.cost[v] > budget) continue;
    const NodeId single[1] = {v};
    const double b = oracle.value(single);
    ++choice.evaluations;
    if (!choice.node || b > choice.benefit) {
      choice.node = v;
      choice.benefit = b;
    }
  }
  return choice;
}

SingleNodeChoice best_single_node(const BenefitEstimator& estimator, const NodeEconomics& econ,
                                  double budget) {
  SampledGainOracle oracle(estimator);
  return best_single_node(oracle, econ, budget);
}

SelectionResult modified_greedy_select(GainOracle& oracle, const NodeEconomics& econ,
                                       double budget, GreedyOptions options) {
  SelectionResult greedy = greedy_ratio_select(oracle, econ, budget, options);
  const SingleNodeChoice single = best_single_node(oracle, econ, budget);
  const std::size_t evaluations = greedy.evaluations + single.evaluations;
  if (single.node && single.benefit > greedy.estimated_benefit) {
    SelectionResult result;
    result.seeds = {*single.node};
    result.spent = econ.cost[*single.node];
    result.estimated_benefit = single.benefit;
    result.trace.push_back({*single.node, single.benefit, budget - result.spent,
                            single.evaluations});
    result.evaluations = evaluations;
    return result;
  }
  greedy.evaluations = evaluations;
  return greedy;
}

SelectionResult modified_greedy_select(const BenefitEstimator& estimator,
                                       const NodeEconomics& econ, double budget,
                                       GreedyOptions options) {
  SampledGainOracle oracle(estimator);
  return modified_greedy_select(oracle, econ, budget, options);
}

SelectionResult lazy_greedy_select(GainOracle& oracle, const NodeEconomics& econ, double budget,
                                   GreedyOptions options) {
  check_budget(budget);
  check_sizes(oracle, econ);
  const NodeId n = oracle.node_count();
  oracle.reset();

  // `round` is the seed-set size the ratio was computed against; an entry
  // is current exactly when round == seeds.size().
  struct Entry {
    double ratio;
    double gain;
    NodeId node;
    std::size_t round;
  };
  auto lower_priority = [](const Entry& a, const Entry& b) {
    return a.ratio < b.ratio || (a.ratio == b.ratio && a.node > b.node);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);
  constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();
  for (NodeId v = 0; v < n; ++v)
    heap.push({std::numeric_limits<double>::infinity(), 0.0, v, kNever});

  SelectionResult result;
  while (result.spent < budget) {
    std::optional<Entry> pick;
    std::size_t evaluations = 0;
    while (!heap.empty()) {
      Entry top = heap.top();
      heap.pop();
      // Spending only grows, so an unaffordable node never becomes affordable.
      if (result.spent + econ.cost[top.node] > budget) continue;
      if (top.round == result.seeds.size()) {
        pick = top;
        break;
      }
      top.gain = oracle.gain(top.node);
      top.ratio = top.gain / econ.cost[top.node];
      top.round = result.seeds.size();
      ++evaluations;
      heap.push(top);
    }
    result.evaluations += evaluations;
    if (!pick) break;
    if (!options.strict && pick->ratio <= 0.0) {
      result.stopped_on_zero_gain = true;
      break;
    }
    commit(result, oracle, econ, budget, pick->node, pick->gain, evaluations);
  }
  result.estimated_benefit = oracle.value(result.seeds);
  return result;
}

SelectionResult lazy_greedy_select(const BenefitEstimator& estimator, const NodeEconomics& econ,
                                   double budget, GreedyOptions options) {
  SampledGainOracle oracle(estimator);
  return lazy_greedy_select(oracle, econ, budget, options);
}

}  // namespace ebm
