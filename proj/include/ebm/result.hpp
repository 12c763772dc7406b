#pragma once

#include <cstddef>
#include <vector>

#include "ebm/graph.hpp"

namespace ebm {

struct TraceStep {
  NodeId node;
  double gain;              // marginal gain, or the ranking score for heuristics
  double remaining_budget;  // after paying for `node`
  std::size_t evaluations;  // benefit evaluations spent in this iteration
};

// Output of every seed selector. spent == sum of seed costs <= budget.
struct SelectionResult {
  std::vector<NodeId> seeds;  // pick order
  double spent = 0.0;
  // Benefit of `seeds` under the selector's own estimator; NaN when the
  // selector was run without one.
  double estimated_benefit = 0.0;
  std::vector<TraceStep> trace;
  std::size_t evaluations = 0;
  // The greedy stopped because no candidate had positive gain.
  bool stopped_on_zero_gain = false;
};

}  // namespace ebm
