#pragma once

#include <utility>
#include <vector>

#include "ebm/diffusion.hpp"
#include "ebm/graph.hpp"
#include "ebm/result.hpp"

namespace ebm {

struct HopConfig {
  unsigned hops = 2;
  double alpha = 0.1;   // cut-off probability for effective neighbours
  bool skip_zero = false;  // stop the rank scan at the first zero score
  int threads = 1;

  void validate() const;
};

struct HopNeighbor {
  NodeId node;
  unsigned hops;

  friend bool operator==(const HopNeighbor&, const HopNeighbor&) = default;
};

// Nodes that reach t in at most h hops (BFS over reverse arcs), t excluded,
// ordered by (hops, id).
std::vector<HopNeighbor> h_hop_in_neighborhood(const SocialGraph& graph, NodeId target,
                                               unsigned hops);

// Influence probability of every h-hop in-neighbour s of `target`, as
// (s, P(s -> target)) in ascending s.
//
// P is the in-tree recursion
//     P_d(s -> x) = 1 - prod_{w in N_in(x)} (1 - P_{d-1}(s -> w) * p(w, x)),
// with P_d(s -> s) = 1, P_0(s -> x) = 0 for x != s, and walks through the
// target itself ignored. Independent in-neighbours combine as a union;
// this is exact when the s -> t paths of length <= h are edge-disjoint and
// over-counts shared sub-paths otherwise.
std::vector<std::pair<NodeId, double>> influence_probabilities_to(const SocialGraph& graph,
                                                                  NodeId target, unsigned hops);

// Single-source form of the above; 0 when s is not an h-hop in-neighbour.
double influence_probability(const SocialGraph& graph, NodeId source, NodeId target,
                             unsigned hops);

struct ScoreTable {
  std::vector<double> earned_benefit;  // EB(u) >= b(u)
  std::vector<double> score;           // EB(u) / C(u)
};

// EB(u) = b(u) + sum over targets t with P(u -> t) >= alpha of P(u -> t) b(t);
// the ranking score divides by cost. Targets are processed in parallel and
// reduced in ascending id, so the table does not depend on the thread count.
ScoreTable compute_scores(const SocialGraph& graph, const NodeEconomics& econ,
                          const HopConfig& config);

// One pass over nodes by descending score (ties to lower id), taking every
// node that still fits the budget. `reporter`, when given, only fills
// estimated_benefit. Throws std::invalid_argument when budget <= 0.
SelectionResult hop_based_select(const ScoreTable& scores, const NodeEconomics& econ,
                                 double budget, bool skip_zero = false,
                                 const BenefitEstimator* reporter = nullptr);
SelectionResult hop_based_select(const SocialGraph& graph, const NodeEconomics& econ,
                                 const HopConfig& config, double budget,
                                 const BenefitEstimator* reporter = nullptr);

}  // namespace ebm
