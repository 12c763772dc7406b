#pragma once

#include <optional>

#include "ebm/graph.hpp"
#include "ebm/result.hpp"

namespace ebm {

// Degree-only baselines. Scores ignore costs and benefits; the budget is
// enforced by taking the best-ranked node that still fits. Degree is the
// undirected degree, or in + out on directed graphs. Discounts propagate
// along out-arcs of each new seed. All throw std::invalid_argument when
// budget <= 0; estimated_benefit is left NaN.

// Nodes by degree (ties to lower id), scanned once.
SelectionResult max_degree_select(const SocialGraph& graph, const NodeEconomics& econ,
                                  double budget);

// Effective degree after t seeded neighbours: d - 2t - (d - t) t p.
constexpr double discounted_degree(double degree, double seeded_neighbors, double p) {
  return degree - 2.0 * seeded_neighbors - (degree - seeded_neighbors) * seeded_neighbors * p;
}

// DegreeDiscount. `p` fixes the propagation probability in the discount;
// without it the probability of the arc that triggered the update is used.
SelectionResult degree_discount_select(const SocialGraph& graph, const NodeEconomics& econ,
                                       double budget, std::optional<double> p = std::nullopt);

// SingleDiscount: each seeded neighbour lowers the effective degree by one.
SelectionResult single_discount_select(const SocialGraph& graph, const NodeEconomics& econ,
                                       double budget);

}  // namespace ebm
