#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ebm/diffusion.hpp"
#include "ebm/graph.hpp"
#include "ebm/result.hpp"

namespace ebm {

// Set-function access used by the greedy selectors: marginal gains against
// an internal seed set that only grows between reset() calls.
class GainOracle {
 public:
  virtual ~GainOracle() = default;
  virtual NodeId node_count() const = 0;
  virtual void reset() = 0;
  virtual double gain(NodeId u) = 0;
  virtual void add(NodeId u) = 0;
  virtual double value(std::span<const NodeId> seeds) const = 0;
};

// Monte Carlo oracle over a BenefitEstimator's fixed sample set.
class SampledGainOracle final : public GainOracle {
 public:
  explicit SampledGainOracle(const BenefitEstimator& estimator)
      : estimator_(&estimator), coverage_(estimator) {}
  explicit SampledGainOracle(BenefitEstimator&&) = delete;

  NodeId node_count() const override { return estimator_->graph().node_count(); }
  void reset() override { coverage_.reset(); }
  double gain(NodeId u) override { return coverage_.gain(u); }
  void add(NodeId u) override { coverage_.add(u); }
  double value(std::span<const NodeId> seeds) const override {
    return estimator_->estimate(seeds);
  }

 private:
  const BenefitEstimator* estimator_;
  IncrementalCoverage coverage_;
};

// Exact oracle for tiny graphs, backed by a precomputed subset table.
class ExactGainOracle final : public GainOracle {
 public:
  explicit ExactGainOracle(const ExactBenefitTable& table) : table_(&table) {}
  explicit ExactGainOracle(ExactBenefitTable&&) = delete;

  NodeId node_count() const override { return table_->node_count(); }
  void reset() override { mask_ = 0; }
  double gain(NodeId u) override {
    return table_->value(mask_ | (std::uint32_t{1} << u)) - table_->value(mask_);
  }
  void add(NodeId u) override { mask_ |= std::uint32_t{1} << u; }
  double value(std::span<const NodeId> seeds) const override { return table_->value(seeds); }

 private:
  const ExactBenefitTable* table_;
  std::uint32_t mask_ = 0;
};

struct GreedyOptions {
  // Keep adding affordable nodes whose best ratio is <= 0, exactly as the
  // unmodified loop does. Off by default: such nodes only burn budget.
  bool strict = false;
};

// Cost-ratio incremental greedy: repeatedly add the affordable node with the
// largest gain / cost (ties to the lower id) until nothing fits.
// Throws std::invalid_argument when budget <= 0.
SelectionResult greedy_ratio_select(GainOracle& oracle, const NodeEconomics& econ, double budget,
                                    GreedyOptions options = {});
SelectionResult greedy_ratio_select(const BenefitEstimator& estimator, const NodeEconomics& econ,
                                    double budget, GreedyOptions options = {});

struct SingleNodeChoice {
  std::optional<NodeId> node;
  double benefit = 0.0;
  std::size_t evaluations = 0;
};

// Affordable node with the largest single-node benefit (ties to lower id).
SingleNodeChoice best_single_node(const GainOracle& oracle, const NodeEconomics& econ,
                                  double budget);
SingleNodeChoice best_single_node(const BenefitEstimator& estimator, const NodeEconomics& econ,
                                  double budget);

// Better of the cost-ratio greedy set and the best affordable single node;
// ties keep the greedy set. This is the variant with the (1 - 1/sqrt(e))
// guarantee.
SelectionResult modified_greedy_select(GainOracle& oracle, const NodeEconomics& econ,
                                       double budget, GreedyOptions options = {});
SelectionResult modified_greedy_select(const BenefitEstimator& estimator,
                                       const NodeEconomics& econ, double budget,
                                       GreedyOptions options = {});

// Lazy (CELF-style) evaluation of greedy_ratio_select. Cached ratios are
// upper bounds by submodularity; a node is committed only when its cached
// ratio was computed against the current seed set and still tops the heap.
// Returns the same seed sequence as greedy_ratio_select on the same oracle.
SelectionResult lazy_greedy_select(GainOracle& oracle, const NodeEconomics& econ, double budget,
                                   GreedyOptions options = {});
SelectionResult lazy_greedy_select(const BenefitEstimator& estimator, const NodeEconomics& econ,
                                   double budget, GreedyOptions options = {});

}  // namespace ebm
