#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ebm/graph.hpp"
#include "ebm/rng.hpp"

namespace ebm {

// Outcome of one Independent Cascade run.
struct CascadeResult {
  std::vector<NodeId> influenced;           // ascending
  std::vector<std::vector<NodeId>> rounds;  // rounds[0] holds the seeds, possibly none
  std::size_t steps = 0;                    // rounds with at least one activation after t = 0
};

// IC diffusion: every node activated in round t tries each still-inactive
// out-neighbour once, succeeding with the edge probability. Duplicate seeds
// are ignored. Throws std::out_of_range for an unknown seed.
CascadeResult simulate_cascade(const SocialGraph& graph, std::span<const NodeId> seeds,
                               std::mt19937_64& rng);

// Liveness of one arc in the sample stream identified by `sample_key`.
inline bool arc_is_live(std::uint64_t sample_key, std::size_t arc, double prob) {
  return to_unit(splitmix64(sample_key + arc * 0x9e3779b97f4a7c15ULL)) < prob;
}

inline std::uint64_t sample_key(std::uint64_t master_seed, std::uint64_t index) {
  return derive_seed(master_seed, index, 0x5a3b1e);
}

// A live-edge realisation of the graph: each arc kept independently with
// its probability. Fully determined by (master seed, index).
class LiveEdgeSample {
 public:
  LiveEdgeSample(const SocialGraph& graph, std::uint64_t index, std::uint64_t master_seed);
  LiveEdgeSample(SocialGraph&&, std::uint64_t, std::uint64_t) = delete;

  const SocialGraph& graph() const { return *graph_; }
  bool live(std::size_t arc) const { return (bits_[arc >> 6] >> (arc & 63)) & 1U; }
  std::size_t live_count() const;

  friend bool operator==(const LiveEdgeSample& a, const LiveEdgeSample& b) {
    return a.bits_ == b.bits_;
  }

 private:
  const SocialGraph* graph_;
  std::vector<std::uint64_t> bits_;
};

LiveEdgeSample sample_live_graph(const SocialGraph& graph, std::uint64_t index,
                                 std::uint64_t master_seed);

// Sum of benefits of the targets reachable from `seeds` over live arcs.
double earned_benefit_on_sample(const LiveEdgeSample& sample, const NodeEconomics& econ,
                                std::span<const NodeId> seeds);

struct EstimatorOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Monte Carlo earned-benefit estimator over a fixed set of R live-edge
// samples. Samples are regenerated from their hash stream on every query,
// so nothing per sample is stored; every query sees the same R graphs.
//
// Per-sample values are summed in ascending node id and the per-sample
// values are reduced in sample order, so results do not depend on the
// thread count and the estimate is exactly monotone in the seed set.
//
// Holds references to the graph and economics; both must outlive it.
class BenefitEstimator {
 public:
  BenefitEstimator(const SocialGraph& graph, const NodeEconomics& econ, EstimatorOptions options);
  BenefitEstimator(SocialGraph&&, const NodeEconomics&, EstimatorOptions) = delete;
  BenefitEstimator(const SocialGraph&, NodeEconomics&&, EstimatorOptions) = delete;

  const SocialGraph& graph() const { return *graph_; }
  const NodeEconomics& economics() const { return *econ_; }
  std::size_t sample_count() const { return options_.samples; }
  std::uint64_t seed() const { return options_.seed; }
  int threads() const { return options_.threads; }
  std::uint64_t key(std::size_t p) const { return keys_[p]; }

  // beta_hat(S): mean earned benefit over the samples.
  double estimate(std::span<const NodeId> seeds) const;
  // Earned benefit on each sample, in sample order.
  std::vector<double> per_sample(std::span<const NodeId> seeds) const;
  // estimate(S u {u}) - estimate(S). Throws std::invalid_argument if u is in S.
  double marginal_gain(std::span<const NodeId> seeds, NodeId u) const;

 private:
  const SocialGraph* graph_;
  const NodeEconomics* econ_;
  EstimatorOptions options_;
  std::vector<std::uint64_t> keys_;
};

// Marginal gains against a growing seed set, using per-sample coverage
// bitmaps so each query only explores what the current set does not reach.
// Gains are exactly non-increasing as the set grows (floating point
// included); lazy evaluation relies on that.
class IncrementalCoverage {
 public:
  explicit IncrementalCoverage(const BenefitEstimator& estimator);
  explicit IncrementalCoverage(BenefitEstimator&&) = delete;

  // Mean over samples of the benefit newly reached from u.
  double gain(NodeId u);
  void add(NodeId u);
  void reset();
  std::span<const NodeId> seeds() const { return seeds_; }

 private:
  struct Scratch {
    std::vector<std::uint32_t> stamp;
    std::uint32_t epoch = 0;
    std::vector<NodeId> queue;
    std::vector<NodeId> reached;
  };
  bool covered(std::size_t p, NodeId u) const {
    return (covered_[p * words_ + (u >> 6)] >> (u & 63)) & 1U;
  }

  const BenefitEstimator* est_;
  std::size_t words_;
  std::vector<std::uint64_t> covered_;
  std::vector<NodeId> seeds_;
  std::vector<Scratch> scratch_;
  std::vector<double> per_sample_;
};

// Exact E[beta(S)] by enumerating all 2^m live-arc subsets. m <= 20.
double exact_benefit_bruteforce(const SocialGraph& graph, const NodeEconomics& econ,
                                std::span<const NodeId> seeds);

// Exact E[beta] for every subset of a tiny graph (n + m <= 30, n <= 16).
class ExactBenefitTable {
 public:
  ExactBenefitTable(const SocialGraph& graph, const NodeEconomics& econ);

  NodeId node_count() const { return n_; }
  double value(std::uint32_t mask) const { return table_[mask]; }
  double value(std::span<const NodeId> seeds) const;

 private:
  NodeId n_;
  std::vector<double> table_;
};

}  // namespace ebm
