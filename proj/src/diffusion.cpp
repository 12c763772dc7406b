#include "ebm/diffusion.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ebm {

namespace {

void check_seeds(const SocialGraph& graph, std::span<const NodeId> seeds) {
  for (NodeId s : seeds)
    if (s >= graph.node_count())
      throw std::out_of_range("seed " + std::to_string(s) + " is not a node of the graph");
}

// Runs fn(p, thread) for every sample index. Each call writes only to its
// own slot, so the caller can reduce in index order afterwards.
template <class Fn>
void for_each_sample(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1) {
    for (std::size_t p = 0; p < count; ++p) fn(p, 0);
    return;
  }
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t p = 0; p < n; ++p) fn(static_cast<std::size_t>(p), omp_get_thread_num());
}

// Sum of target benefits in ascending id; sorts `reached` in place.
double sum_benefit(std::vector<NodeId>& reached, const NodeEconomics& econ) {
  std::sort(reached.begin(), reached.end());
  double sum = 0.0;
  for (NodeId v : reached) sum += econ.benefit[v];
  return sum;
}

struct BfsScratch {
  explicit BfsScratch(NodeId n) : stamp(n, 0) {}
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
  std::vector<NodeId> queue;
  std::vector<NodeId> reached;

  void next_epoch() {
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
  }
};

// Benefit reachable from `seeds` on the sample stream `key`.
double sample_benefit(const SocialGraph& graph, const NodeEconomics& econ, std::uint64_t key,
                      std::span<const NodeId> seeds, BfsScratch& s) {
  s.next_epoch();
  s.queue.clear();
  s.reached.clear();
  for (NodeId u : seeds) {
    if (s.stamp[u] == s.epoch) continue;
    s.stamp[u] = s.epoch;
    s.queue.push_back(u);
  }
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const NodeId x = s.queue[head];
    if (econ.benefit[x] > 0.0) s.reached.push_back(x);
    const ArcRange arcs = graph.out_arcs(x);
    for (std::size_t i = 0; i < arcs.nodes.size(); ++i) {
      const NodeId y = arcs.nodes[i];
      if (s.stamp[y] == s.epoch || !arc_is_live(key, arcs.first_arc + i, arcs.probs[i])) continue;
      s.stamp[y] = s.epoch;
      s.queue.push_back(y);
    }
  }
  return sum_benefit(s.reached, econ);
}

}  // namespace

CascadeResult simulate_cascade(const SocialGraph& graph, std::span<const NodeId> seeds,
                               std::mt19937_64& rng) {
  check_seeds(graph, seeds);
  CascadeResult result;
  std::vector<bool> active(graph.node_count(), false);
  std::vector<NodeId> frontier;
  for (NodeId s : seeds) {
    if (active[s]) continue;
    active[s] = true;
    frontier.push_back(s);
  }
  result.rounds.push_back(frontier);
  if (frontier.empty()) return result;
  while (true) {
    std::vector<NodeId> next;
    for (NodeId x : frontier) {
      const ArcRange arcs = graph.out_arcs(x);
      for (std::size_t i = 0; i < arcs.nodes.size(); ++i) {
        const NodeId y = arcs.nodes[i];
        if (active[y]) continue;
        if (uniform01(rng) < arcs.probs[i]) {
          active[y] = true;
          next.push_back(y);
        }
      }
    }
    if (next.empty()) break;
    result.rounds.push_back(next);
    frontier = std::move(next);
  }
  result.steps = result.rounds.size() - 1;
  for (const auto& round : result.rounds)
    result.influenced.insert(result.influenced.end(), round.begin(), round.end());
  std::sort(result.influenced.begin(), result.influenced.end());
  return result;
}

LiveEdgeSample::LiveEdgeSample(const SocialGraph& graph, std::uint64_t index,
                               std::uint64_t master_seed)
    : graph_(&graph), bits_((graph.edge_count() + 63) / 64, 0) {
  const std::uint64_t key = sample_key(master_seed, index);
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    const ArcRange arcs = graph.out_arcs(u);
    for (std::size_t i = 0; i < arcs.nodes.size(); ++i) {
      const std::size_t a = arcs.first_arc + i;
      if (arc_is_live(key, a, arcs.probs[i])) bits_[a >> 6] |= std::uint64_t{1} << (a & 63);
    }
  }
}

std::size_t LiveEdgeSample::live_count() const {
  std::size_t count = 0;
  for (std::uint64_t w : bits_) count += static_cast<std::size_t>(__builtin_popcountll(w));
  return count;
}

LiveEdgeSample sample_live_graph(const SocialGraph& graph, std::uint64_t index,
                                 std::uint64_t master_seed) {
  return LiveEdgeSample(graph, index, master_seed);
}

double earned_benefit_on_sample(const LiveEdgeSample& sample, const NodeEconomics& econ,
                                std::span<const NodeId> seeds) {
  const SocialGraph& graph = sample.graph();
  check_seeds(graph, seeds);
  std::vector<bool> seen(graph.node_count(), false);
  std::vector<NodeId> queue, reached;
  for (NodeId u : seeds) {
    if (seen[u]) continue;
    seen[u] = true;
    queue.push_back(u);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId x = queue[head];
    if (econ.benefit[x] > 0.0) reached.push_back(x);
    const ArcRange arcs = graph.out_arcs(x);
    for (std::size_t i = 0; i < arcs.nodes.size(); ++i) {
      const NodeId y = arcs.nodes[i];
      if (seen[y] || !sample.live(arcs.first_arc + i)) continue;
      seen[y] = true;
      queue.push_back(y);
    }
  }
  return sum_benefit(reached, econ);
}

BenefitEstimator::BenefitEstimator(const SocialGraph& graph, const NodeEconomics& econ,
                                   EstimatorOptions options)
    : graph_(&graph), econ_(&econ), options_(options) {
  if (options_.samples == 0) throw std::invalid_argument("estimator needs at least one sample");
  if (options_.threads < 1) options_.threads = 1;
  if (!graph.probabilities_assigned())
    throw std::invalid_argument("graph has edges without an assigned probability");
  econ.validate(graph.node_count());
  keys_.resize(options_.samples);
  for (std::size_t p = 0; p < options_.samples; ++p) keys_[p] = sample_key(options_.seed, p);
}

std::vector<double> BenefitEstimator::per_sample(std::span<const NodeId> seeds) const {
  check_seeds(*graph_, seeds);
  std::vector<double> values(options_.samples, 0.0);
  if (seeds.empty()) return values;
  std::vector<BfsScratch> scratch(static_cast<std::size_t>(options_.threads),
                                  BfsScratch(graph_->node_count()));
  for_each_sample(options_.samples, options_.threads, [&](std::size_t p, int tid) {
    values[p] = sample_benefit(*graph_, *econ_, keys_[p], seeds, scratch[tid]);
  });
  return values;
}

double BenefitEstimator::estimate(std::span<const NodeId> seeds) const {
  double sum = 0.0;
  for (double v : per_sample(seeds)) sum += v;
  return sum / static_cast<double>(options_.samples);
}

double BenefitEstimator::marginal_gain(std::span<const NodeId> seeds, NodeId u) const {
  if (u >= graph_->node_count()) throw std::out_of_range("node " + std::to_string(u));
  if (std::find(seeds.begin(), seeds.end(), u) != seeds.end())
    throw std::invalid_argument("node " + std::to_string(u) + " is already a seed");
  std::vector<NodeId> extended(seeds.begin(), seeds.end());
  extended.push_back(u);
  return estimate(extended) - estimate(seeds);
}

IncrementalCoverage::IncrementalCoverage(const BenefitEstimator& estimator)
    : est_(&estimator),
      words_((estimator.graph().node_count() + 63) / 64),
      covered_(estimator.sample_count() * words_, 0),
      scratch_(static_cast<std::size_t>(estimator.threads())),
      per_sample_(estimator.sample_count(), 0.0) {
  for (Scratch& s : scratch_) s.stamp.assign(estimator.graph().node_count(), 0);
}

double IncrementalCoverage::gain(NodeId u) {
  const SocialGraph& graph = est_->graph();
  const NodeEconomics& econ = est_->economics();
  if (u >= graph.node_count()) throw std::out_of_range("node " + std::to_string(u));
  for_each_sample(est_->sample_count(), est_->threads(), [&](std::size_t p, int tid) {
    if (covered(p, u)) {
      per_sample_[p] = 0.0;
      return;
    }
    Scratch& s = scratch_[tid];
    if (++s.epoch == 0) {
      std::fill(s.stamp.begin(), s.stamp.end(), 0);
      s.epoch = 1;
    }
    const std::uint64_t key = est_->key(p);
    s.queue.assign(1, u);
    s.reached.clear();
    s.stamp[u] = s.epoch;
    for (std::size_t head = 0; head < s.queue.size(); ++head) {
      const NodeId x = s.queue[head];
      if (econ.benefit[x] > 0.0) s.reached.push_back(x);
      const ArcRange arcs = graph.out_arcs(x);
      for (std::size_t i = 0; i < arcs.nodes.size(); ++i) {
        const NodeId y = arcs.nodes[i];
        if (s.stamp[y] == s.epoch || covered(p, y) ||
            !arc_is_live(key, arcs.first_arc + i, arcs.probs[i]))
          continue;
        s.stamp[y] = s.epoch;
        s.queue.push_back(y);
      }
    }
    per_sample_[p] = sum_benefit(s.reached, econ);
  });
  double sum = 0.0;
  for (double v : per_sample_) sum += v;
  return sum / static_cast<double>(est_->sample_count());
}

void IncrementalCoverage::add(NodeId u) {
  const SocialGraph& graph = est_->graph();
  if (u >= graph.node_count()) throw std::out_of_range("node " + std::to_string(u));
  if (std::find(seeds_.begin(), seeds_.end(), u) != seeds_.end())
    throw std::invalid_argument("node " + std::to_string(u) + " is already a seed");
  seeds_.push_back(u);
  for_each_sample(est_->sample_count(), est_->threads(), [&](std::size_t p, int tid) {
    if (covered(p, u)) return;
    std::uint64_t* row = covered_.data() + p * words_;
    auto mark = [row](NodeId v) { row[v >> 6] |= std::uint64_t{1} << (v & 63); };
    std::vector<NodeId>& queue = scratch_[tid].queue;
    const std::uint64_t key = est_->key(p);
    queue.assign(1, u);
    mark(u);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const ArcRange arcs = graph.out_arcs(queue[head]);
      for (std::size_t i = 0; i < arcs.nodes.size(); ++i) {
        const NodeId y = arcs.nodes[i];
        if (covered(p, y) || !arc_is_live(key, arcs.first_arc + i, arcs.probs[i])) continue;
        mark(y);
        queue.push_back(y);
      }
    }
  });
}

void IncrementalCoverage::reset() {
  std::fill(covered_.begin(), covered_.end(), 0);
  seeds_.clear();
}

double exact_benefit_bruteforce(const SocialGraph& graph, const NodeEconomics& econ,
                                std::span<const NodeId> seeds) {
  const std::size_t m = graph.edge_count();
  if (m > 20) throw std::invalid_argument("exact enumeration refused: more than 20 arcs");
  check_seeds(graph, seeds);
  if (seeds.empty()) return 0.0;

  std::vector<double> arc_prob(m);
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    const ArcRange arcs = graph.out_arcs(u);
    for (std::size_t i = 0; i < arcs.nodes.size(); ++i) arc_prob[arcs.first_arc + i] = arcs.probs[i];
  }
  std::vector<bool> seen(graph.node_count());
  std::vector<NodeId> queue, reached;
  double total = 0.0;
  for (std::uint32_t live = 0; live < (std::uint32_t{1} << m); ++live) {
    double pr = 1.0;
    for (std::size_t a = 0; a < m; ++a) pr *= ((live >> a) & 1U) ? arc_prob[a] : 1.0 - arc_prob[a];
    if (pr == 0.0) continue;
    std::fill(seen.begin(), seen.end(), false);
    queue.clear();
    reached.clear();
    for (NodeId s : seeds) {
      if (seen[s]) continue;
      seen[s] = true;
      queue.push_back(s);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId x = queue[head];
      if (econ.benefit[x] > 0.0) reached.push_back(x);
      const ArcRange arcs = graph.out_arcs(x);
      for (std::size_t i = 0; i < arcs.nodes.size(); ++i) {
        const NodeId y = arcs.nodes[i];
        if (seen[y] || !((live >> (arcs.first_arc + i)) & 1U)) continue;
        seen[y] = true;
        queue.push_back(y);
      }
    }
    total += pr * sum_benefit(reached, econ);
  }
  return total;
}

ExactBenefitTable::ExactBenefitTable(const SocialGraph& graph, const NodeEconomics& econ)
    : n_(graph.node_count()) {
  const std::size_t m = graph.edge_count();
  if (n_ > 16 || n_ + m > 30)
    throw std::invalid_argument("exact benefit table refused: graph too large");
  econ.validate(n_);
  const std::uint32_t subsets = std::uint32_t{1} << n_;

  std::vector<double> mask_benefit(subsets, 0.0);
  for (std::uint32_t s = 1; s < subsets; ++s)
    for (NodeId v = 0; v < n_; ++v)
      if ((s >> v) & 1U) mask_benefit[s] += econ.benefit[v];

  std::vector<double> arc_prob(m);
  std::vector<NodeId> arc_src(m), arc_dst(m);
  for (NodeId u = 0; u < n_; ++u) {
    const ArcRange arcs = graph.out_arcs(u);
    for (std::size_t i = 0; i < arcs.nodes.size(); ++i) {
      arc_prob[arcs.first_arc + i] = arcs.probs[i];
      arc_src[arcs.first_arc + i] = u;
      arc_dst[arcs.first_arc + i] = arcs.nodes[i];
    }
  }

  table_.assign(subsets, 0.0);
  std::vector<std::uint32_t> reach(n_), union_reach(subsets, 0);
  for (std::uint32_t live = 0; live < (std::uint32_t{1} << m); ++live) {
    double pr = 1.0;
    for (std::size_t a = 0; a < m; ++a) pr *= ((live >> a) & 1U) ? arc_prob[a] : 1.0 - arc_prob[a];
    if (pr == 0.0) continue;
    // Transitive closure by relaxation; n is tiny.
    for (NodeId v = 0; v < n_; ++v) reach[v] = std::uint32_t{1} << v;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t a = 0; a < m; ++a) {
        if (!((live >> a) & 1U)) continue;
        const std::uint32_t merged = reach[arc_src[a]] | reach[arc_dst[a]];
        if (merged != reach[arc_src[a]]) {
          reach[arc_src[a]] = merged;
          changed = true;
        }
      }
    }
    for (std::uint32_t s = 1; s < subsets; ++s) {
      const auto low = static_cast<NodeId>(__builtin_ctz(s));
      union_reach[s] = union_reach[s & (s - 1)] | reach[low];
      table_[s] += pr * mask_benefit[union_reach[s]];
    }
  }
}

double ExactBenefitTable::value(std::span<const NodeId> seeds) const {
  std::uint32_t mask = 0;
  for (NodeId s : seeds) {
    if (s >= n_) throw std::out_of_range("node " + std::to_string(s));
    mask |= std::uint32_t{1} << s;
  }
  return table_[mask];
}

}  // namespace ebm
