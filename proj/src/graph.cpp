#include "ebm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "ebm/rng.hpp"

namespace ebm {

namespace {

std::uint64_t edge_key(NodeId a, NodeId b, bool directed) {
  if (!directed && a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

bool valid_probability(double p) { return p == 0.0 || (p > 0.0 && p <= 1.0); }

}  // namespace

SocialGraph::SocialGraph(NodeId node_count, std::vector<Edge> edges, bool directed,
                         std::vector<std::uint64_t> original_ids)
    : node_count_(node_count),
      directed_(directed),
      edges_(std::move(edges)),
      original_ids_(std::move(original_ids)) {
  if (original_ids_.empty()) {
    original_ids_.resize(node_count_);
    std::iota(original_ids_.begin(), original_ids_.end(), std::uint64_t{0});
  } else if (original_ids_.size() != node_count_) {
    throw std::invalid_argument("original id table size does not match node count");
  }
  std::unordered_map<std::uint64_t, std::size_t> seen;
  seen.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.src >= node_count_ || e.dst >= node_count_)
      throw std::invalid_argument("edge " + std::to_string(i) + " has an out-of-range node id");
    if (e.src == e.dst)
      throw std::invalid_argument("edge " + std::to_string(i) + " is a self-loop");
    if (!valid_probability(e.prob))
      throw std::invalid_argument("edge " + std::to_string(i) + " has probability outside (0,1]");
    if (!seen.emplace(edge_key(e.src, e.dst, directed_), i).second)
      throw std::invalid_argument("edge " + std::to_string(i) + " duplicates an earlier edge");
  }
  build();
}

void SocialGraph::build() {
  const std::size_t arcs = directed_ ? edges_.size() : 2 * edges_.size();
  std::vector<std::size_t> out_count(node_count_ + 1, 0), in_count(node_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++out_count[e.src + 1];
    ++in_count[e.dst + 1];
    if (!directed_) {
      ++out_count[e.dst + 1];
      ++in_count[e.src + 1];
    }
  }
  std::partial_sum(out_count.begin(), out_count.end(), out_count.begin());
  std::partial_sum(in_count.begin(), in_count.end(), in_count.begin());
  out_offset_ = out_count;
  in_offset_ = in_count;
  out_nodes_.assign(arcs, 0);
  out_probs_.assign(arcs, 0.0);
  in_nodes_.assign(arcs, 0);
  in_probs_.assign(arcs, 0.0);

  // Counting sort, stable in input order.
  std::vector<std::size_t> out_pos(out_offset_.begin(), out_offset_.end() - 1);
  std::vector<std::size_t> in_pos(in_offset_.begin(), in_offset_.end() - 1);
  auto add_arc = [&](NodeId s, NodeId d, double p) {
    out_nodes_[out_pos[s]] = d;
    out_probs_[out_pos[s]++] = p;
    in_nodes_[in_pos[d]] = s;
    in_probs_[in_pos[d]++] = p;
  };
  for (const Edge& e : edges_) {
    add_arc(e.src, e.dst, e.prob);
    if (!directed_) add_arc(e.dst, e.src, e.prob);
  }
}

ArcRange SocialGraph::out_arcs(NodeId u) const {
  const std::size_t b = out_offset_[u], e = out_offset_[u + 1];
  return {std::span<const NodeId>(out_nodes_).subspan(b, e - b),
          std::span<const double>(out_probs_).subspan(b, e - b), b};
}

std::span<const NodeId> SocialGraph::in_nodes(NodeId u) const {
  const std::size_t b = in_offset_[u], e = in_offset_[u + 1];
  return std::span<const NodeId>(in_nodes_).subspan(b, e - b);
}

std::span<const double> SocialGraph::in_probs(NodeId u) const {
  const std::size_t b = in_offset_[u], e = in_offset_[u + 1];
  return std::span<const double>(in_probs_).subspan(b, e - b);
}

bool SocialGraph::probabilities_assigned() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.prob > 0.0; });
}

SocialGraph SocialGraph::with_probabilities(std::span<const double> edge_probs) const {
  if (edge_probs.size() != edges_.size())
    throw std::invalid_argument("probability count does not match edge count");
  std::vector<Edge> edges = edges_;
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].prob = edge_probs[i];
  return SocialGraph(node_count_, std::move(edges), directed_, original_ids_);
}

SocialGraph load_edge_list(std::istream& in, bool directed, std::vector<std::string>* warnings) {
  std::unordered_map<std::uint64_t, NodeId> dense;
  std::vector<std::uint64_t> original;
  std::vector<Edge> edges;
  std::vector<bool> removed;
  std::unordered_map<std::uint64_t, std::size_t> index_of;

  auto dense_id = [&](std::uint64_t raw) {
    auto [it, inserted] = dense.emplace(raw, static_cast<NodeId>(original.size()));
    if (inserted) original.push_back(raw);
    return it->second;
  };
  auto warn = [&](const std::string& msg) {
    if (warnings)
      warnings->push_back(msg);
    else
      std::cerr << "warning: " << msg << '\n';
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream tokens(line);
    std::string tok[4];
    int count = 0;
    while (count < 4 && tokens >> tok[count]) ++count;
    if (count < 2 || count > 3)
      throw ParseError(line_no, "expected `src dst [prob]`, got \"" + line + "\"");

    std::uint64_t ids[2];
    for (int k = 0; k < 2; ++k) {
      const std::string& t = tok[k];
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), ids[k]);
      if (ec != std::errc() || ptr != t.data() + t.size())
        throw ParseError(line_no, "invalid node id \"" + t + "\"");
    }
    double prob = 0.0;
    if (count == 3) {
      const std::string& t = tok[2];
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), prob);
      if (ec != std::errc() || ptr != t.data() + t.size())
        throw ParseError(line_no, "invalid probability \"" + t + "\"");
      if (!(prob > 0.0 && prob <= 1.0))
        throw ProbabilityRangeError(line_no, "probability " + t + " outside (0,1]");
    }
    if (ids[0] == ids[1]) throw ParseError(line_no, "self-loop on node " + tok[0]);

    const NodeId s = dense_id(ids[0]);
    const NodeId d = dense_id(ids[1]);
    const std::uint64_t key = edge_key(s, d, directed);
    if (auto it = index_of.find(key); it != index_of.end()) {
      warn("line " + std::to_string(line_no) + ": duplicate edge " + tok[0] + " " + tok[1] +
           " replaces an earlier occurrence");
      removed[it->second] = true;
    }
    index_of[key] = edges.size();
    edges.push_back({s, d, prob});
    removed.push_back(false);
  }

  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (!removed[i]) kept.push_back(edges[i]);
  const auto n = static_cast<NodeId>(original.size());
  return SocialGraph(n, std::move(kept), directed, std::move(original));
}

SocialGraph load_edge_list_file(const std::string& path, bool directed,
                                std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return load_edge_list(in, directed, warnings);
}

void write_edge_list(std::ostream& out, const SocialGraph& graph) {
  char buf[64];
  for (const Edge& e : graph.input_edges()) {
    out << graph.original_id(e.src) << ' ' << graph.original_id(e.dst);
    if (e.prob > 0.0) {
      std::snprintf(buf, sizeof buf, "%.17g", e.prob);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

SocialGraph assign_probabilities(const SocialGraph& graph, const ProbabilityScheme& scheme,
                                 std::uint64_t seed) {
  const std::size_t m = graph.input_edges().size();
  std::vector<double> probs(m);
  if (const auto* uniform = std::get_if<UniformProbability>(&scheme)) {
    if (!(uniform->p > 0.0 && uniform->p <= 1.0))
      throw std::invalid_argument("uniform probability must lie in (0,1]");
    std::fill(probs.begin(), probs.end(), uniform->p);
  } else {
    std::mt19937_64 rng(seed);
    for (double& p : probs) p = kTrivalencyValues[uniform_index(rng, 3)];
  }
  return graph.with_probabilities(probs);
}

NodeEconomics NodeEconomics::from_vectors(std::vector<double> cost, std::vector<double> benefit) {
  NodeEconomics econ{std::move(cost), std::move(benefit), {}};
  for (NodeId u = 0; u < econ.benefit.size(); ++u)
    if (econ.benefit[u] > 0.0) econ.targets.push_back(u);
  return econ;
}

void NodeEconomics::validate(NodeId node_count) const {
  if (cost.size() != node_count || benefit.size() != node_count)
    throw std::invalid_argument("economics vectors do not match node count");
  for (NodeId u = 0; u < node_count; ++u) {
    if (!(cost[u] > 0.0) || !std::isfinite(cost[u]))
      throw std::invalid_argument("cost of node " + std::to_string(u) + " is not positive");
    if (!(benefit[u] >= 0.0) || !std::isfinite(benefit[u]))
      throw std::invalid_argument("benefit of node " + std::to_string(u) + " is negative");
  }
  std::vector<bool> is_target(node_count, false);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const NodeId t = targets[i];
    if (t >= node_count) throw std::invalid_argument("target id out of range");
    if (i > 0 && targets[i - 1] >= t)
      throw std::invalid_argument("targets must be strictly ascending");
    is_target[t] = true;
  }
  for (NodeId u = 0; u < node_count; ++u)
    if (!is_target[u] && benefit[u] != 0.0)
      throw std::invalid_argument("non-target node " + std::to_string(u) + " has benefit");
}

double NodeEconomics::total_benefit() const {
  double sum = 0.0;
  for (NodeId t : targets) sum += benefit[t];
  return sum;
}

void EconomicsScheme::validate() const {
  if (!(target_fraction > 0.0 && target_fraction <= 1.0))
    throw std::invalid_argument("target fraction must lie in (0,1]");
  if (!(cost_lo > 0.0 && cost_lo <= cost_hi))
    throw std::invalid_argument("cost interval must satisfy 0 < lo <= hi");
  if (!(benefit_lo > 0.0 && benefit_lo <= benefit_hi))
    throw std::invalid_argument("benefit interval must satisfy 0 < lo <= hi");
  if (!(min_cost > 0.0)) throw std::invalid_argument("minimum cost must be positive");
}

NodeEconomics assign_economics(const SocialGraph& graph, const EconomicsScheme& scheme,
                               std::uint64_t seed) {
  scheme.validate();
  const NodeId n = graph.node_count();
  std::mt19937_64 rng(seed);

  // Partial Fisher-Yates for the target subset.
  const auto k = static_cast<NodeId>(std::floor(scheme.target_fraction * n + 1e-9));
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  for (NodeId i = 0; i < k; ++i) {
    const auto j = static_cast<NodeId>(i + uniform_index(rng, n - i));
    std::swap(perm[i], perm[j]);
  }
  std::vector<NodeId> targets(perm.begin(), perm.begin() + k);
  std::sort(targets.begin(), targets.end());

  std::vector<double> cost(n), benefit(n, 0.0);
  if (scheme.cost == CostScheme::kRandomUniform) {
    for (double& c : cost) c = uniform_real(rng, scheme.cost_lo, scheme.cost_hi);
  } else {
    const double two_m = 2.0 * static_cast<double>(graph.input_edges().size());
    for (NodeId u = 0; u < n; ++u) {
      const double c = two_m > 0.0 ? n * static_cast<double>(graph.degree(u)) / two_m : 0.0;
      cost[u] = std::max(c, scheme.min_cost);
    }
  }
  for (NodeId t : targets)
    benefit[t] = scheme.benefit == BenefitScheme::kUnit
                     ? 1.0
                     : uniform_real(rng, scheme.benefit_lo, scheme.benefit_hi);

  NodeEconomics econ{std::move(cost), std::move(benefit), std::move(targets)};
  econ.validate(n);
  return econ;
}

}  // namespace ebm
