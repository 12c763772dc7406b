#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ebm {

using NodeId = std::uint32_t;

// Malformed edge-list input. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Probability present but outside (0, 1].
class ProbabilityRangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

// One input edge. prob == 0 marks an unassigned probability.
struct Edge {
  NodeId src;
  NodeId dst;
  double prob;
};

struct ArcRange {
  std::span<const NodeId> nodes;
  std::span<const double> probs;
  std::size_t first_arc;  // index of nodes[0] in the forward arc numbering
};

// Directed weighted influence graph in CSR form, immutable once built.
//
// Undirected input edges become two arcs that share one probability. Arcs
// are numbered by their position in the forward CSR, which is what
// live-edge samples index.
class SocialGraph {
 public:
  SocialGraph() = default;

  // Throws std::invalid_argument on out-of-range ids, self-loops, duplicate
  // edges or probabilities outside {0} U (0, 1]. original_ids defaults to
  // the identity mapping.
  SocialGraph(NodeId node_count, std::vector<Edge> edges, bool directed,
              std::vector<std::uint64_t> original_ids = {});

  NodeId node_count() const { return node_count_; }
  // Number of directed arcs (an undirected edge counts twice).
  std::size_t edge_count() const { return out_nodes_.size(); }
  bool directed() const { return directed_; }

  // Edges as given, in input order, with dense ids.
  std::span<const Edge> input_edges() const { return edges_; }
  std::uint64_t original_id(NodeId u) const { return original_ids_[u]; }

  ArcRange out_arcs(NodeId u) const;
  std::span<const NodeId> in_nodes(NodeId u) const;
  std::span<const double> in_probs(NodeId u) const;
  std::size_t out_degree(NodeId u) const { return out_offset_[u + 1] - out_offset_[u]; }
  std::size_t in_degree(NodeId u) const { return in_offset_[u + 1] - in_offset_[u]; }

  // Undirected degree, or in + out for directed graphs.
  std::size_t degree(NodeId u) const {
    return directed_ ? in_degree(u) + out_degree(u) : out_degree(u);
  }

  bool probabilities_assigned() const;

  // Same topology and ids, new per-input-edge probabilities.
  SocialGraph with_probabilities(std::span<const double> edge_probs) const;

 private:
  void build();

  NodeId node_count_ = 0;
  bool directed_ = true;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> original_ids_;

  std::vector<std::size_t> out_offset_{0};
  std::vector<NodeId> out_nodes_;
  std::vector<double> out_probs_;
  std::vector<std::size_t> in_offset_{0};
  std::vector<NodeId> in_nodes_;
  std::vector<double> in_probs_;
};

// Reads `src dst [prob]` lines; '#' lines and blank lines are skipped.
// Original ids are remapped to dense ids in order of first appearance.
// A repeated edge keeps its last occurrence; a warning is appended to
// `warnings`, or written to stderr when `warnings` is null.
SocialGraph load_edge_list(std::istream& in, bool directed,
                           std::vector<std::string>* warnings = nullptr);
SocialGraph load_edge_list_file(const std::string& path, bool directed,
                                std::vector<std::string>* warnings = nullptr);

// Inverse of load_edge_list with original ids. Assigned probabilities are
// written with 17 significant digits; unassigned ones are omitted.
void write_edge_list(std::ostream& out, const SocialGraph& graph);

struct UniformProbability {
  double p = 0.1;
};
struct Trivalency {};
using ProbabilityScheme = std::variant<UniformProbability, Trivalency>;

inline constexpr double kTrivalencyValues[3] = {0.1, 0.01, 0.001};

// Draws follow input-edge order, so the result depends only on the seed
// and the file.
SocialGraph assign_probabilities(const SocialGraph& graph, const ProbabilityScheme& scheme,
                                 std::uint64_t seed);

// Per-node selection cost and target benefit.
struct NodeEconomics {
  std::vector<double> cost;
  std::vector<double> benefit;
  std::vector<NodeId> targets;  // ascending

  // Targets are the nodes with positive benefit.
  static NodeEconomics from_vectors(std::vector<double> cost, std::vector<double> benefit);

  // Throws std::invalid_argument when an invariant is broken.
  void validate(NodeId node_count) const;
  double total_benefit() const;
};

enum class CostScheme { kRandomUniform, kDegreeProportional };
enum class BenefitScheme { kRandomUniform, kUnit };

struct EconomicsScheme {
  CostScheme cost = CostScheme::kRandomUniform;
  BenefitScheme benefit = BenefitScheme::kRandomUniform;
  double target_fraction = 0.2;
  double cost_lo = 1.0;
  double cost_hi = 50.0;
  double benefit_lo = 50.0;
  double benefit_hi = 100.0;
  // Floor for degree-proportional costs of isolated nodes.
  double min_cost = 1e-6;

  void validate() const;
};

// Targets: floor(fraction * n) nodes drawn without replacement. Random
// costs/benefits are uniform on their intervals; degree-proportional cost
// is n * deg(u) / sum_v deg(v), i.e. n deg / 2m, with unit benefits.
NodeEconomics assign_economics(const SocialGraph& graph, const EconomicsScheme& scheme,
                               std::uint64_t seed);

}  // namespace ebm
