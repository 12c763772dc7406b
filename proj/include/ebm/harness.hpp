#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ebm/graph.hpp"
#include "ebm/hop_heuristic.hpp"

namespace ebm {

// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Algorithm { kIgaag, kIgaip, kHbh, kMaxDeg, kDegDis, kSinDis };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::kIgaag,  Algorithm::kIgaip,
                                               Algorithm::kHbh,    Algorithm::kMaxDeg,
                                               Algorithm::kDegDis, Algorithm::kSinDis};

std::string_view algorithm_name(Algorithm algorithm);
// Throws ConfigError for unknown names.
Algorithm parse_algorithm(std::string_view name);

enum class EconomicsSetting { kRandom, kDegreeProportional };

struct ExperimentConfig {
  std::string graph_path;
  std::string dataset;  // defaults to the graph file's stem
  bool directed = false;
  ProbabilityScheme probability = UniformProbability{0.1};
  EconomicsSetting economics = EconomicsSetting::kRandom;
  double target_fraction = 0.2;
  std::vector<double> budgets;  // empty: the sweep that matches `economics`
  std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
  std::size_t samples = 10000;
  HopConfig hop;
  std::uint64_t seed = 1;
  std::size_t reps = 5;
  int threads = 1;
  bool allow_slow_igaag = false;  // IGAAG is skipped above 5000 nodes otherwise
  bool strict_greedy = false;
  bool record_timing = true;
  std::string out_path;

  // Budget list actually swept.
  std::vector<double> budget_sweep() const;
  void validate() const;
};

// 2000, 4000, ..., 16000 for random costs; 100, ..., 800 for degree-proportional.
std::vector<double> default_budgets(EconomicsSetting setting);

struct ResultRow {
  std::string dataset;
  std::string algorithm;
  std::string prob_setting;  // U or T
  std::string cost_setting;  // R or D
  double budget = 0.0;
  std::size_t seed_count = 0;
  double spent = 0.0;
  double benefit_mean = 0.0;
  double benefit_std = 0.0;
  std::size_t eval_count = 0;
  double seconds = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "dataset,algorithm,prob_setting,cost_setting,budget,seed_count,spent,benefit_mean,"
    "benefit_std,eval_count,seconds";

// Runs every (budget, algorithm) cell on one shared assignment of
// probabilities, targets, costs and benefits derived from config.seed, and
// scores each seed set on `reps` held-out estimators whose samples are
// disjoint from the selection estimator's. Rows come out in (budget,
// algorithm) order.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const SocialGraph& graph);
// Loads config.graph_path first; writes config.out_path when set.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& out, std::span<const ResultRow> rows);
// Writes to a temporary file beside `path`, then renames it over `path`.
void write_csv_file(const std::string& path, std::span<const ResultRow> rows);
// Throws std::runtime_error on a malformed file.
std::vector<ResultRow> read_csv(std::istream& in);

enum class SyntheticKind { kRandom, kPreferential };

// kRandom: G(n, M) with M = round(n * param / 2) distinct undirected edges
// (param = average degree). kPreferential: Barabasi-Albert growth with
// param = edges per new node, seeded by a clique on the first param + 1
// nodes. Deterministic per seed. Throws ConfigError on invalid parameters.
std::vector<std::pair<NodeId, NodeId>> generate_synthetic(SyntheticKind kind, NodeId n,
                                                          double param, std::uint64_t seed);
void write_synthetic(std::ostream& out, SyntheticKind kind, NodeId n, double param,
                     std::uint64_t seed);

}  // namespace ebm
