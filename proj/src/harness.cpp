#include "ebm/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "ebm/baselines.hpp"
#include "ebm/diffusion.hpp"
#include "ebm/rng.hpp"
#include "ebm/selection.hpp"

namespace ebm {

namespace {

// Sub-streams of the master seed.
constexpr std::uint64_t kProbabilityStream = 1;
constexpr std::uint64_t kEconomicsStream = 2;
constexpr std::uint64_t kSelectionStream = 3;
constexpr std::uint64_t kHeldOutStream = 4;

constexpr NodeId kSlowGreedyNodeLimit = 5000;

struct AlgorithmName {
  Algorithm algorithm;
  std::string_view name;
};
constexpr AlgorithmName kNames[] = {
    {Algorithm::kIgaag, "igaag"},   {Algorithm::kIgaip, "igaip"},
    {Algorithm::kHbh, "hbh"},       {Algorithm::kMaxDeg, "maxdeg"},
    {Algorithm::kDegDis, "degdis"}, {Algorithm::kSinDis, "sindis"},
};

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(const std::string& field) {
  std::size_t used = 0;
  const double x = std::stod(field, &used);
  if (used != field.size()) throw std::runtime_error("bad number \"" + field + "\"");
  return x;
}

std::size_t parse_count(const std::string& field) {
  std::size_t used = 0;
  const unsigned long long x = std::stoull(field, &used);
  if (used != field.size()) throw std::runtime_error("bad count \"" + field + "\"");
  return static_cast<std::size_t>(x);
}

std::string dataset_name(const ExperimentConfig& config) {
  std::string name = config.dataset;
  if (name.empty())
    name = config.graph_path.empty() ? "graph"
                                     : std::filesystem::path(config.graph_path).stem().string();
  for (char& c : name)
    if (c == ',' || c == '\n' || c == '\r') c = '_';
  return name;
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  for (const auto& entry : kNames)
    if (entry.algorithm == algorithm) return entry.name;
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& entry : kNames)
    if (entry.name == name) return entry.algorithm;
  throw ConfigError("unknown algorithm \"" + std::string(name) + "\"");
}

std::vector<double> default_budgets(EconomicsSetting setting) {
  std::vector<double> budgets;
  if (setting == EconomicsSetting::kRandom)
    for (int b = 2000; b <= 16000; b += 2000) budgets.push_back(b);
  else
    for (int b = 100; b <= 800; b += 100) budgets.push_back(b);
  return budgets;
}

std::vector<double> ExperimentConfig::budget_sweep() const {
  return budgets.empty() ? default_budgets(economics) : budgets;
}

void ExperimentConfig::validate() const {
  for (double b : budgets)
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("budgets must be positive");
  if (algorithms.empty()) throw ConfigError("no algorithms selected");
  if (samples < 1) throw ConfigError("sample count must be at least 1");
  if (reps < 1) throw ConfigError("evaluation repetitions must be at least 1");
  if (threads < 1) throw ConfigError("thread count must be at least 1");
  if (const auto* u = std::get_if<UniformProbability>(&probability))
    if (!(u->p > 0.0 && u->p <= 1.0)) throw ConfigError("uniform probability must lie in (0,1]");
  if (!(target_fraction > 0.0 && target_fraction <= 1.0))
    throw ConfigError("target fraction must lie in (0,1]");
  try {
    hop.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const SocialGraph& raw) {
  config.validate();
  const std::uint64_t seed = config.seed;
  const SocialGraph graph =
      assign_probabilities(raw, config.probability, derive_seed(seed, kProbabilityStream));

  EconomicsScheme scheme;
  scheme.target_fraction = config.target_fraction;
  if (config.economics == EconomicsSetting::kDegreeProportional) {
    scheme.cost = CostScheme::kDegreeProportional;
    scheme.benefit = BenefitScheme::kUnit;
  }
  const NodeEconomics econ = assign_economics(graph, scheme, derive_seed(seed, kEconomicsStream));

  const BenefitEstimator selection(
      graph, econ, {config.samples, derive_seed(seed, kSelectionStream), config.threads});
  std::vector<std::unique_ptr<BenefitEstimator>> held_out;
  for (std::size_t k = 0; k < config.reps; ++k)
    held_out.push_back(std::make_unique<BenefitEstimator>(
        graph, econ,
        EstimatorOptions{config.samples, derive_seed(seed, kHeldOutStream, k), config.threads}));

  const bool uniform = std::holds_alternative<UniformProbability>(config.probability);
  const std::optional<double> discount_p =
      uniform ? std::optional<double>(std::get<UniformProbability>(config.probability).p)
              : std::nullopt;
  HopConfig hop = config.hop;
  hop.threads = config.threads;
  const GreedyOptions greedy{config.strict_greedy};

  const std::string dataset = dataset_name(config);
  std::vector<ResultRow> rows;
  for (double budget : config.budget_sweep()) {
    for (Algorithm algorithm : config.algorithms) {
      if (algorithm == Algorithm::kIgaag && graph.node_count() > kSlowGreedyNodeLimit &&
          !config.allow_slow_igaag) {
        std::cerr << "warning: skipping igaag on " << graph.node_count()
                  << " nodes (pass --allow-slow-igaag to run it)\n";
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      SelectionResult result;
      switch (algorithm) {
        case Algorithm::kIgaag:
          result = modified_greedy_select(selection, econ, budget, greedy);
          break;
        case Algorithm::kIgaip:
          result = lazy_greedy_select(selection, econ, budget, greedy);
          break;
        case Algorithm::kHbh:
          result = hop_based_select(graph, econ, hop, budget);
          break;
        case Algorithm::kMaxDeg:
          result = max_degree_select(graph, econ, budget);
          break;
        case Algorithm::kDegDis:
          result = degree_discount_select(graph, econ, budget, discount_p);
          break;
        case Algorithm::kSinDis:
          result = single_discount_select(graph, econ, budget);
          break;
      }
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

      std::vector<double> values;
      for (const auto& estimator : held_out) values.push_back(estimator->estimate(result.seeds));
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      const double stddev =
          values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;

      ResultRow row;
      row.dataset = dataset;
      row.algorithm = std::string(algorithm_name(algorithm));
      row.prob_setting = uniform ? "U" : "T";
      row.cost_setting = config.economics == EconomicsSetting::kRandom ? "R" : "D";
      row.budget = budget;
      row.seed_count = result.seeds.size();
      row.spent = result.spent;
      row.benefit_mean = mean;
      row.benefit_std = stddev;
      row.eval_count = result.evaluations;
      row.seconds = config.record_timing ? std::round(elapsed.count() * 1e6) / 1e6 : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const SocialGraph graph = load_edge_list_file(config.graph_path, config.directed);
  auto rows = run_experiment(config, graph);
  if (!config.out_path.empty()) write_csv_file(config.out_path, rows);
  return rows;
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << kCsvHeader << '\n';
  char seconds[32];
  for (const ResultRow& r : rows) {
    std::snprintf(seconds, sizeof seconds, "%.6f", r.seconds);
    out << r.dataset << ',' << r.algorithm << ',' << r.prob_setting << ',' << r.cost_setting
        << ',' << format_real(r.budget) << ',' << r.seed_count << ',' << format_real(r.spent)
        << ',' << format_real(r.benefit_mean) << ',' << format_real(r.benefit_std) << ','
        << r.eval_count << ',' << seconds << '\n';
  }
}

void write_csv_file(const std::string& path, std::span<const ResultRow> rows) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    write_csv(out, rows);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("missing or unexpected CSV header");
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 11)
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 11 fields");
    try {
      rows.push_back({f[0], f[1], f[2], f[3], parse_real(f[4]), parse_count(f[5]),
                      parse_real(f[6]), parse_real(f[7]), parse_real(f[8]), parse_count(f[9]),
                      parse_real(f[10])});
    } catch (const std::logic_error& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace ebm
