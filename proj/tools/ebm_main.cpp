// ebm: earned-benefit seed selection experiments.
//
//   ebm run --graph email.txt --prob uniform:0.1 --econ random --budgets 2000,4000 \
//           --algos igaip,hbh,maxdeg --out results.csv
//   ebm generate --kind preferential --n 1000 --param 4 --seed 7 --out pa.txt

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ebm/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

ebm::ProbabilityScheme parse_probability(const std::string& text) {
  if (text == "trivalency") return ebm::Trivalency{};
  if (text.rfind("uniform", 0) == 0) {
    if (text == "uniform") return ebm::UniformProbability{0.1};
    if (text.size() > 8 && text[7] == ':') {
      try {
        return ebm::UniformProbability{std::stod(text.substr(8))};
      } catch (const std::exception&) {
      }
    }
  }
  throw ebm::ConfigError("--prob expects uniform:P or trivalency, got \"" + text + "\"");
}

std::vector<double> parse_budgets(const std::string& list) {
  std::vector<double> budgets;
  for (const auto& item : split(list, ',')) {
    try {
      std::size_t used = 0;
      budgets.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ebm::ConfigError("invalid budget \"" + item + "\"");
    }
  }
  if (budgets.empty()) throw ebm::ConfigError("--budgets is empty");
  return budgets;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Earned benefit maximization under the Independent Cascade model"};
  app.require_subcommand(1);

  ebm::ExperimentConfig config;
  std::string prob = "uniform:0.1", econ = "random", budgets, algos, out;
  auto* run = app.add_subcommand("run", "Sweep budgets x algorithms and write a CSV");
  run->add_option("--graph", config.graph_path, "Edge list (src dst [prob])")->required();
  run->add_flag("--directed", config.directed, "Treat edges as directed");
  run->add_option("--dataset", config.dataset, "Dataset label (default: file stem)");
  run->add_option("--prob", prob, "uniform:P or trivalency")->capture_default_str();
  run->add_option("--econ", econ, "random or degprop")->capture_default_str();
  run->add_option("--target-frac", config.target_fraction, "Fraction of target nodes")
      ->capture_default_str();
  run->add_option("--budgets", budgets, "Comma-separated budgets (default: setting's sweep)");
  run->add_option("--algos", algos, "Comma-separated: igaag,igaip,hbh,maxdeg,degdis,sindis");
  run->add_option("--samples", config.samples, "Monte Carlo samples R")->capture_default_str();
  run->add_option("--hop", config.hop.hops, "Hop count h")->capture_default_str();
  run->add_option("--alpha", config.hop.alpha, "Cut-off probability")->capture_default_str();
  run->add_flag("--skip-zero", config.hop.skip_zero, "HBH stops at the first zero score");
  run->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  run->add_option("--reps", config.reps, "Held-out evaluation repetitions")->capture_default_str();
  run->add_option("--threads", config.threads, "Estimator worker threads")->capture_default_str();
  run->add_flag("--allow-slow-igaag", config.allow_slow_igaag, "Run IGAAG above 5000 nodes");
  run->add_flag("--strict-greedy", config.strict_greedy, "Greedy keeps adding zero-gain nodes");
  bool no_timing = false;
  run->add_flag("--no-timing", no_timing, "Write 0 in the seconds column");
  run->add_option("--out", out, "Output CSV (default: stdout)");

  std::string kind = "random", gen_out;
  ebm::NodeId n = 0;
  double param = 10.0;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("generate", "Write a synthetic undirected edge list");
  gen->add_option("--kind", kind, "random (param = avg degree) or preferential (param = m0)")
      ->capture_default_str();
  gen->add_option("--n", n, "Node count")->required();
  gen->add_option("--param", param, "Average degree or edges per new node")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*gen) {
      if (kind != "random" && kind != "preferential")
        throw ebm::ConfigError("--kind must be random or preferential");
      const auto k = kind == "random" ? ebm::SyntheticKind::kRandom
                                      : ebm::SyntheticKind::kPreferential;
      if (gen_out.empty()) {
        ebm::write_synthetic(std::cout, k, n, param, gen_seed);
      } else {
        std::ofstream file(gen_out);
        if (!file) throw std::runtime_error("cannot write " + gen_out);
        ebm::write_synthetic(file, k, n, param, gen_seed);
      }
      return 0;
    }

    config.probability = parse_probability(prob);
    if (econ == "random")
      config.economics = ebm::EconomicsSetting::kRandom;
    else if (econ == "degprop")
      config.economics = ebm::EconomicsSetting::kDegreeProportional;
    else
      throw ebm::ConfigError("--econ must be random or degprop");
    if (!budgets.empty()) config.budgets = parse_budgets(budgets);
    if (!algos.empty()) {
      config.algorithms.clear();
      for (const auto& name : split(algos, ','))
        config.algorithms.push_back(ebm::parse_algorithm(name));
    }
    config.record_timing = !no_timing;
    config.out_path = out;
    config.validate();

    const auto rows = ebm::run_experiment(config);
    if (out.empty()) ebm::write_csv(std::cout, rows);
    return 0;
  } catch (const ebm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
