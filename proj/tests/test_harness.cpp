#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ebm/harness.hpp"
#include "ebm/selection.hpp"
#include "support.hpp"

using namespace ebm;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.graph_path = test::fixture("pa60.txt");
  config.budgets = {40.0, 120.0};
  config.samples = 200;
  config.reps = 3;
  config.record_timing = false;
  return config;
}

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

SocialGraph pa60() { return load_edge_list_file(test::fixture("pa60.txt"), false); }

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("algorithm names") {
    for (Algorithm a : kAllAlgorithms) CHECK(parse_algorithm(algorithm_name(a)) == a);
    CHECK(algorithm_name(Algorithm::kIgaip) == "igaip");
    CHECK(algorithm_name(Algorithm::kDegDis) == "degdis");
    CHECK_THROWS_AS(parse_algorithm("celf"), ConfigError);
    CHECK_THROWS_AS(parse_algorithm("IGAIP"), ConfigError);
  }

  TEST_CASE("default budget sweeps") {
    const auto random = default_budgets(EconomicsSetting::kRandom);
    REQUIRE(random.size() == 8);
    CHECK(random.front() == 2000.0);
    CHECK(random.back() == 16000.0);
    const auto degprop = default_budgets(EconomicsSetting::kDegreeProportional);
    REQUIRE(degprop.size() == 8);
    CHECK(degprop.front() == 100.0);
    CHECK(degprop.back() == 800.0);
    ExperimentConfig config;
    CHECK(config.budget_sweep() == random);
    config.budgets = {5.0};
    CHECK(config.budget_sweep() == std::vector<double>{5.0});
  }

  TEST_CASE("config validation") {
    auto broken = [](auto mutate) {
      ExperimentConfig c;
      mutate(c);
      return c;
    };
    CHECK_NOTHROW(ExperimentConfig{}.validate());
    CHECK_THROWS_AS(broken([](auto& c) { c.budgets = {100.0, -1.0}; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.budgets = {0.0}; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.algorithms.clear(); }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.samples = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.reps = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.threads = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.hop.hops = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.hop.alpha = 2.0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.target_fraction = 0.0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.probability = UniformProbability{1.5}; }).validate(),
                    ConfigError);
  }

  TEST_CASE("one budget, one algorithm, one row") {
    ExperimentConfig config = small_config();
    config.budgets = {30.0};
    config.algorithms = {Algorithm::kHbh};
    const auto rows = run_experiment(config, pa60());
    REQUIRE(rows.size() == 1);
    const ResultRow& r = rows[0];
    CHECK(r.dataset == "pa60");
    CHECK(r.algorithm == "hbh");
    CHECK(r.prob_setting == "U");
    CHECK(r.cost_setting == "R");
    CHECK(r.budget == 30.0);
    CHECK(r.spent <= 30.0);
    CHECK(r.seed_count > 0);
    CHECK(r.benefit_mean > 0.0);
    CHECK(r.benefit_std >= 0.0);
    CHECK(r.seconds == 0.0);
  }

  TEST_CASE("rows cover the budget x algorithm grid in order") {
    ExperimentConfig config = small_config();
    config.budgets = default_budgets(EconomicsSetting::kRandom);
    config.algorithms = {Algorithm::kIgaip, Algorithm::kHbh, Algorithm::kMaxDeg,
                         Algorithm::kDegDis, Algorithm::kSinDis};
    config.samples = 50;
    config.reps = 1;
    const auto rows = run_experiment(config, pa60());
    REQUIRE(rows.size() == 40);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].budget == config.budgets[i / 5]);
      CHECK(rows[i].algorithm == algorithm_name(config.algorithms[i % 5]));
      CHECK(rows[i].spent <= rows[i].budget);
      CHECK(rows[i].benefit_std == 0.0);  // single repetition
    }
  }

  TEST_CASE("same config twice gives identical CSV") {
    ExperimentConfig config = small_config();
    const std::string first = csv_of(run_experiment(config, pa60()));
    CHECK(first == csv_of(run_experiment(config, pa60())));
    config.threads = 4;
    CHECK(first == csv_of(run_experiment(config, pa60())));
    config.seed = 2;
    CHECK(first != csv_of(run_experiment(config, pa60())));
  }

  TEST_CASE("algorithms with equal seed sets report equal benefit") {
    // Every algorithm in a cell is scored on the same held-out samples.
    ExperimentConfig config = small_config();
    const auto rows = run_experiment(config, pa60());
    std::set<std::string> compared;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j)
        if (rows[i].budget == rows[j].budget && rows[i].seed_count == rows[j].seed_count &&
            rows[i].spent == rows[j].spent) {
          CHECK(rows[i].benefit_mean == rows[j].benefit_mean);
          compared.insert(rows[i].algorithm + "/" + rows[j].algorithm);
        }
    // IGAAG and IGAIP always agree, so at least that pair is compared.
    CHECK(compared.count("igaag/igaip") == 1);
  }

  TEST_CASE("held-out benefit differs from the selection estimate") {
    ExperimentConfig config = small_config();
    config.budgets = {120.0};
    config.algorithms = {Algorithm::kIgaip};
    config.reps = 1;
    const SocialGraph graph = assign_probabilities(pa60(), UniformProbability{0.1},
                                                   derive_seed(config.seed, 1));
    const auto rows = run_experiment(config, pa60());
    REQUIRE(rows.size() == 1);
    // A held-out estimate that happened to equal the in-sample one to all
    // 17 digits would mean the samples were shared.
    const NodeEconomics econ = assign_economics(graph, EconomicsScheme{}, derive_seed(config.seed, 2));
    const BenefitEstimator selection(graph, econ, {config.samples, derive_seed(config.seed, 3), 1});
    const auto picked = lazy_greedy_select(selection, econ, 120.0).seeds;
    CHECK(rows[0].seed_count == picked.size());
    CHECK(rows[0].benefit_mean != selection.estimate(picked));
  }

  TEST_CASE("settings codes") {
    ExperimentConfig config = small_config();
    config.budgets = {};
    config.algorithms = {Algorithm::kMaxDeg};
    config.probability = Trivalency{};
    config.economics = EconomicsSetting::kDegreeProportional;
    const auto rows = run_experiment(config, pa60());
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].prob_setting == "T");
    CHECK(rows[0].cost_setting == "D");
    CHECK(rows[0].budget == 100.0);
    CHECK(rows[7].budget == 800.0);
  }

  TEST_CASE("slow greedy is skipped on large graphs unless allowed") {
    const SocialGraph big(5001, {}, false);
    ExperimentConfig config;
    config.budgets = {10.0};
    config.algorithms = {Algorithm::kIgaag, Algorithm::kMaxDeg};
    config.samples = 2;
    config.reps = 1;
    config.record_timing = false;
    const auto rows = run_experiment(config, big);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].algorithm == "maxdeg");
    config.allow_slow_igaag = true;
    CHECK(run_experiment(config, big).size() == 2);
  }

  TEST_CASE("timing is recorded at microsecond resolution") {
    ExperimentConfig config = small_config();
    config.record_timing = true;
    config.algorithms = {Algorithm::kIgaip};
    for (const ResultRow& r : run_experiment(config, pa60())) {
      CHECK(r.seconds > 0.0);
      CHECK(r.seconds * 1e6 == doctest::Approx(std::round(r.seconds * 1e6)));
    }
  }

  TEST_CASE("CSV header and round trip") {
    const auto rows = run_experiment(small_config(), pa60());
    const std::string text = csv_of(rows);
    CHECK(text.substr(0, text.find('\n')) ==
          "dataset,algorithm,prob_setting,cost_setting,budget,seed_count,spent,benefit_mean,"
          "benefit_std,eval_count,seconds");
    std::istringstream in(text);
    CHECK(read_csv(in) == rows);

    ResultRow timed = rows[0];
    timed.seconds = 12.345678;
    std::ostringstream out;
    write_csv(out, std::vector<ResultRow>{timed});
    CHECK(out.str().find(",12.345678\n") != std::string::npos);
    std::istringstream back(out.str());
    CHECK(read_csv(back).at(0) == timed);
  }

  TEST_CASE("CSV reader rejects malformed input") {
    std::istringstream no_header("a,b\n");
    CHECK_THROWS_AS(read_csv(no_header), std::runtime_error);
    std::istringstream short_row(std::string(kCsvHeader) + "\nx,igaip,U,R,1,2,3\n");
    CHECK_THROWS_AS(read_csv(short_row), std::runtime_error);
    std::istringstream bad_number(std::string(kCsvHeader) + "\nx,igaip,U,R,1,2,3,4,5,6,7s\n");
    CHECK_THROWS_AS(read_csv(bad_number), std::runtime_error);
  }

  TEST_CASE("CSV file is written whole") {
    const auto dir = std::filesystem::temp_directory_path() / "ebm_harness_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "out.csv").string();
    ExperimentConfig config = small_config();
    config.out_path = path;
    const auto rows = run_experiment(config);
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::ifstream in(path);
    CHECK(read_csv(in) == rows);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("missing graph file is a runtime error") {
    ExperimentConfig config = small_config();
    config.graph_path = "/nonexistent/graph.txt";
    CHECK_THROWS_AS(run_experiment(config), std::runtime_error);
  }

  TEST_CASE("synthetic random graphs") {
    const auto edges = generate_synthetic(SyntheticKind::kRandom, 100, 10.0, 4);
    CHECK(edges.size() == 500);
    std::set<std::pair<NodeId, NodeId>> distinct(edges.begin(), edges.end());
    CHECK(distinct.size() == 500);
    for (const auto& [a, b] : edges) {
      CHECK(a < b);
      CHECK(b < 100);
    }
    CHECK(generate_synthetic(SyntheticKind::kRandom, 100, 10.0, 4) == edges);
    CHECK(generate_synthetic(SyntheticKind::kRandom, 100, 10.0, 5) != edges);
    CHECK(generate_synthetic(SyntheticKind::kRandom, 1, 10.0, 4).empty());
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::kRandom, 10, 20.0, 4), ConfigError);
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::kRandom, 0, 2.0, 4), ConfigError);
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::kRandom, 10, -1.0, 4), ConfigError);
  }

  TEST_CASE("synthetic preferential attachment") {
    const auto edges = generate_synthetic(SyntheticKind::kPreferential, 1000, 4, 7);
    CHECK(edges.size() == 10 + 995 * 4);
    std::set<std::pair<NodeId, NodeId>> distinct(edges.begin(), edges.end());
    CHECK(distinct.size() == edges.size());
    // Heavy tail: the best-connected node far exceeds the mean degree of 8.
    std::vector<int> degree(1000, 0);
    for (const auto& [a, b] : edges) ++degree[a], ++degree[b];
    CHECK(*std::max_element(degree.begin(), degree.end()) > 40);
    CHECK(*std::min_element(degree.begin(), degree.end()) >= 4);
    CHECK(generate_synthetic(SyntheticKind::kPreferential, 1, 4, 7).empty());
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::kPreferential, 10, 0, 7), ConfigError);
    CHECK_THROWS_AS(generate_synthetic(SyntheticKind::kPreferential, 10, 2.5, 7), ConfigError);

    // The bundled fixture came from this generator.
    std::ostringstream out;
    write_synthetic(out, SyntheticKind::kPreferential, 1000, 4, 7);
    std::ifstream file(test::fixture("pa1000.txt"));
    std::stringstream bundled;
    bundled << file.rdbuf();
    CHECK(out.str() == bundled.str());
  }

  TEST_CASE("synthetic output loads as a graph") {
    std::stringstream out;
    write_synthetic(out, SyntheticKind::kRandom, 50, 6, 1);
    const SocialGraph g = load_edge_list(out, false);
    CHECK(g.input_edges().size() == 150);
    CHECK(g.node_count() <= 50);
  }
}
