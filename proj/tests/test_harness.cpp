#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "scn/harness.hpp"
#include "scn/rng.hpp"

using namespace scn;

namespace {

const std::vector<AlgorithmId> kAll = {AlgorithmId::Pda, AlgorithmId::Da,
                                       AlgorithmId::Rssi};

ScenarioConfig tiny_config(int M, int L) {
  ScenarioConfig cfg;
  cfg.num_users = M;
  cfg.num_bs = L;
  cfg.num_subcarriers = 4;
  cfg.quotas.assign(static_cast<std::size_t>(L), 2);
  return cfg;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("utility_histogram puts uniform draws evenly across bins") {
  RandomStream rs(31);
  std::vector<double> vals(100000);
  for (double& v : vals) v = rs.uniform01();
  const auto hist = utility_histogram(vals, 1.0);
  double total = 0.0;
  for (const double h : hist) {
    CHECK(h == doctest::Approx(0.1).epsilon(0.1));
    CHECK(std::abs(h - 0.1) < 0.01);
    total += h;
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("utility_histogram edge behavior") {
  // The max itself belongs to the top bin.
  const std::vector<double> vals = {0.0, 0.05, 2.0, 1.999, 0.2001};
  const auto hist = utility_histogram(vals, 2.0);
  CHECK(hist[0] == doctest::Approx(0.4));  // 0.0 and 0.05
  CHECK(hist[1] == doctest::Approx(0.2));  // 0.2001
  CHECK(hist[9] == doctest::Approx(0.4));  // 2.0 and 1.999

  // All-zero utilities collapse into bin 0.
  const std::vector<double> zeros = {0.0, 0.0};
  const auto hz = utility_histogram(zeros, 0.0);
  CHECK(hz[0] == doctest::Approx(1.0));

  // Empty input: all-zero histogram.
  const auto he = utility_histogram({}, 1.0);
  for (const double h : he) CHECK(h == 0.0);
}

TEST_CASE("run_scenario is reproducible and independent of thread count") {
  const ScenarioConfig cfg = tiny_config(12, 3);
  const auto serial = run_scenario(cfg, kAll, 16, 42, 1);
  const auto threaded = run_scenario(cfg, kAll, 16, 42, 4);
  const auto automatic = run_scenario(cfg, kAll, 16, 42, 0);
  REQUIRE(serial.size() == 3);
  CHECK(serial == threaded);
  CHECK(serial == automatic);

  const auto again = run_scenario(cfg, kAll, 16, 42, 2);
  CHECK(serial == again);

  const auto other_seed = run_scenario(cfg, kAll, 16, 43, 1);
  CHECK(serial != other_seed);
}

TEST_CASE("algorithms see paired realizations: a lone run equals the joint run") {
  const ScenarioConfig cfg = tiny_config(10, 3);
  const std::vector<AlgorithmId> only_pda = {AlgorithmId::Pda};
  const auto lone = run_scenario(cfg, only_pda, 12, 7, 2);
  const auto joint = run_scenario(cfg, kAll, 12, 7, 2);
  REQUIRE(lone.size() == 1);
  // Histograms share their scale across compared algorithms, so compare the
  // scale-free fields.
  CHECK(lone[0].avg_utility == joint[0].avg_utility);
  CHECK(lone[0].stderr_utility == joint[0].stderr_utility);
  CHECK(lone[0].worst_scbs_rate == joint[0].worst_scbs_rate);
  CHECK(lone[0].unmatched_fraction == joint[0].unmatched_fraction);
  CHECK(lone[0].avg_rounds == joint[0].avg_rounds);
}

TEST_CASE("sweep cells equal standalone run_scenario calls") {
  const ScenarioConfig base = tiny_config(6, 2);
  const std::vector<int> ms = {4, 8};
  const std::vector<int> ls = {2, 3};
  const auto records = sweep(base, ms, ls, kAll, 5, 99, 2);
  REQUIRE(records.size() == 2 * 2 * 3);

  // Cell order: L-major, then M, then algorithm.
  CHECK(records[0].num_bs == 2);
  CHECK(records[0].num_users == 4);
  CHECK(records[3].num_users == 8);
  CHECK(records[6].num_bs == 3);

  const auto cell = run_scenario(base.resized(8, 3), kAll, 5, 99, 1);
  for (int a = 0; a < 3; ++a) {
    CHECK(records[9 + static_cast<std::size_t>(a)] == cell[static_cast<std::size_t>(a)]);
  }
}

TEST_CASE("metrics are sane on a populated cell") {
  const ScenarioConfig cfg = tiny_config(14, 3);
  const auto records = run_scenario(cfg, kAll, 20, 5, 0);
  for (const auto& r : records) {
    CHECK(r.runs == 20);
    CHECK(r.avg_utility >= 0.0);
    CHECK(r.unmatched_fraction >= 0.0);
    CHECK(r.unmatched_fraction <= 1.0);
    CHECK(r.avg_rounds >= 1.0);
    double mass = 0.0;
    for (const double h : r.histogram) mass += h;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("an empty population yields zeroed metrics") {
  const ScenarioConfig cfg = tiny_config(0, 2);
  const auto records = run_scenario(cfg, kAll, 3, 1, 1);
  for (const auto& r : records) {
    CHECK(r.avg_utility == 0.0);
    CHECK(r.unmatched_fraction == 0.0);
    CHECK(r.avg_rounds == 0.0);
    for (const double h : r.histogram) CHECK(h == 0.0);
  }
}

TEST_CASE("csv and json outputs are written and the config round-trips") {
  const ScenarioConfig cfg = tiny_config(5, 2);
  const auto records = run_scenario(cfg, kAll, 4, 77, 1);
  const auto csv_path = temp_file("scn_test_out.csv");
  const auto json_path = temp_file("scn_test_out.json");
  write_metrics_csv(csv_path.string(), records, cfg, 77);
  write_metrics_json(json_path.string(), records, cfg, 77);

  std::ifstream csv(csv_path);
  REQUIRE(csv.good());
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("# config: ", 0) == 0);
  std::getline(csv, line);
  CHECK(line == "# master_seed: 77");
  std::getline(csv, line);
  CHECK(line ==
        "algorithm,M,L,runs,avg_utility,stderr_utility,worst_scbs_rate,stderr_worst,"
        "unmatched_fraction,avg_rounds,hist_0,hist_1,hist_2,hist_3,hist_4,hist_5,"
        "hist_6,hist_7,hist_8,hist_9");
  int rows = 0;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 3);

  // The JSON mirror doubles as a config file.
  const ScenarioConfig back = ScenarioConfig::from_json_file(json_path.string());
  CHECK(back.num_users == cfg.num_users);
  CHECK(back.num_bs == cfg.num_bs);
  CHECK(back.quotas == cfg.quotas);
  CHECK(back.rng_seed == 77);

  std::filesystem::remove(csv_path);
  std::filesystem::remove(json_path);
}

TEST_CASE("trace sink observes every run exactly once per algorithm") {
  const ScenarioConfig cfg = tiny_config(6, 2);
  std::vector<int> counts(8 * 3, 0);
  TraceSink sink = [&](int run, AlgorithmId alg, const RunResult& res) {
    counts[static_cast<std::size_t>(run) * 3 + static_cast<int>(alg)] += 1;
    CHECK(res.matching.user_to_bs.size() == 6);
  };
  run_scenario(cfg, kAll, 8, 3, 2, &sink);
  for (const int c : counts) CHECK(c == 1);
}
