#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "scn/algorithms.hpp"
#include "scn/config.hpp"

namespace scn {

// Aggregated Monte Carlo metrics for one (algorithm, M, L) cell.
struct MetricsRecord {
  std::string algorithm;
  int num_users = 0;  // M
  int num_bs = 0;     // L
  int runs = 0;
  double avg_utility = 0.0;     // mean over runs of the per-user mean achieved rate
  double stderr_utility = 0.0;  // standard error of that per-run mean
  double worst_scbs_rate = 0.0;  // mean over runs of the weakest small cell's mean rate
  double stderr_worst = 0.0;
  double unmatched_fraction = 0.0;
  double avg_rounds = 0.0;
  std::array<double, 10> histogram{};  // fraction of user utilities per bin

  bool operator==(const MetricsRecord&) const = default;
};

// Fractions of values in 10 equal-width bins over [0, max_utility]; the top
// edge lands in the last bin. A non-positive max puts all mass in bin 0.
std::array<double, 10> utility_histogram(std::span<const double> utilities,
                                         double max_utility);

// Observes every algorithm run; may be called concurrently for distinct
// run indices.
using TraceSink = std::function<void(int run_index, AlgorithmId alg, const RunResult&)>;

// Runs num_runs independent realizations of one cell and aggregates per
// algorithm. All algorithms inside one run see the same channel realization;
// run i is seeded as derive(master, (M<<32)|L, i), so results are invariant
// to thread count and to which sweep produced the cell. parallel <= 0 means
// one thread per hardware core.
std::vector<MetricsRecord> run_scenario(const ScenarioConfig& cfg,
                                        std::span<const AlgorithmId> algorithms,
                                        int num_runs, std::uint64_t master_seed,
                                        int parallel = 1,
                                        const TraceSink* sink = nullptr,
                                        bool trace_rounds = false);

// Cross product of population sizes, cells in l_values-major order.
std::vector<MetricsRecord> sweep(const ScenarioConfig& base, std::span<const int> m_values,
                                 std::span<const int> l_values,
                                 std::span<const AlgorithmId> algorithms, int num_runs,
                                 std::uint64_t master_seed, int parallel = 1);

// CSV with the resolved config and master seed embedded as '#' comments.
void write_metrics_csv(const std::string& path, std::span<const MetricsRecord> records,
                       const ScenarioConfig& cfg, std::uint64_t master_seed);

// JSON mirror of the CSV; extra_json (object, pre-serialized) is merged into
// the top level, which is how run traces ride along.
void write_metrics_json(const std::string& path, std::span<const MetricsRecord> records,
                        const ScenarioConfig& cfg, std::uint64_t master_seed,
                        const std::string* extra_json = nullptr);

}  // namespace scn
