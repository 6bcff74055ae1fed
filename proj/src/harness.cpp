#include "scn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "scn/channel.hpp"
#include "scn/preference.hpp"
#include "scn/rng.hpp"

namespace scn {

std::array<double, 10> utility_histogram(std::span<const double> utilities,
                                         double max_utility) {
  std::array<double, 10> hist{};
  if (utilities.empty()) return hist;
  for (const double u : utilities) {
    int bin = 0;
    if (max_utility > 0.0 && u > 0.0) {
      bin = static_cast<int>(u / max_utility * 10.0);
      if (bin > 9) bin = 9;
    }
    hist[static_cast<std::size_t>(bin)] += 1.0;
  }
  for (double& h : hist) h /= static_cast<double>(utilities.size());
  return hist;
}

namespace {

struct AlgSample {
  double mean_utility = 0.0;
  double worst_scbs = 0.0;
  double unmatched_fraction = 0.0;
  int rounds = 0;
  std::vector<double> utilities;  // per user, 0 when unmatched
};

AlgSample summarize_run(const RunResult& res, const ChannelRealization& real,
                        const ScenarioConfig& cfg) {
  const int M = cfg.num_users;
  const int L = cfg.num_bs;
  AlgSample s;
  s.rounds = res.rounds;
  s.utilities.resize(static_cast<std::size_t>(M), 0.0);
  double sum = 0.0;
  int matched = 0;
  for (int m = 0; m < M; ++m) {
    const int l = res.matching.user_to_bs[static_cast<std::size_t>(m)];
    if (l == kUnmatched) continue;
    const double r = real.rate(l, m);
    s.utilities[static_cast<std::size_t>(m)] = r;
    sum += r;
    ++matched;
  }
  s.mean_utility = M > 0 ? sum / M : 0.0;
  s.unmatched_fraction = M > 0 ? static_cast<double>(M - matched) / M : 0.0;

  double worst = 0.0;
  bool have_scbs = false;
  for (int l = 1; l < L; ++l) {
    const auto& held = res.matching.bs_to_users[static_cast<std::size_t>(l)];
    double cell = 0.0;
    if (!held.empty()) {
      for (const int m : held) cell += real.rate(l, m);
      cell /= static_cast<double>(held.size());
    }
    if (!have_scbs || cell < worst) {
      worst = cell;
      have_scbs = true;
    }
  }
  s.worst_scbs = have_scbs ? worst : 0.0;
  return s;
}

double mean_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double ss = 0.0;
  for (const double x : v) ss += (x - mu) * (x - mu);
  const double var = ss / static_cast<double>(v.size() - 1);
  return std::sqrt(var / static_cast<double>(v.size()));
}

}  // namespace

std::vector<MetricsRecord> run_scenario(const ScenarioConfig& cfg,
                                        std::span<const AlgorithmId> algorithms,
                                        int num_runs, std::uint64_t master_seed,
                                        int parallel, const TraceSink* sink,
                                        bool trace_rounds) {
  cfg.validate();
  if (num_runs < 1) throw std::invalid_argument("num_runs must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");

  const std::uint64_t cell_key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cfg.num_users)) << 32) |
      static_cast<std::uint64_t>(static_cast<std::uint32_t>(cfg.num_bs));

  std::vector<std::vector<AlgSample>> samples(static_cast<std::size_t>(num_runs));

  auto do_run = [&](int i) {
    const std::uint64_t run_seed = derive_seed(master_seed, cell_key,
                                               static_cast<std::uint64_t>(i));
    RandomStream topo_stream(derive_seed(run_seed, 1));
    RandomStream gains_stream(derive_seed(run_seed, 2));
    const Topology topo = generate_topology(cfg, topo_stream);
    const ChannelRealization real = build_realization(topo, cfg, gains_stream);
    const PreferenceProfile prof = build_user_preferences(
        real.avg_rates, cfg.num_bs, cfg.num_users, cfg.rate_threshold);

    auto& row = samples[static_cast<std::size_t>(i)];
    row.resize(algorithms.size());
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      RunResult res;
      switch (algorithms[a]) {
        case AlgorithmId::Pda:
          res = run_pda(prof, real, cfg, trace_rounds);
          break;
        case AlgorithmId::Da:
          res = run_da(prof, real, cfg, trace_rounds);
          break;
        case AlgorithmId::Rssi:
          res = run_rssi(real, cfg, trace_rounds);
          break;
      }
      row[a] = summarize_run(res, real, cfg);
      if (sink != nullptr) (*sink)(i, algorithms[a], res);
    }
  };

  int threads = parallel;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, num_runs);

  if (threads == 1) {
    for (int i = 0; i < num_runs; ++i) do_run(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (int i = next.fetch_add(1); i < num_runs; i = next.fetch_add(1)) do_run(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Shared histogram scale: the largest utility any compared algorithm
  // achieved on this run set.
  double u_max = 0.0;
  for (const auto& row : samples) {
    for (const auto& s : row) {
      for (const double u : s.utilities) u_max = std::max(u_max, u);
    }
  }

  std::vector<MetricsRecord> records;
  records.reserve(algorithms.size());
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    MetricsRecord rec;
    rec.algorithm = algorithm_name(algorithms[a]);
    rec.num_users = cfg.num_users;
    rec.num_bs = cfg.num_bs;
    rec.runs = num_runs;

    std::vector<double> mean_utils, worsts, unmatched, rounds;
    std::vector<double> pooled;
    mean_utils.reserve(samples.size());
    pooled.reserve(samples.size() * static_cast<std::size_t>(cfg.num_users));
    for (const auto& row : samples) {
      const AlgSample& s = row[a];
      mean_utils.push_back(s.mean_utility);
      worsts.push_back(s.worst_scbs);
      unmatched.push_back(s.unmatched_fraction);
      rounds.push_back(static_cast<double>(s.rounds));
      pooled.insert(pooled.end(), s.utilities.begin(), s.utilities.end());
    }
    rec.avg_utility = mean_of(mean_utils);
    rec.stderr_utility = stderr_of(mean_utils);
    rec.worst_scbs_rate = mean_of(worsts);
    rec.stderr_worst = stderr_of(worsts);
    rec.unmatched_fraction = mean_of(unmatched);
    rec.avg_rounds = mean_of(rounds);
    rec.histogram = utility_histogram(pooled, u_max);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<MetricsRecord> sweep(const ScenarioConfig& base, std::span<const int> m_values,
                                 std::span<const int> l_values,
                                 std::span<const AlgorithmId> algorithms, int num_runs,
                                 std::uint64_t master_seed, int parallel) {
  if (m_values.empty() || l_values.empty())
    throw std::invalid_argument("sweep needs at least one M and one L value");
  std::vector<MetricsRecord> out;
  for (const int l : l_values) {
    for (const int m : m_values) {
      const ScenarioConfig cell = base.resized(m, l);
      auto records = run_scenario(cell, algorithms, num_runs, master_seed, parallel);
      out.insert(out.end(), std::make_move_iterator(records.begin()),
                 std::make_move_iterator(records.end()));
    }
  }
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json record_to_json(const MetricsRecord& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = r.algorithm;
  j["M"] = r.num_users;
  j["L"] = r.num_bs;
  j["runs"] = r.runs;
  j["avg_utility"] = r.avg_utility;
  j["stderr_utility"] = r.stderr_utility;
  j["worst_scbs_rate"] = r.worst_scbs_rate;
  j["stderr_worst"] = r.stderr_worst;
  j["unmatched_fraction"] = r.unmatched_fraction;
  j["avg_rounds"] = r.avg_rounds;
  j["histogram"] = r.histogram;
  return j;
}

}  // namespace

void write_metrics_csv(const std::string& path, std::span<const MetricsRecord> records,
                       const ScenarioConfig& cfg, std::uint64_t master_seed) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# config: " << cfg.to_json_text() << "\n";
  out << "# master_seed: " << master_seed << "\n";
  out << "algorithm,M,L,runs,avg_utility,stderr_utility,worst_scbs_rate,stderr_worst,"
         "unmatched_fraction,avg_rounds";
  for (int b = 0; b < 10; ++b) out << ",hist_" << b;
  out << "\n";
  for (const MetricsRecord& r : records) {
    out << r.algorithm << ',' << r.num_users << ',' << r.num_bs << ',' << r.runs << ','
        << fmt_double(r.avg_utility) << ',' << fmt_double(r.stderr_utility) << ','
        << fmt_double(r.worst_scbs_rate) << ',' << fmt_double(r.stderr_worst) << ','
        << fmt_double(r.unmatched_fraction) << ',' << fmt_double(r.avg_rounds);
    for (const double h : r.histogram) out << ',' << fmt_double(h);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_metrics_json(const std::string& path, std::span<const MetricsRecord> records,
                        const ScenarioConfig& cfg, std::uint64_t master_seed,
                        const std::string* extra_json) {
  nlohmann::ordered_json j;
  j["config"] = nlohmann::ordered_json::parse(cfg.to_json_text());
  j["master_seed"] = master_seed;
  j["records"] = nlohmann::ordered_json::array();
  for (const MetricsRecord& r : records) j["records"].push_back(record_to_json(r));
  if (extra_json != nullptr) {
    nlohmann::ordered_json extra = nlohmann::ordered_json::parse(*extra_json);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace scn
