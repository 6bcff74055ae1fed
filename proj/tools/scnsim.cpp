#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scn/channel.hpp"
#include "scn/golden_example.hpp"
#include "scn/harness.hpp"
#include "scn/kernels.hpp"
#include "scn/matching.hpp"
#include "scn/preference.hpp"
#include "scn/rng.hpp"

namespace {

using nlohmann::ordered_json;

struct CommonOpts {
  std::string config_path;
  std::string out_stem = "scn_out";
  std::uint64_t seed = 0;
  int runs = 0;
  int parallel = 0;  // 0 = one thread per core
  std::vector<std::string> overrides;
  bool trace = false;

  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& o, int default_runs) {
  cmd->add_option("--config", o.config_path, "JSON scenario config (or a results file)");
  cmd->add_option("--out", o.out_stem, "output stem; writes <stem>.csv and <stem>.json")
      ->capture_default_str();
  o.seed_opt = cmd->add_option("--seed", o.seed, "master seed (overrides config rng_seed)");
  o.runs = default_runs;
  cmd->add_option("--runs", o.runs, "Monte Carlo runs per cell")->capture_default_str();
  cmd->add_option("--set", o.overrides, "config override KEY=VALUE (repeatable)");
  cmd->add_option("--parallel", o.parallel, "worker threads (0 = all cores)")
      ->capture_default_str();
  cmd->add_flag("--trace", o.trace, "record per-run matchings and rounds in the JSON output");
}

scn::ScenarioConfig resolve_config(const CommonOpts& o, std::uint64_t& master_seed) {
  scn::ScenarioConfig cfg;
  if (!o.config_path.empty()) cfg = scn::ScenarioConfig::from_json_file(o.config_path);
  for (const std::string& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects KEY=VALUE, got: " + kv);
    cfg.apply_override(kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  master_seed = (o.seed_opt != nullptr && o.seed_opt->count() > 0) ? o.seed : cfg.rng_seed;
  return cfg;
}

std::string strip_suffix(std::string stem) {
  for (const char* suf : {".csv", ".json"}) {
    const std::string s(suf);
    if (stem.size() > s.size() && stem.compare(stem.size() - s.size(), s.size(), s) == 0)
      return stem.substr(0, stem.size() - s.size());
  }
  return stem;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {  // a:b:step range
    int a = 0, b = 0, step = 1;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    ss >> a >> c1 >> b;
    if (ss >> c2 >> step) {
    }
    if (c1 != ':' || step <= 0 || b < a)
      throw std::invalid_argument("bad range: " + text);
    for (int v = a; v <= b; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw std::invalid_argument("empty list: " + text);
  return out;
}

const char* class_name(scn::Priority p) {
  switch (p) {
    case scn::Priority::First:
      return "first";
    case scn::Priority::Second:
      return "second";
    case scn::Priority::Third:
      return "third";
  }
  return "?";
}

ordered_json trace_to_json(const scn::RunResult& res) {
  ordered_json j;
  j["assignment"] = res.matching.user_to_bs;
  j["rounds"] = res.rounds;
  j["proposals_sent"] = res.proposals_sent;
  ordered_json rounds = ordered_json::array();
  for (const scn::RoundRecord& rec : res.trace) {
    ordered_json r;
    r["round"] = rec.round;
    ordered_json props = ordered_json::array();
    for (const auto& p : rec.proposals)
      props.push_back({{"user", p.user}, {"bs", p.bs}, {"class", class_name(p.cls)}});
    r["proposals"] = std::move(props);
    ordered_json acc = ordered_json::array();
    for (const auto& [m, l] : rec.accepted) acc.push_back({{"user", m}, {"bs", l}});
    r["accepted"] = std::move(acc);
    ordered_json rej = ordered_json::array();
    for (const auto& [m, l] : rec.rejected) rej.push_back({{"user", m}, {"bs", l}});
    r["rejected"] = std::move(rej);
    r["exhausted"] = rec.exhausted;
    rounds.push_back(std::move(r));
  }
  j["rounds_log"] = std::move(rounds);
  return j;
}

void print_records(const std::vector<scn::MetricsRecord>& records) {
  std::printf("%-5s %4s %3s %6s %12s %12s %12s %10s\n", "alg", "M", "L", "runs",
              "avg_utility", "worst_scbs", "unmatched", "avg_rounds");
  for (const auto& r : records) {
    std::printf("%-5s %4d %3d %6d %12.6f %12.6f %12.6f %10.3f\n", r.algorithm.c_str(),
                r.num_users, r.num_bs, r.runs, r.avg_utility, r.worst_scbs_rate,
                r.unmatched_fraction, r.avg_rounds);
  }
}

constexpr scn::AlgorithmId kAllAlgs[] = {scn::AlgorithmId::Pda, scn::AlgorithmId::Da,
                                         scn::AlgorithmId::Rssi};

// Per-run result storage for --trace; slots are preallocated so concurrent
// workers never touch the same element.
struct TraceStore {
  int num_algs = 0;
  std::vector<scn::RunResult> slots;

  TraceStore(int runs, int algs) : num_algs(algs), slots(static_cast<std::size_t>(runs) * algs) {}

  scn::TraceSink sink() {
    return [this](int run, scn::AlgorithmId alg, const scn::RunResult& res) {
      slots[static_cast<std::size_t>(run) * num_algs + static_cast<int>(alg)] = res;
    };
  }

  std::string to_json_text(int runs) const {
    ordered_json root;
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < runs; ++i) {
      ordered_json entry;
      entry["run_index"] = i;
      ordered_json results;
      for (int a = 0; a < num_algs; ++a) {
        results[scn::algorithm_name(static_cast<scn::AlgorithmId>(a))] =
            trace_to_json(slots[static_cast<std::size_t>(i) * num_algs + a]);
      }
      entry["results"] = std::move(results);
      arr.push_back(std::move(entry));
    }
    root["runs"] = std::move(arr);
    return root.dump();
  }
};

int cmd_simulate(const CommonOpts& opts) {
  std::uint64_t master = 0;
  const scn::ScenarioConfig cfg = resolve_config(opts, master);
  std::optional<TraceStore> store;
  scn::TraceSink sink;
  if (opts.trace) {
    store.emplace(opts.runs, 3);
    sink = store->sink();
  }
  const auto records = scn::run_scenario(cfg, kAllAlgs, opts.runs, master, opts.parallel,
                                         opts.trace ? &sink : nullptr, opts.trace);
  const std::string stem = strip_suffix(opts.out_stem);
  scn::write_metrics_csv(stem + ".csv", records, cfg, master);
  if (opts.trace) {
    const std::string extra = store->to_json_text(opts.runs);
    scn::write_metrics_json(stem + ".json", records, cfg, master, &extra);
  } else {
    scn::write_metrics_json(stem + ".json", records, cfg, master);
  }
  print_records(records);
  std::printf("wrote %s.csv and %s.json (kernels: %s)\n", stem.c_str(), stem.c_str(),
              scn::kernels::active_ops().name);
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& m_text, const std::string& l_text) {
  std::uint64_t master = 0;
  const scn::ScenarioConfig cfg = resolve_config(opts, master);
  const std::vector<int> m_values = parse_int_list(m_text);
  std::vector<int> l_values;
  if (l_text.empty()) {
    l_values.push_back(cfg.num_bs);
  } else {
    l_values = parse_int_list(l_text);
  }
  const auto records =
      scn::sweep(cfg, m_values, l_values, kAllAlgs, opts.runs, master, opts.parallel);
  const std::string stem = strip_suffix(opts.out_stem);
  scn::write_metrics_csv(stem + ".csv", records, cfg, master);
  scn::write_metrics_json(stem + ".json", records, cfg, master);
  print_records(records);
  std::printf("wrote %s.csv and %s.json (kernels: %s)\n", stem.c_str(), stem.c_str(),
              scn::kernels::active_ops().name);
  return 0;
}

std::string set_to_string(const std::vector<int>& users) {
  std::string s = "{";
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(users[i]);
  }
  return s + "}";
}

int cmd_example(const std::string& out_stem) {
  const scn::GoldenExample& ex = scn::golden_example();
  const scn::ChannelRealization real = scn::golden_realization();
  const scn::PreferenceProfile prof = scn::build_user_preferences(
      real.avg_rates, ex.config.num_bs, ex.config.num_users, ex.config.rate_threshold);

  std::printf("six-user worked example: %d BSs, quota %d, rate threshold %g\n",
              ex.config.num_bs, ex.config.quotas[0], ex.config.rate_threshold);
  std::printf("preference lists (best first):\n");
  for (int m = 0; m < ex.config.num_users; ++m) {
    std::printf("  u%d:", m);
    for (const int l : prof.user_lists[static_cast<std::size_t>(m)]) std::printf(" %d", l);
    std::printf("\n");
  }

  const scn::RunResult pda = scn::run_pda(prof, real, ex.config);
  const scn::RunResult da = scn::run_da(prof, real, ex.config);
  const scn::RunResult rssi = scn::run_rssi(real, ex.config);

  auto print_one = [&](const char* name, const scn::RunResult& res) {
    std::printf("%-4s:", name);
    for (int l = 0; l < ex.config.num_bs; ++l) {
      std::printf(" BS%d=%s", l,
                  set_to_string(res.matching.bs_to_users[static_cast<std::size_t>(l)]).c_str());
    }
    std::printf(" unmatched: %d rounds: %d\n",
                static_cast<int>(res.matching.unmatched_users().size()), res.rounds);
  };
  print_one("pda", pda);
  print_one("da", da);
  print_one("rssi", rssi);

  const scn::StaticPriorityComparator pda_cmp(prof, real, ex.config);
  const auto blocks = scn::blocking_pairs(pda.matching, prof, pda_cmp, ex.config.quotas);
  std::printf("pda blocking pairs: %d\n", static_cast<int>(blocks.size()));

  bool ok = pda.matching.user_to_bs == ex.pda_assignment &&
            da.matching.user_to_bs == ex.da_assignment &&
            rssi.matching.user_to_bs == ex.rssi_assignment && blocks.empty();
  std::printf("expected outcomes reproduced: %s\n", ok ? "yes" : "NO");

  if (!out_stem.empty()) {
    const std::string stem = strip_suffix(out_stem);
    ordered_json j;
    j["config"] = ordered_json::parse(ex.config.to_json_text());
    j["user_lists"] = prof.user_lists;
    j["pda"] = trace_to_json(pda);
    j["da"] = trace_to_json(da);
    j["rssi"] = trace_to_json(rssi);
    j["pda_blocking_pairs"] = blocks.size();
    std::ofstream out(stem + ".json");
    if (!out) throw std::runtime_error("cannot write " + stem + ".json");
    out << j.dump(2) << "\n";
    std::printf("wrote %s.json\n", stem.c_str());
  }
  return ok ? 0 : 4;
}

int cmd_audit(const std::string& in_path, int parallel) {
  (void)parallel;
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  ordered_json j = ordered_json::parse(in);
  if (!j.contains("config") || !j.contains("runs"))
    throw std::runtime_error(in_path + " is not a trace file (need config + runs)");
  const scn::ScenarioConfig cfg =
      scn::ScenarioConfig::from_json_text(j.at("config").dump());
  const std::uint64_t master = j.at("master_seed").get<std::uint64_t>();
  const std::uint64_t cell_key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cfg.num_users)) << 32) |
      static_cast<std::uint64_t>(static_cast<std::uint32_t>(cfg.num_bs));

  int unstable = 0;
  int invalid = 0;
  for (const auto& entry : j.at("runs")) {
    const int run = entry.at("run_index").get<int>();
    const std::uint64_t run_seed = scn::derive_seed(master, cell_key,
                                                    static_cast<std::uint64_t>(run));
    scn::RandomStream topo_stream(scn::derive_seed(run_seed, 1));
    scn::RandomStream gains_stream(scn::derive_seed(run_seed, 2));
    const scn::Topology topo = scn::generate_topology(cfg, topo_stream);
    const scn::ChannelRealization real = scn::build_realization(topo, cfg, gains_stream);
    const scn::PreferenceProfile prof = scn::build_user_preferences(
        real.avg_rates, cfg.num_bs, cfg.num_users, cfg.rate_threshold);
    const scn::RateComparator rate_cmp(prof);
    const scn::StaticPriorityComparator prio_cmp(prof, real, cfg);

    for (const auto& [alg, data] : entry.at("results").items()) {
      const std::vector<int> assignment = data.at("assignment").get<std::vector<int>>();
      scn::Matching mu = scn::matching_from_assignment(assignment, cfg.num_bs);
      const auto report = scn::validate(mu, cfg.quotas);
      if (!report.ok) {
        ++invalid;
        std::printf("run %d %s: INVALID (condition %d: %s)\n", run, alg.c_str(),
                    report.condition, report.detail.c_str());
        continue;
      }
      const scn::BsComparator& cmp =
          (alg == "pda") ? static_cast<const scn::BsComparator&>(prio_cmp) : rate_cmp;
      const auto blocks = scn::blocking_pairs(mu, prof, cmp, cfg.quotas);
      if (blocks.empty()) {
        std::printf("run %d %s: stable\n", run, alg.c_str());
      } else {
        ++unstable;
        std::printf("run %d %s: UNSTABLE (%zu blocking pairs)\n", run, alg.c_str(),
                    blocks.size());
        for (const auto& b : blocks) {
          if (b.displaced == scn::kUnmatched) {
            std::printf("  user %d -> BS %d (free slot)\n", b.user, b.bs);
          } else {
            std::printf("  user %d -> BS %d (displaces user %d)\n", b.user, b.bs,
                        b.displaced);
          }
        }
      }
    }
  }
  if (invalid > 0) return 4;
  return unstable > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Downlink user association simulator for two-tier small cell networks"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo comparison on one cell");
  add_common(sim, sim_opts, 100);

  CommonOpts sweep_opts;
  std::string m_text = "20:80:10";
  std::string l_text;
  CLI::App* sw = app.add_subcommand("sweep", "Monte Carlo comparison over a population grid");
  add_common(sw, sweep_opts, 1000);
  sw->add_option("--m-values", m_text, "user counts, comma list or a:b:step")
      ->capture_default_str();
  sw->add_option("--l-values", l_text, "BS counts, comma list or a:b:step (default: config num_bs)");

  std::string example_out;
  CLI::App* exa = app.add_subcommand("example-fig2", "replay the bundled six-user worked example");
  exa->add_option("--out", example_out, "also write <stem>.json with the full traces");

  std::string audit_in;
  int audit_parallel = 0;
  CLI::App* aud = app.add_subcommand("audit", "re-check stability of matchings in a trace file");
  aud->add_option("--in", audit_in, "JSON written by simulate --trace")->required();
  aud->add_option("--parallel", audit_parallel, "worker threads (unused, audits are sequential)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim_opts);
    if (sw->parsed()) return cmd_sweep(sweep_opts, m_text, l_text);
    if (exa->parsed()) return cmd_example(example_out);
    if (aud->parsed()) return cmd_audit(audit_in, audit_parallel);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
