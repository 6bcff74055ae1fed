#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scn/channel.hpp"
#include "scn/config.hpp"
#include "scn/matching.hpp"
#include "scn/preference.hpp"

namespace scn {

enum class AlgorithmId { Pda, Da, Rssi };

const char* algorithm_name(AlgorithmId id);
std::optional<AlgorithmId> algorithm_from_name(const std::string& name);

// One proposal round as recorded in trace mode.
struct RoundRecord {
  struct Proposal {
    int user;
    int bs;
    Priority cls;
  };
  int round = 0;
  std::vector<Proposal> proposals;
  std::vector<std::pair<int, int>> accepted;  // (user, bs) holds after the round
  std::vector<std::pair<int, int>> rejected;
  std::vector<int> exhausted;  // users whose list ran out this round
};

struct RunResult {
  Matching matching;
  // Convergence depth: the largest number of proposals any single user had to
  // issue. Each user proposes to each acceptable BS at most once, so this is
  // bounded by the longest preference list and therefore by the BS count —
  // unlike the wall-clock sweep count, which displacement chains can stretch
  // past that bound. The trace still records one entry per synchronized sweep.
  int rounds = 0;
  std::int64_t proposals_sent = 0;
  std::vector<RoundRecord> trace;  // filled only when tracing
};

// Priority-based deferred acceptance: users propose down their lists; each
// BS pools holders and proposers, classifies them (last-chance users outrank
// the rest via the promotion boost) and keeps the best quota-many.
RunResult run_pda(const PreferenceProfile& profile, const ChannelRealization& realization,
                  const ScenarioConfig& cfg, bool trace = false);

// Classical deferred acceptance: identical round structure, but BSs rank by
// rate alone.
RunResult run_da(const PreferenceProfile& profile, const ChannelRealization& realization,
                 const ScenarioConfig& cfg, bool trace = false);

// One-shot strongest-pilot association: every user proposes to its highest
// mean-received-power BS; oversubscribed BSs keep the strongest quota-many,
// the rest stay unmatched.
RunResult run_rssi(const ChannelRealization& realization, const ScenarioConfig& cfg,
                   bool trace = false);

}  // namespace scn
