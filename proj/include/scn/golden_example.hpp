#pragma once

#include <vector>

#include "scn/channel.hpp"
#include "scn/config.hpp"
#include "scn/matching.hpp"

namespace scn {

// Hand-built six-user, three-cell instance on two subcarriers. The gains are
// chosen so the three algorithms split visibly: the priority-based run fills
// every slot, plain deferred acceptance strands one user, and the
// strongest-pilot rule strands two while leaving a cell empty.
struct GoldenExample {
  ScenarioConfig config;
  std::vector<double> gains;

  // Expected outcomes (assignment vectors, user index -> BS index or -1).
  std::vector<std::vector<int>> user_lists;
  std::vector<int> pda_assignment;
  std::vector<int> da_assignment;
  std::vector<int> rssi_assignment;
  int pda_rounds;
  int da_rounds;
};

const GoldenExample& golden_example();

ChannelRealization golden_realization();

Matching matching_from_assignment(const std::vector<int>& assignment, int num_bs);

}  // namespace scn
