#include "scn/golden_example.hpp"

namespace scn {

namespace {

GoldenExample make_example() {
  GoldenExample ex;
  ScenarioConfig& c = ex.config;
  c.num_bs = 3;
  c.num_users = 6;
  c.num_subcarriers = 2;
  c.subcarrier_bandwidth = 1.0;
  c.area_side = 1000.0;
  // Equal powers, unit noise: per-subcarrier transmit power is exactly 1.
  c.power_mbs = 2.0;
  c.power_scbs = 2.0;
  c.noise_variance = 1.0;
  c.rate_threshold = 0.05;
  c.quotas = {2, 2, 2};

  // gains[(l*2 + j)*6 + m]; row per (BS, subcarrier), column per user.
  ex.gains = {
      // BS0, subcarrier 0 / 1: strong for everyone; the common top choice.
      2.2,  1.8,  0.4,  1.1, 1.5,  1.2,   //
      2.2,  1.8,  1.4,  1.1, 1.5,  1.2,   //
      // BS1: second choice for most, but weak for users 0 and 1.
      0.02, 0.55, 3.3,  2.9, 0.30, 0.50,  //
      0.02, 0.55, 0.4,  0.1, 0.30, 0.50,  //
      // BS2: acceptable only to users 1 and 2; user 2's one-subcarrier spike
      // is neutralised by BS1 blasting the same subcarrier.
      0.02, 0.85, 3.0,  0.03, 0.02, 0.02,  //
      0.02, 0.85, 0.02, 0.03, 0.02, 0.02,  //
  };

  ex.user_lists = {{0}, {0, 2, 1}, {0, 1, 2}, {0, 1}, {0, 1}, {0, 1}};
  ex.pda_assignment = {0, 2, 2, 1, 0, 1};
  ex.da_assignment = {0, 2, 1, 1, 0, -1};
  ex.rssi_assignment = {0, 0, 1, 1, -1, -1};
  ex.pda_rounds = 3;
  ex.da_rounds = 2;
  return ex;
}

}  // namespace

const GoldenExample& golden_example() {
  static const GoldenExample ex = make_example();
  return ex;
}

ChannelRealization golden_realization() {
  const GoldenExample& ex = golden_example();
  return realization_from_gains(ex.gains, ex.config);
}

Matching matching_from_assignment(const std::vector<int>& assignment, int num_bs) {
  Matching mu(static_cast<int>(assignment.size()), num_bs);
  for (std::size_t m = 0; m < assignment.size(); ++m) {
    if (assignment[m] != kUnmatched) mu.assign(static_cast<int>(m), assignment[m]);
  }
  mu.canonicalize();
  return mu;
}

}  // namespace scn
