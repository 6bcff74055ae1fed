#pragma once

#include <cstddef>
#include <vector>

#include "scn/config.hpp"
#include "scn/kernels.hpp"
#include "scn/rng.hpp"

namespace scn {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

// BS 0 sits at the area center; small cells and users are uniform over the
// square. Draw order: SCBS positions (x then y, ascending l), then users.
struct Topology {
  std::vector<Vec2> bs_positions;
  std::vector<Vec2> user_positions;
};

Topology generate_topology(const ScenarioConfig& cfg, RandomStream& stream);

// Channel gains h[l][j][m] = pathloss(d_lm) * X with X unit-mean exponential
// (Rayleigh amplitude => exponential power). Distances are floored at
// min_distance before the power-law. Draw order: l, then j, then m.
// Layout: gains[(l*N + j)*M + m].
std::vector<double> draw_channel_gains(const Topology& topo, const ScenarioConfig& cfg,
                                       RandomStream& stream);

// Gains plus the derived per-subcarrier SINR table and per-BS average rates.
struct ChannelRealization {
  int num_bs = 0;
  int num_subcarriers = 0;
  int num_users = 0;
  std::vector<double> gains;      // [(l*N + j)*M + m]
  std::vector<double> sinr;       // [(l*N + j)*M + m]
  std::vector<double> avg_rates;  // [l*M + m]

  double gain(int l, int j, int m) const {
    return gains[(static_cast<std::size_t>(l) * num_subcarriers + j) * num_users + m];
  }
  double sinr_at(int l, int j, int m) const {
    return sinr[(static_cast<std::size_t>(l) * num_subcarriers + j) * num_users + m];
  }
  double rate(int l, int m) const {
    return avg_rates[static_cast<std::size_t>(l) * num_users + m];
  }
  // gamma vector of user m at BS l across subcarriers
  std::vector<double> sinr_column(int l, int m) const;
};

ChannelRealization realization_from_gains(std::vector<double> gains,
                                          const ScenarioConfig& cfg,
                                          const kernels::Ops& ops = kernels::active_ops());

ChannelRealization build_realization(const Topology& topo, const ScenarioConfig& cfg,
                                     RandomStream& gains_stream,
                                     const kernels::Ops& ops = kernels::active_ops());

// Element-wise reference calculations. These reproduce the scalar kernel
// results bit-for-bit (same formula, same evaluation order).
double compute_sinr(const std::vector<double>& gains, const ScenarioConfig& cfg, int l,
                    int j, int m);
double subcarrier_rate(double bandwidth, double gamma);
double average_rate(const std::vector<double>& gains, const ScenarioConfig& cfg, int l,
                    int m);

}  // namespace scn
