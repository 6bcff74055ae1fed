#include "scn/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace scn {

double distance(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

Topology generate_topology(const ScenarioConfig& cfg, RandomStream& stream) {
  Topology topo;
  topo.bs_positions.resize(static_cast<std::size_t>(cfg.num_bs));
  topo.bs_positions[0] = {cfg.area_side / 2.0, cfg.area_side / 2.0};
  for (int l = 1; l < cfg.num_bs; ++l) {
    const double x = stream.uniform(0.0, cfg.area_side);
    const double y = stream.uniform(0.0, cfg.area_side);
    topo.bs_positions[static_cast<std::size_t>(l)] = {x, y};
  }
  topo.user_positions.resize(static_cast<std::size_t>(cfg.num_users));
  for (int m = 0; m < cfg.num_users; ++m) {
    const double x = stream.uniform(0.0, cfg.area_side);
    const double y = stream.uniform(0.0, cfg.area_side);
    topo.user_positions[static_cast<std::size_t>(m)] = {x, y};
  }
  return topo;
}

std::vector<double> draw_channel_gains(const Topology& topo, const ScenarioConfig& cfg,
                                       RandomStream& stream) {
  const int L = cfg.num_bs;
  const int N = cfg.num_subcarriers;
  const int M = cfg.num_users;
  std::vector<double> pathloss(static_cast<std::size_t>(L) * static_cast<std::size_t>(M));
  for (int l = 0; l < L; ++l) {
    for (int m = 0; m < M; ++m) {
      const double d =
          std::max(distance(topo.bs_positions[static_cast<std::size_t>(l)],
                            topo.user_positions[static_cast<std::size_t>(m)]),
                   cfg.min_distance);
      pathloss[static_cast<std::size_t>(l) * M + m] = std::pow(d, -cfg.pathloss_exponent);
    }
  }
  std::vector<double> gains(static_cast<std::size_t>(L) * N * M);
  std::size_t idx = 0;
  for (int l = 0; l < L; ++l) {
    for (int j = 0; j < N; ++j) {
      for (int m = 0; m < M; ++m) {
        gains[idx++] = pathloss[static_cast<std::size_t>(l) * M + m] * stream.exponential();
      }
    }
  }
  return gains;
}

std::vector<double> ChannelRealization::sinr_column(int l, int m) const {
  std::vector<double> col(static_cast<std::size_t>(num_subcarriers));
  for (int j = 0; j < num_subcarriers; ++j) col[static_cast<std::size_t>(j)] = sinr_at(l, j, m);
  return col;
}

ChannelRealization realization_from_gains(std::vector<double> gains,
                                          const ScenarioConfig& cfg,
                                          const kernels::Ops& ops) {
  const int L = cfg.num_bs;
  const int N = cfg.num_subcarriers;
  const int M = cfg.num_users;
  if (gains.size() != static_cast<std::size_t>(L) * N * M)
    throw std::invalid_argument("gains tensor has wrong size");
  ChannelRealization r;
  r.num_bs = L;
  r.num_subcarriers = N;
  r.num_users = M;
  r.gains = std::move(gains);
  r.sinr.resize(r.gains.size());
  r.avg_rates.resize(static_cast<std::size_t>(L) * M);
  const std::vector<double> power = cfg.subcarrier_powers();
  ops.sinr_table(r.gains.data(), power.data(), cfg.noise_variance, cfg.sinr_saturation,
                 L, N, M, r.sinr.data());
  ops.rate_table(r.sinr.data(), cfg.subcarrier_bandwidth, L, N, M, r.avg_rates.data());
  return r;
}

ChannelRealization build_realization(const Topology& topo, const ScenarioConfig& cfg,
                                     RandomStream& gains_stream, const kernels::Ops& ops) {
  return realization_from_gains(draw_channel_gains(topo, cfg, gains_stream), cfg, ops);
}

double compute_sinr(const std::vector<double>& gains, const ScenarioConfig& cfg, int l,
                    int j, int m) {
  const std::vector<double> power = cfg.subcarrier_powers();
  return kernels::sinr_element(gains.data(), power.data(), cfg.noise_variance,
                               cfg.sinr_saturation, cfg.num_bs, cfg.num_subcarriers,
                               cfg.num_users, l, j, m);
}

double subcarrier_rate(double bandwidth, double gamma) {
  return bandwidth * kernels::log2p1(gamma);
}

double average_rate(const std::vector<double>& gains, const ScenarioConfig& cfg, int l,
                    int m) {
  double acc = 0.0;
  for (int j = 0; j < cfg.num_subcarriers; ++j) {
    acc += subcarrier_rate(cfg.subcarrier_bandwidth, compute_sinr(gains, cfg, l, j, m));
  }
  return acc / cfg.num_subcarriers;
}

}  // namespace scn
