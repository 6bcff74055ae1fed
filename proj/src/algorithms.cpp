#include "scn/algorithms.hpp"

#include <algorithm>
#include <cassert>

namespace scn {

const char* algorithm_name(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::Pda:
      return "pda";
    case AlgorithmId::Da:
      return "da";
    case AlgorithmId::Rssi:
      return "rssi";
  }
  return "?";
}

std::optional<AlgorithmId> algorithm_from_name(const std::string& name) {
  if (name == "pda") return AlgorithmId::Pda;
  if (name == "da") return AlgorithmId::Da;
  if (name == "rssi") return AlgorithmId::Rssi;
  return std::nullopt;
}

namespace {

// Deferred acceptance over the users' ranked lists. With use_priorities the
// admission score is rate + class promotion; otherwise a single class and
// the score never matters (pure rate order).
RunResult run_deferred(const PreferenceProfile& profile,
                       const ChannelRealization& realization, const ScenarioConfig& cfg,
                       bool use_priorities, bool trace) {
  const int L = profile.num_bs;
  const int M = profile.num_users;

  std::vector<double> promo[3];
  if (use_priorities) {
    const auto& ops = kernels::active_ops();
    for (int c = 0; c < 3; ++c) {
      promo[c].resize(static_cast<std::size_t>(L) * static_cast<std::size_t>(M));
      ops.promotion_table(realization.sinr.data(), cfg.subcarrier_bandwidth,
                          cfg.priority_coeffs[static_cast<std::size_t>(c)], cfg.zeta1,
                          cfg.zeta2, L, realization.num_subcarriers, M, promo[c].data());
    }
  }

  std::vector<std::size_t> cursor(static_cast<std::size_t>(M), 0);
  std::vector<std::vector<int>> holders(static_cast<std::size_t>(L));
  std::vector<int> active;
  for (int m = 0; m < M; ++m) {
    if (!profile.user_lists[static_cast<std::size_t>(m)].empty()) active.push_back(m);
  }

  auto make_applicant = [&](int l, int m) {
    const auto& list = profile.user_lists[static_cast<std::size_t>(m)];
    const std::size_t cur = cursor[static_cast<std::size_t>(m)];
    assert(cur < list.size() && list[cur] == l);
    Applicant a;
    a.user = m;
    a.rate = profile.rate(l, m);
    if (use_priorities) {
      const bool alternatives = list.size() - cur > 1;
      a.cls = classify_priority(l, list.front(), alternatives);
      a.psi = a.rate +
              promo[static_cast<int>(a.cls)][static_cast<std::size_t>(l) * M + m];
    } else {
      a.cls = Priority::Third;
      a.psi = a.rate;
    }
    return a;
  };

  RunResult res;
  std::vector<int> proposals_made(static_cast<std::size_t>(M), 0);
  std::vector<std::vector<int>> proposers(static_cast<std::size_t>(L));
  int sweep = 0;
  while (!active.empty()) {
    ++sweep;
    RoundRecord rec;
    rec.round = sweep;

    for (auto& p : proposers) p.clear();
    for (const int m : active) {
      const auto& list = profile.user_lists[static_cast<std::size_t>(m)];
      const int l = list[cursor[static_cast<std::size_t>(m)]];
      proposers[static_cast<std::size_t>(l)].push_back(m);
      ++res.proposals_sent;
      res.rounds = std::max(res.rounds, ++proposals_made[static_cast<std::size_t>(m)]);
    }

    std::vector<int> next_active;
    for (int l = 0; l < L; ++l) {
      auto& props = proposers[static_cast<std::size_t>(l)];
      if (props.empty()) continue;
      std::vector<Applicant> pool;
      pool.reserve(holders[static_cast<std::size_t>(l)].size() + props.size());
      for (const int m : holders[static_cast<std::size_t>(l)])
        pool.push_back(make_applicant(l, m));
      for (const int m : props) {
        Applicant a = make_applicant(l, m);
        if (trace) rec.proposals.push_back({m, l, a.cls});
        pool.push_back(a);
      }
      Selection sel =
          rank_and_select(std::move(pool), cfg.quotas[static_cast<std::size_t>(l)]);
      auto& held = holders[static_cast<std::size_t>(l)];
      held.clear();
      for (const Applicant& a : sel.accepted) {
        held.push_back(a.user);
        if (trace) rec.accepted.push_back({a.user, l});
      }
      for (const Applicant& a : sel.rejected) {
        if (trace) rec.rejected.push_back({a.user, l});
        const int m = a.user;
        ++cursor[static_cast<std::size_t>(m)];
        if (cursor[static_cast<std::size_t>(m)] <
            profile.user_lists[static_cast<std::size_t>(m)].size()) {
          next_active.push_back(m);
        } else if (trace) {
          rec.exhausted.push_back(m);
        }
      }
    }
    std::sort(next_active.begin(), next_active.end());
    active = std::move(next_active);
    if (trace) res.trace.push_back(std::move(rec));
  }

  res.matching = Matching(M, L);
  for (int l = 0; l < L; ++l) {
    for (const int m : holders[static_cast<std::size_t>(l)]) res.matching.assign(m, l);
  }
  res.matching.canonicalize();
  return res;
}

}  // namespace

RunResult run_pda(const PreferenceProfile& profile, const ChannelRealization& realization,
                  const ScenarioConfig& cfg, bool trace) {
  return run_deferred(profile, realization, cfg, true, trace);
}

RunResult run_da(const PreferenceProfile& profile, const ChannelRealization& realization,
                 const ScenarioConfig& cfg, bool trace) {
  return run_deferred(profile, realization, cfg, false, trace);
}

RunResult run_rssi(const ChannelRealization& realization, const ScenarioConfig& cfg,
                   bool trace) {
  const int L = realization.num_bs;
  const int M = realization.num_users;
  std::vector<double> rssi(static_cast<std::size_t>(L) * static_cast<std::size_t>(M));
  const std::vector<double> power = cfg.subcarrier_powers();
  kernels::active_ops().mean_power_table(realization.gains.data(), power.data(), L,
                                         realization.num_subcarriers, M, rssi.data());

  RunResult res;
  res.rounds = M > 0 ? 1 : 0;
  res.proposals_sent = M;
  std::vector<std::vector<int>> selectors(static_cast<std::size_t>(L));
  for (int m = 0; m < M; ++m) {
    int best = 0;
    for (int l = 1; l < L; ++l) {
      if (rssi[static_cast<std::size_t>(l) * M + m] >
          rssi[static_cast<std::size_t>(best) * M + m])
        best = l;
    }
    selectors[static_cast<std::size_t>(best)].push_back(m);
  }

  RoundRecord rec;
  rec.round = 1;
  res.matching = Matching(M, L);
  for (int l = 0; l < L; ++l) {
    auto& sel = selectors[static_cast<std::size_t>(l)];
    std::sort(sel.begin(), sel.end(), [&](int a, int b) {
      const double ra = rssi[static_cast<std::size_t>(l) * M + a];
      const double rb = rssi[static_cast<std::size_t>(l) * M + b];
      if (ra != rb) return ra > rb;
      return a < b;
    });
    for (std::size_t i = 0; i < sel.size(); ++i) {
      if (trace) rec.proposals.push_back({sel[i], l, Priority::Third});
      if (i < static_cast<std::size_t>(cfg.quotas[static_cast<std::size_t>(l)])) {
        res.matching.assign(sel[i], l);
        if (trace) rec.accepted.push_back({sel[i], l});
      } else if (trace) {
        rec.rejected.push_back({sel[i], l});
        rec.exhausted.push_back(sel[i]);
      }
    }
  }
  res.matching.canonicalize();
  if (trace && M > 0) res.trace.push_back(std::move(rec));
  return res;
}

}  // namespace scn
