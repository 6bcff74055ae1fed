#include "scn/matching.hpp"

#include <algorithm>
#include <stdexcept>

namespace scn {

Matching::Matching(int num_users, int num_bs)
    : user_to_bs(static_cast<std::size_t>(num_users), kUnmatched),
      bs_to_users(static_cast<std::size_t>(num_bs)) {}

void Matching::assign(int m, int l) {
  unassign(m);
  user_to_bs[static_cast<std::size_t>(m)] = l;
  bs_to_users[static_cast<std::size_t>(l)].push_back(m);
}

void Matching::unassign(int m) {
  const int l = user_to_bs[static_cast<std::size_t>(m)];
  if (l == kUnmatched) return;
  auto& list = bs_to_users[static_cast<std::size_t>(l)];
  list.erase(std::remove(list.begin(), list.end(), m), list.end());
  user_to_bs[static_cast<std::size_t>(m)] = kUnmatched;
}

std::vector<int> Matching::unmatched_users() const {
  std::vector<int> out;
  for (std::size_t m = 0; m < user_to_bs.size(); ++m) {
    if (user_to_bs[m] == kUnmatched) out.push_back(static_cast<int>(m));
  }
  return out;
}

int Matching::matched_count() const {
  int n = 0;
  for (const int l : user_to_bs) n += (l != kUnmatched);
  return n;
}

void Matching::canonicalize() {
  for (auto& list : bs_to_users) std::sort(list.begin(), list.end());
}

ValidationReport validate(const Matching& mu, std::span<const int> quotas) {
  const int M = static_cast<int>(mu.user_to_bs.size());
  const int L = static_cast<int>(mu.bs_to_users.size());

  // Condition 1: each user is assigned to at most one BS (and listed once).
  std::vector<int> appearances(static_cast<std::size_t>(M), 0);
  for (int l = 0; l < L; ++l) {
    for (const int m : mu.bs_to_users[static_cast<std::size_t>(l)]) {
      if (m < 0 || m >= M)
        return {false, 1, "BS " + std::to_string(l) + " lists unknown user " +
                              std::to_string(m)};
      if (++appearances[static_cast<std::size_t>(m)] > 1)
        return {false, 1, "user " + std::to_string(m) + " assigned more than once"};
    }
  }

  // Condition 2: quotas.
  if (static_cast<int>(quotas.size()) != L)
    return {false, 2, "quota list length does not match BS count"};
  for (int l = 0; l < L; ++l) {
    const auto held = mu.bs_to_users[static_cast<std::size_t>(l)].size();
    if (held > static_cast<std::size_t>(quotas[static_cast<std::size_t>(l)]))
      return {false, 2, "BS " + std::to_string(l) + " holds " + std::to_string(held) +
                            " users, quota " +
                            std::to_string(quotas[static_cast<std::size_t>(l)])};
  }

  // Condition 3: the two directions agree.
  for (int m = 0; m < M; ++m) {
    const int l = mu.user_to_bs[static_cast<std::size_t>(m)];
    if (l == kUnmatched) {
      if (appearances[static_cast<std::size_t>(m)] != 0)
        return {false, 3, "user " + std::to_string(m) + " unmatched but listed by a BS"};
      continue;
    }
    if (l < 0 || l >= L)
      return {false, 3, "user " + std::to_string(m) + " points at unknown BS " +
                            std::to_string(l)};
    const auto& list = mu.bs_to_users[static_cast<std::size_t>(l)];
    if (std::find(list.begin(), list.end(), m) == list.end())
      return {false, 3, "user " + std::to_string(m) + " points at BS " +
                            std::to_string(l) + " which does not list it"};
  }
  return {};
}

namespace {

// Shared admit logic: pool = incumbents + challenger, re-ranked; the
// challenger is admitted iff it lands in the accepted set, displacing the
// rejected incumbent.
bool admit_via_selection(std::vector<Applicant> pool, int quota, int challenger,
                         int& displaced) {
  Selection sel = rank_and_select(std::move(pool), quota);
  for (const Applicant& a : sel.rejected) {
    if (a.user == challenger) return false;
  }
  displaced = sel.rejected.empty() ? kUnmatched : sel.rejected.front().user;
  return true;
}

}  // namespace

bool RateComparator::admits(int l, std::span<const int> incumbents, int challenger,
                            int& displaced) const {
  std::vector<Applicant> pool;
  pool.reserve(incumbents.size() + 1);
  for (const int m : incumbents) {
    pool.push_back({m, Priority::Third, profile_.rate(l, m), profile_.rate(l, m)});
  }
  pool.push_back({challenger, Priority::Third, profile_.rate(l, challenger),
                  profile_.rate(l, challenger)});
  return admit_via_selection(std::move(pool), static_cast<int>(incumbents.size()),
                             challenger, displaced);
}

StaticPriorityComparator::StaticPriorityComparator(const PreferenceProfile& profile,
                                                   const ChannelRealization& realization,
                                                   const ScenarioConfig& cfg)
    : profile_(profile), num_users_(profile.num_users) {
  const auto& ops = kernels::active_ops();
  for (int c = 0; c < 3; ++c) {
    promo_[c].resize(static_cast<std::size_t>(profile.num_bs) * profile.num_users);
    ops.promotion_table(realization.sinr.data(), cfg.subcarrier_bandwidth,
                        cfg.priority_coeffs[static_cast<std::size_t>(c)], cfg.zeta1,
                        cfg.zeta2, realization.num_bs, realization.num_subcarriers,
                        realization.num_users, promo_[c].data());
  }
}

Applicant StaticPriorityComparator::make_applicant(int l, int m) const {
  const auto& list = profile_.user_lists[static_cast<std::size_t>(m)];
  const int pos = profile_.list_position(m, l);
  Priority cls = Priority::Third;
  if (pos >= 0 && pos == static_cast<int>(list.size()) - 1) {
    cls = list.size() == 1 ? Priority::First : Priority::Second;
  }
  const double rate = profile_.rate(l, m);
  const double psi =
      rate + promo_[static_cast<int>(cls)][static_cast<std::size_t>(l) * num_users_ + m];
  return {m, cls, rate, psi};
}

bool StaticPriorityComparator::admits(int l, std::span<const int> incumbents,
                                      int challenger, int& displaced) const {
  std::vector<Applicant> pool;
  pool.reserve(incumbents.size() + 1);
  for (const int m : incumbents) pool.push_back(make_applicant(l, m));
  pool.push_back(make_applicant(l, challenger));
  return admit_via_selection(std::move(pool), static_cast<int>(incumbents.size()),
                             challenger, displaced);
}

std::vector<BlockingPair> blocking_pairs(const Matching& mu,
                                         const PreferenceProfile& profile,
                                         const BsComparator& cmp,
                                         std::span<const int> quotas) {
  std::vector<BlockingPair> out;
  const int M = profile.num_users;
  for (int m = 0; m < M; ++m) {
    const auto& list = profile.user_lists[static_cast<std::size_t>(m)];
    const int cur = mu.user_to_bs[static_cast<std::size_t>(m)];
    // Unmatched ranks below every acceptable BS; a hold at an unlisted BS
    // (possible for algorithms that ignore acceptability) ranks below that.
    int cur_pos = static_cast<int>(list.size());
    if (cur != kUnmatched) {
      const int pos = profile.list_position(m, cur);
      if (pos >= 0) cur_pos = pos;
    }
    for (int idx = 0; idx < cur_pos; ++idx) {
      const int l = list[static_cast<std::size_t>(idx)];
      const auto& held = mu.bs_to_users[static_cast<std::size_t>(l)];
      if (held.size() < static_cast<std::size_t>(quotas[static_cast<std::size_t>(l)])) {
        out.push_back({m, l, kUnmatched});
        continue;
      }
      int displaced = kUnmatched;
      if (cmp.admits(l, held, m, displaced)) out.push_back({m, l, displaced});
    }
  }
  return out;
}

namespace {

struct BruteState {
  const std::vector<double>* rates;
  int L, M;
  std::span<const int> quotas;
  double threshold;
  std::vector<int> current;
  std::vector<int> load;
  std::vector<int> best;
  double best_sum = -1.0;
  bool found = false;

  double rate(int l, int m) const {
    return (*rates)[static_cast<std::size_t>(l) * M + m];
  }

  void search(int m, double sum) {
    if (m == M) {
      if (!found || sum > best_sum) {
        found = true;
        best_sum = sum;
        best = current;
      }
      return;
    }
    current[static_cast<std::size_t>(m)] = kUnmatched;
    search(m + 1, sum);
    for (int l = 0; l < L; ++l) {
      if (load[static_cast<std::size_t>(l)] >= quotas[static_cast<std::size_t>(l)])
        continue;
      const double r = rate(l, m);
      if (!(r > threshold)) continue;
      current[static_cast<std::size_t>(m)] = l;
      ++load[static_cast<std::size_t>(l)];
      search(m + 1, sum + r);
      --load[static_cast<std::size_t>(l)];
    }
    current[static_cast<std::size_t>(m)] = kUnmatched;
  }
};

}  // namespace

Matching brute_force_opt(const std::vector<double>& rate_matrix, int L, int M,
                         std::span<const int> quotas, double rate_threshold) {
  if (M > 8 || L > 4)
    throw std::invalid_argument("brute_force_opt is limited to 8 users and 4 BSs");
  BruteState st;
  st.rates = &rate_matrix;
  st.L = L;
  st.M = M;
  st.quotas = quotas;
  st.threshold = rate_threshold;
  st.current.assign(static_cast<std::size_t>(M), kUnmatched);
  st.load.assign(static_cast<std::size_t>(L), 0);
  st.search(0, 0.0);
  Matching mu(M, L);
  for (int m = 0; m < M; ++m) {
    if (st.best[static_cast<std::size_t>(m)] != kUnmatched)
      mu.assign(m, st.best[static_cast<std::size_t>(m)]);
  }
  mu.canonicalize();
  return mu;
}

}  // namespace scn
