#include "scn/preference.hpp"

#include "scn/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace scn {

int PreferenceProfile::list_position(int m, int l) const {
  const auto& list = user_lists[static_cast<std::size_t>(m)];
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == l) return static_cast<int>(i);
  }
  return -1;
}

PreferenceProfile build_user_preferences(const std::vector<double>& rate_matrix, int L,
                                         int M, double rate_threshold) {
  if (rate_matrix.size() != static_cast<std::size_t>(L) * static_cast<std::size_t>(M))
    throw std::invalid_argument("rate matrix has wrong size");
  PreferenceProfile prof;
  prof.num_bs = L;
  prof.num_users = M;
  prof.rate_threshold = rate_threshold;
  prof.rates = rate_matrix;
  prof.user_lists.resize(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    auto& list = prof.user_lists[static_cast<std::size_t>(m)];
    for (int l = 0; l < L; ++l) {
      if (prof.rate(l, m) > rate_threshold) list.push_back(l);
    }
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      const double ra = prof.rate(a, m);
      const double rb = prof.rate(b, m);
      if (ra != rb) return ra > rb;
      return a < b;
    });
  }
  return prof;
}

bool chance_flag(std::span<const int> remaining, int l) {
  assert(!remaining.empty() && remaining.front() == l);
  (void)l;
  return remaining.size() > 1;
}

Priority classify_priority(int bs, int first_choice_bs, bool has_alternatives) {
  if (has_alternatives) return Priority::Third;
  return bs == first_choice_bs ? Priority::First : Priority::Second;
}

double promotion(double alpha, std::span<const double> gamma, double zeta1, double zeta2,
                 double bandwidth) {
  assert(!gamma.empty());
  const double num = alpha * zeta1;
  double acc = 0.0;
  for (const double g : gamma) {
    acc += bandwidth * (num / kernels::log2_pos(zeta2 + alpha * g));
  }
  return acc / static_cast<double>(gamma.size());
}

BsScores bs_scores(double alpha, std::span<const double> gamma, double zeta1,
                   double zeta2, double bandwidth) {
  double acc = 0.0;
  for (const double g : gamma) {
    acc += bandwidth * kernels::log2p1(g);
  }
  const double rate = acc / static_cast<double>(gamma.size());
  return {rate, rate + promotion(alpha, gamma, zeta1, zeta2, bandwidth)};
}

Selection rank_and_select(std::vector<Applicant> pool, int quota) {
  // One total order for the whole pool. Scoring every applicant with the
  // class-dependent admission score and sorting once keeps each BS's choice
  // responsive: the winner set of a pool never changes when losers leave,
  // which is what makes the proposal game terminate in a stable state. A
  // per-class ordering merged across classes loses that property (pairwise
  // class/rate rules are cyclic on real inputs) and lets one-shot challenges
  // succeed after the game ends.
  std::sort(pool.begin(), pool.end(), [](const Applicant& a, const Applicant& b) {
    if (a.psi != b.psi) return a.psi > b.psi;
    return a.user < b.user;
  });
  Selection out;
  for (Applicant& a : pool) {
    if (out.accepted.size() < static_cast<std::size_t>(quota)) {
      out.accepted.push_back(a);
    } else {
      out.rejected.push_back(a);
    }
  }
  return out;
}

}  // namespace scn
