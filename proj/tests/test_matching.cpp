#include <doctest.h>

#include <algorithm>
#include <vector>

#include "scn/channel.hpp"
#include "scn/matching.hpp"
#include "scn/rng.hpp"

using namespace scn;

namespace {

std::vector<double> random_rates(int L, int M, std::uint64_t seed, double zero_frac = 0.0) {
  RandomStream rs(seed);
  std::vector<double> rates(static_cast<std::size_t>(L) * M);
  for (double& r : rates) {
    r = rs.uniform01() < zero_frac ? 0.0 : rs.uniform(0.01, 2.0);
  }
  return rates;
}

// Straight-line re-derivation of the blocking definition for the plain rate
// order: no shared helpers, repeated linear scans only.
std::vector<BlockingPair> oracle_blocking_rate(const Matching& mu,
                                               const PreferenceProfile& prof,
                                               std::span<const int> quotas) {
  std::vector<BlockingPair> out;
  for (int m = 0; m < prof.num_users; ++m) {
    const auto& list = prof.user_lists[static_cast<std::size_t>(m)];
    for (const int l : list) {
      const int cur = mu.user_to_bs[static_cast<std::size_t>(m)];
      if (cur != kUnmatched) {
        // Stop once we reach the current assignment: later entries are worse.
        if (cur == l) break;
      }
      const auto& held = mu.bs_to_users[static_cast<std::size_t>(l)];
      if (held.size() < static_cast<std::size_t>(quotas[static_cast<std::size_t>(l)])) {
        out.push_back({m, l, kUnmatched});
        continue;
      }
      // Weakest incumbent by (rate asc, user index desc).
      int weakest = -1;
      for (const int i : held) {
        if (weakest == -1) {
          weakest = i;
          continue;
        }
        const double ri = prof.rate(l, i);
        const double rw = prof.rate(l, weakest);
        if (ri < rw || (ri == rw && i > weakest)) weakest = i;
      }
      const double rm = prof.rate(l, m);
      const double rw = prof.rate(l, weakest);
      if (rm > rw || (rm == rw && m < weakest)) out.push_back({m, l, weakest});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("matching bookkeeping: assign, reassign, unmatched") {
  Matching mu(4, 2);
  CHECK(mu.unmatched_users() == std::vector<int>{0, 1, 2, 3});
  mu.assign(2, 1);
  mu.assign(0, 1);
  mu.assign(2, 0);  // reassign moves the user
  CHECK(mu.user_to_bs[2] == 0);
  CHECK(mu.bs_to_users[1] == std::vector<int>{0});
  CHECK(mu.bs_to_users[0] == std::vector<int>{2});
  CHECK(mu.matched_count() == 2);
  mu.unassign(0);
  CHECK(mu.unmatched_users() == std::vector<int>{0, 1, 3});
}

TEST_CASE("validate reports the first violated condition") {
  const std::vector<int> quotas = {1, 2};

  Matching ok(3, 2);
  ok.assign(0, 0);
  ok.assign(1, 1);
  CHECK(validate(ok, quotas).ok);

  // Condition 1: a user listed by two BSs.
  Matching dupe(3, 2);
  dupe.user_to_bs = {0, kUnmatched, kUnmatched};
  dupe.bs_to_users = {{0}, {0}};
  const auto r1 = validate(dupe, quotas);
  CHECK_FALSE(r1.ok);
  CHECK(r1.condition == 1);

  // Condition 2: quota exceeded.
  Matching over(3, 2);
  over.user_to_bs = {0, 0, kUnmatched};
  over.bs_to_users = {{0, 1}, {}};
  const auto r2 = validate(over, quotas);
  CHECK_FALSE(r2.ok);
  CHECK(r2.condition == 2);

  // Condition 3: directions disagree.
  Matching skew(3, 2);
  skew.user_to_bs = {1, kUnmatched, kUnmatched};
  skew.bs_to_users = {{}, {}};
  const auto r3 = validate(skew, quotas);
  CHECK_FALSE(r3.ok);
  CHECK(r3.condition == 3);
}

TEST_CASE("blocking_pairs with the rate comparator matches a linear-scan oracle") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int L = 2 + static_cast<int>(seed % 3);
    const int M = 3 + static_cast<int>(seed % 6);
    const std::vector<double> rates = random_rates(L, M, seed, seed % 2 ? 0.3 : 0.0);
    const PreferenceProfile prof = build_user_preferences(rates, L, M, 0.0);
    std::vector<int> quotas(static_cast<std::size_t>(L), 1 + static_cast<int>(seed % 2));

    // A random-but-valid matching to audit.
    RandomStream rs(seed * 77);
    Matching mu(M, L);
    for (int m = 0; m < M; ++m) {
      const int pick = static_cast<int>(rs.next_u64() % static_cast<std::uint64_t>(L + 1));
      if (pick < L &&
          mu.bs_to_users[static_cast<std::size_t>(pick)].size() <
              static_cast<std::size_t>(quotas[static_cast<std::size_t>(pick)]) &&
          prof.list_position(m, pick) >= 0) {
        mu.assign(m, pick);
      }
    }
    mu.canonicalize();

    const RateComparator cmp(prof);
    auto got = blocking_pairs(mu, prof, cmp, quotas);
    auto want = oracle_blocking_rate(mu, prof, quotas);
    auto key = [](const BlockingPair& b) { return std::pair(b.user, b.bs); };
    std::sort(got.begin(), got.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    std::sort(want.begin(), want.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].user == want[i].user);
      CHECK(got[i].bs == want[i].bs);
      CHECK(got[i].displaced == want[i].displaced);
    }
  }
}

TEST_CASE("a full stable matching has no blocking pairs, and breaking it creates one") {
  // Two BSs, quota 1, two users; both prefer BS0.
  const std::vector<double> rates = {
      1.0, 0.8,  // BS0
      0.5, 0.4,  // BS1
  };
  const PreferenceProfile prof = build_user_preferences(rates, 2, 2, 0.0);
  const std::vector<int> quotas = {1, 1};
  const RateComparator cmp(prof);

  Matching stable(2, 2);
  stable.assign(0, 0);
  stable.assign(1, 1);
  CHECK(blocking_pairs(stable, prof, cmp, quotas).empty());

  Matching flipped(2, 2);
  flipped.assign(0, 1);
  flipped.assign(1, 0);
  const auto blocks = blocking_pairs(flipped, prof, cmp, quotas);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].user == 0);
  CHECK(blocks[0].bs == 0);
  CHECK(blocks[0].displaced == 1);
}

TEST_CASE("brute force maximiser agrees with a flat enumeration oracle") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const int L = 2 + static_cast<int>(seed % 2);
    const int M = 3 + static_cast<int>(seed % 4);
    const std::vector<double> rates = random_rates(L, M, seed, 0.25);
    std::vector<int> quotas(static_cast<std::size_t>(L), 1 + static_cast<int>(seed % 3));
    const double threshold = 0.5;

    const Matching got = brute_force_opt(rates, L, M, quotas, threshold);
    CHECK(validate(got, quotas).ok);

    // Odometer enumeration over all (L+1)^M assignment vectors.
    std::vector<int> assign(static_cast<std::size_t>(M), -1);
    std::vector<int> best;
    double best_sum = -1.0;
    bool found = false;
    while (true) {
      std::vector<int> load(static_cast<std::size_t>(L), 0);
      bool feasible = true;
      double sum = 0.0;
      for (int m = 0; m < M && feasible; ++m) {
        const int l = assign[static_cast<std::size_t>(m)];
        if (l < 0) continue;
        const double r = rates[static_cast<std::size_t>(l) * M + m];
        if (!(r > threshold)) feasible = false;
        if (++load[static_cast<std::size_t>(l)] > quotas[static_cast<std::size_t>(l)])
          feasible = false;
        sum += r;
      }
      if (feasible && (!found || sum > best_sum)) {
        // Strict improvement only: the first maximiser in odometer order is
        // the lexicographically smallest, matching the library contract.
        found = true;
        best_sum = sum;
        best = assign;
      }
      int pos = M - 1;
      while (pos >= 0 && assign[static_cast<std::size_t>(pos)] == L - 1) {
        assign[static_cast<std::size_t>(pos)] = -1;
        --pos;
      }
      if (pos < 0) break;
      ++assign[static_cast<std::size_t>(pos)];
    }

    REQUIRE(found);
    CHECK(got.user_to_bs == best);

    double got_sum = 0.0;
    for (int m = 0; m < M; ++m) {
      const int l = got.user_to_bs[static_cast<std::size_t>(m)];
      if (l != kUnmatched) got_sum += rates[static_cast<std::size_t>(l) * M + m];
    }
    CHECK(got_sum == doctest::Approx(best_sum).epsilon(1e-12));
  }
}

TEST_CASE("brute force refuses oversized instances") {
  const std::vector<double> rates(static_cast<std::size_t>(2) * 9, 1.0);
  const std::vector<int> quotas = {4, 4};
  CHECK_THROWS_AS(brute_force_opt(rates, 2, 9, quotas, 0.0), std::invalid_argument);
  const std::vector<double> rates2(static_cast<std::size_t>(5) * 4, 1.0);
  const std::vector<int> quotas5 = {1, 1, 1, 1, 1};
  CHECK_THROWS_AS(brute_force_opt(rates2, 5, 4, quotas5, 0.0), std::invalid_argument);
}
