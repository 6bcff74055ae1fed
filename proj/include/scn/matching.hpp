#pragma once

#include <span>
#include <string>
#include <vector>

#include "scn/channel.hpp"
#include "scn/config.hpp"
#include "scn/preference.hpp"

namespace scn {

inline constexpr int kUnmatched = -1;

// Many-to-one assignment kept in both directions.
struct Matching {
  std::vector<int> user_to_bs;                // -1 when unmatched
  std::vector<std::vector<int>> bs_to_users;  // ascending after canonicalize()

  Matching() = default;
  Matching(int num_users, int num_bs);

  void assign(int m, int l);
  void unassign(int m);
  std::vector<int> unmatched_users() const;
  int matched_count() const;
  void canonicalize();  // sort each BS list ascending

  bool operator==(const Matching&) const = default;
};

// Validity means: every user appears in at most one BS list (and at most
// once), no BS exceeds its quota, and the two directions agree. The report
// names the first violated condition (1, 2 or 3) and the offending indices.
struct ValidationReport {
  bool ok = true;
  int condition = 0;
  std::string detail;
};

ValidationReport validate(const Matching& mu, std::span<const int> quotas);

// One admission decision of a BS when challenged by a currently unassigned
// user. Implementations must be consistent with how the audited algorithm
// ranks applicants.
class BsComparator {
 public:
  virtual ~BsComparator() = default;
  // True when BS l, holding `incumbents`, would admit `challenger` at the
  // expense of one incumbent; that incumbent is written to `displaced`.
  virtual bool admits(int l, std::span<const int> incumbents, int challenger,
                      int& displaced) const = 0;
};

// Plain rate order (descending, lower user index on ties).
class RateComparator final : public BsComparator {
 public:
  explicit RateComparator(const PreferenceProfile& profile) : profile_(profile) {}
  bool admits(int l, std::span<const int> incumbents, int challenger,
              int& displaced) const override;

 private:
  const PreferenceProfile& profile_;
};

// Priority-aware order: classes are read off the preference lists (a user
// whose list ends at l has no fallback there), admission scores add the
// class promotion to the rate. Mirrors the ranking the priority-based
// algorithm applies every round.
class StaticPriorityComparator final : public BsComparator {
 public:
  StaticPriorityComparator(const PreferenceProfile& profile,
                           const ChannelRealization& realization,
                           const ScenarioConfig& cfg);
  bool admits(int l, std::span<const int> incumbents, int challenger,
              int& displaced) const override;

 private:
  Applicant make_applicant(int l, int m) const;

  const PreferenceProfile& profile_;
  int num_users_;
  std::vector<double> promo_[3];  // [class][l*M + m]
};

struct BlockingPair {
  int user = 0;
  int bs = 0;
  int displaced = kUnmatched;  // -1 when a free slot absorbs the user

  bool operator==(const BlockingPair&) const = default;
};

// Enumerates every (user, BS) pair where the user strictly prefers BS l to
// its assignment (unmatched ranks below all acceptable BSs) and l either has
// a free slot or would displace an incumbent per the comparator. Pairs come
// out in ascending (user, list-rank) order. Empty result == stable matching.
std::vector<BlockingPair> blocking_pairs(const Matching& mu,
                                         const PreferenceProfile& profile,
                                         const BsComparator& cmp,
                                         std::span<const int> quotas);

// Exhaustive maximiser of the total matched rate over all valid matchings
// that respect acceptability. Ties resolve to the lexicographically smallest
// assignment vector (unmatched first). Guarded to num_users <= 8 and
// num_bs <= 4; throws std::invalid_argument beyond that.
Matching brute_force_opt(const std::vector<double>& rate_matrix, int L, int M,
                         std::span<const int> quotas, double rate_threshold);

}  // namespace scn
