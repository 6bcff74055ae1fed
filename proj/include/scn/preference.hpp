#pragma once

#include <span>
#include <vector>

#include "scn/config.hpp"

namespace scn {

// Admission priority classes, strongest first. A proposer is First when the
// target is both its top choice and its only remaining option, Second when
// the target is its last remaining option but was not its top choice, and
// Third while it still holds an acceptable fallback.
enum class Priority : int { First = 0, Second = 1, Third = 2 };

// Per-user ranked lists of acceptable BSs (rate above threshold), best first,
// ties broken toward the lower BS index. Rates are kept for ranking/audits.
struct PreferenceProfile {
  int num_bs = 0;
  int num_users = 0;
  double rate_threshold = 0.0;
  std::vector<double> rates;                 // [l*M + m]
  std::vector<std::vector<int>> user_lists;  // user_lists[m], best first

  double rate(int l, int m) const {
    return rates[static_cast<std::size_t>(l) * num_users + m];
  }
  // Position of l in user m's list, or -1 if unacceptable.
  int list_position(int m, int l) const;
};

PreferenceProfile build_user_preferences(const std::vector<double>& rate_matrix, int L,
                                         int M, double rate_threshold);

// True when the proposer still has an acceptable option after `l`.
// `remaining` is the untried suffix of the user's list; its head must be l.
bool chance_flag(std::span<const int> remaining, int l);

Priority classify_priority(int bs, int first_choice_bs, bool has_alternatives);

// Admission boost of one applicant: mean over subcarriers of
// w * alpha*zeta1 / log2(zeta2 + alpha*gamma_j). Monotone in alpha, which is
// what separates the three classes.
double promotion(double alpha, std::span<const double> gamma, double zeta1, double zeta2,
                 double bandwidth);

struct BsScores {
  double rate;  // average achievable rate at this BS
  double psi;   // rate + promotion, the admission score
};

BsScores bs_scores(double alpha, std::span<const double> gamma, double zeta1,
                   double zeta2, double bandwidth);

struct Applicant {
  int user = 0;
  Priority cls = Priority::Third;
  double rate = 0.0;
  double psi = 0.0;
};

struct Selection {
  std::vector<Applicant> accepted;  // in acceptance order
  std::vector<Applicant> rejected;
};

// Deterministic quota-q selection from an applicant pool: the pool is sorted
// by admission score psi (descending, then lower user index) and the first q
// are accepted. The same order decides one-shot challenges in the stability
// audit, so the game's outcome and the audit agree by construction.
Selection rank_and_select(std::vector<Applicant> pool, int quota);

}  // namespace scn
