#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "irvlab/irv.hpp"
#include "irvlab/profile.hpp"
#include "irvlab/rational.hpp"

namespace irvlab {

struct WinnerSequence {
  // winners[h - 1] is the IRV winner at ballot length h, for h = 1..k-1.
  std::vector<Candidate> winners;
  int distinct_count = 0;

  Candidate at(int h) const { return winners.at(static_cast<std::size_t>(h) - 1); }
};

WinnerSequence winner_sequence(const Profile& p, const TieBreakPolicy& policy = {});

// Same, with per-type counts overriding those stored in `p`.
WinnerSequence winner_sequence(const Profile& p, const TieBreakPolicy& policy, std::span<const std::int64_t> counts);

int num_truncation_winners(const Profile& p, const TieBreakPolicy& policy = {});

inline constexpr std::int64_t kDefaultResampleTrials = 10000;

struct ResampleReport {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int k = 0;
  // wins[h - 1][c - 1]: trials in which c won at ballot length h.
  std::vector<std::vector<std::int64_t>> wins;
  // Distinct truncation winners per trial, in trial order.
  std::vector<int> winner_counts;
  WinnerSequence actual;

  Rational win_prob(int h, Candidate c) const;
  double frequency(int h, Candidate c) const;
};

// Bootstrap: each trial redraws n ballots with replacement from the
// empirical type distribution and records the winner at every h. Trial t
// draws from its own generator derived from (seed, t), so the report does
// not depend on `threads`.
ResampleReport resample(const Profile& p, std::int64_t trials, std::uint64_t seed, const TieBreakPolicy& policy = {},
                        int threads = 1);

// Columns h,candidate,frequency,actual_winner_flag; one row per (h, c).
void write_resample_csv(std::ostream& out, const ResampleReport& report, const Profile& labels_from);

}  // namespace irvlab
