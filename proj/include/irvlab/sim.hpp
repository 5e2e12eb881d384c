#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "irvlab/profile.hpp"

namespace irvlab {

enum class PreferenceKind { UniformGeneral, Euclidean1D };
enum class BallotKind { Full, VoluntarilyTruncated };

std::string_view to_string(PreferenceKind kind);
std::string_view to_string(BallotKind kind);
PreferenceKind parse_preference_kind(std::string_view name);
BallotKind parse_ballot_kind(std::string_view name);

inline constexpr std::int64_t kDefaultHeatmapTrials = 1000;
inline constexpr std::int64_t kDefaultWinnerCountTrials = 10000;

struct SimConfig {
  int k_min = 2;
  int k_max = 40;
  std::int64_t trials = kDefaultHeatmapTrials;
  std::int64_t n_voters = 1000;
  std::uint64_t seed = 0;
  PreferenceKind preference_kind = PreferenceKind::UniformGeneral;
  BallotKind ballots = BallotKind::Full;
  int threads = 1;
};

// Throws DomainError on an empty k range, k_min < 2, trials < 1 or
// n_voters < 1.
void validate(const SimConfig& cfg);

// n full ballots drawn i.i.d. uniform over all rankings of 1..k.
Profile uniform_profile(int k, std::int64_t n, std::uint64_t seed);

// Cuts every voter's ballot to an independent uniform length in 1..k.
Profile voluntary_truncate(const Profile& p, std::uint64_t seed);
// Per ballot type for weighted profiles.
WeightedProfile voluntary_truncate(const WeightedProfile& p, std::uint64_t seed);

// Candidate positions i.i.d. uniform on [0,1), as multiples of 2^-53.
std::vector<Rational> random_positions(int k, std::uint64_t seed);

// The integer profile a trial analyzes. Euclidean trials scale the exact
// cell weights to integers, which preserves every IRV comparison.
Profile trial_profile(const SimConfig& cfg, int k, std::int64_t trial);

struct HeatmapRow {
  int k = 0;
  // matches[h - 1]: trials where the length-h winner equals the full winner,
  // for h = 1..k-1.
  std::vector<std::int64_t> matches;
};

struct HeatmapResult {
  std::int64_t trials = 0;
  std::vector<HeatmapRow> rows;
  // Trials with a tie for last place at some ballot length, resolved by
  // LexicographicMin.
  std::int64_t tie_trials = 0;

  double probability(int k, int h) const;
  const HeatmapRow& row(int k) const;
};

HeatmapResult heatmap(const SimConfig& cfg);

struct WinnerCountRow {
  int k = 0;
  double mean = 0;
  // Population standard deviation across trials.
  double stddev = 0;
  int max = 0;
};

struct WinnerCountResult {
  std::int64_t trials = 0;
  PreferenceKind preference_kind = PreferenceKind::UniformGeneral;
  BallotKind ballots = BallotKind::Full;
  std::vector<WinnerCountRow> rows;
  std::int64_t tie_trials = 0;
};

WinnerCountResult winner_count_stats(const SimConfig& cfg);

// Columns k,h,probability,trials.
void write_heatmap_csv(std::ostream& out, const HeatmapResult& result);
// Columns k,mean,std,max,trials,kind,ballots.
void write_winner_count_csv(std::ostream& out, const WinnerCountResult& result);

}  // namespace irvlab
