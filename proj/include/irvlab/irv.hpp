#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "irvlab/profile.hpp"
#include "irvlab/rational.hpp"

namespace irvlab {

enum class TieBreakKind { LexicographicMin, LexicographicMax, SeededRandom, Scripted };

// How to choose among candidates tied for last place. Scripted policies
// consume one entry per tie event; each entry must name a tied candidate.
struct TieBreakPolicy {
  TieBreakKind kind = TieBreakKind::LexicographicMin;
  std::uint64_t seed = 0;
  std::vector<Candidate> script;

  static TieBreakPolicy lexicographic_min() { return {}; }
  static TieBreakPolicy lexicographic_max() { return {TieBreakKind::LexicographicMax, 0, {}}; }
  static TieBreakPolicy seeded(std::uint64_t seed) { return {TieBreakKind::SeededRandom, seed, {}}; }
  static TieBreakPolicy scripted(std::vector<Candidate> choices) {
    return {TieBreakKind::Scripted, 0, std::move(choices)};
  }
};

// Parses "min", "max", "random" or "script"; script and seed come separately.
TieBreakKind parse_tie_break_kind(std::string_view name);

template <class Tally>
struct BasicRoundRecord {
  int round = 0;
  // First-place tallies of the candidates remaining at the start of the
  // round, ordered by candidate index.
  std::vector<std::pair<Candidate, Tally>> tallies;
  Candidate eliminated = 0;
  std::vector<Candidate> tie_among;
  // Cumulative exhausted ballots once this round's elimination is applied.
  Tally exhausted_after{};
};

template <class Tally>
struct BasicEliminationTrace {
  Candidate winner = 0;
  std::vector<BasicRoundRecord<Tally>> rounds;
  std::vector<Candidate> elimination_order;
  bool any_tally_tie = false;
  bool any_elim_tie = false;
};

using RoundRecord = BasicRoundRecord<std::int64_t>;
using EliminationTrace = BasicEliminationTrace<std::int64_t>;
using WeightedRoundRecord = BasicRoundRecord<Rational>;
using WeightedEliminationTrace = BasicEliminationTrace<Rational>;

// Full IRV tabulation. Candidates that never reach the top of a live ballot
// sit at zero and are eliminated first; the loop runs until one remains.
EliminationTrace run_irv(const Profile& p, const TieBreakPolicy& policy = {});

// Same as run_irv(truncate_profile(p, h), policy) without materializing the
// truncated profile.
EliminationTrace run_irv_truncated(const Profile& p, int h, const TieBreakPolicy& policy = {});

WeightedEliminationTrace run_irv(const WeightedProfile& p, const TieBreakPolicy& policy = {});
WeightedEliminationTrace run_irv_truncated(const WeightedProfile& p, int h, const TieBreakPolicy& policy = {});

// Winner only; skips trace bookkeeping. `counts` optionally overrides the
// per-type voter counts of `p` (same length as p.types()).
Candidate irv_winner(const Profile& p, int h, const TieBreakPolicy& policy = {},
                     std::span<const std::int64_t> counts = {});

struct WinnerProbe {
  Candidate winner = 0;
  bool any_tally_tie = false;
  bool any_elim_tie = false;
  std::vector<Candidate> elimination_order;
};

// Winner plus tie flags and elimination order, without per-round tallies.
WinnerProbe irv_probe(const Profile& p, int h, const TieBreakPolicy& policy = {});

enum class TieClassValue { TieFree, EliminationTieFree, ConsequentialTieFree, HasConsequentialTies, Unknown };

std::string_view to_string(TieClassValue value);

// Strength order: TieFree is strongest. HasConsequentialTies and Unknown
// satisfy no class.
bool at_least(TieClassValue value, TieClassValue required);

struct TieClass {
  TieClassValue value = TieClassValue::Unknown;
  std::int64_t branches_explored = 0;
};

inline constexpr std::int64_t kDefaultBranchBudget = 1'000'000;

// Strongest tie class that holds across ballot lengths 1..max_h (default
// k-1). Tie branches are explored over sets of eliminated candidates, which
// fully determine the IRV state, so equivalent orders are visited once.
TieClass classify_ties(const Profile& p, std::int64_t branch_budget = kDefaultBranchBudget, int max_h = 0);

struct Relabeling {
  Profile profile;
  // permutation[c - 1] is the new label of old candidate c.
  std::vector<Candidate> permutation;
  // True when full-ballot IRV had a tie for last, so the order came from
  // LexicographicMin rather than being forced by the profile.
  bool order_ambiguous = false;
};

// Renames candidates so candidate i is the i-th eliminated under full
// ballots and the winner is k.
Relabeling relabel_by_elimination(const Profile& p);

Profile apply_permutation(const Profile& p, const std::vector<Candidate>& permutation);

// CSV with header h,round,candidate,tally,eliminated_flag,exhausted_after.
void write_trace_csv_header(std::ostream& out);
void write_trace_csv_rows(std::ostream& out, int h, const EliminationTrace& trace, const Profile& labels_from);

}  // namespace irvlab
