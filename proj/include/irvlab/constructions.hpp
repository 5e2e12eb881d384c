#pragma once

#include <cstdint>
#include <vector>

#include "irvlab/irv.hpp"
#include "irvlab/profile.hpp"

namespace irvlab {

// A target winner sequence w_1..w_{k-1} over candidates labelled by their
// full-ballot elimination order (candidate i is eliminated i-th).
struct TargetSequence {
  int k = 0;
  std::vector<Candidate> w;
};

// True iff w_h >= h + 1 for every h. Throws DomainError if |w| != k - 1.
bool is_feasible(const TargetSequence& t);

// Minimum voters needed for k-1 truncation winners in a profile of the given
// tie class. Accepts TieFree, EliminationTieFree, ConsequentialTieFree.
std::int64_t voter_lower_bound(int k, TieClassValue cls);

// Consequential-tie-free profile of voter_lower_bound(k, CTF) partial
// ballots realizing w at h = 1..k-1.
Profile build_ctf(const TargetSequence& t);

struct FSequence {
  std::vector<Candidate> order;
  int winner_prefix_len = 0;
};

// Distinct winners by first appearance, then everyone else by descending
// index (so the last entry is candidate 1).
FSequence f_sequence(const TargetSequence& t);

// Tie-free profile of voter_lower_bound(k, TieFree) partial ballots
// realizing w. First-place counts follow the f-sequence with unit gaps.
Profile build_tie_free(const TargetSequence& t);

struct SinglePeakedConstruction {
  Profile profile;
  std::vector<Candidate> axis;
};

// Winners are candidates 1..kappa and win at h = 1..kappa. Fillers are
// numbered kappa+1.. in axis order.
SinglePeakedConstruction build_single_peaked(int kappa);

// Tie-free profile where candidate h wins at h. Candidate k contributes
// k-2 ballot types and every other candidate two, for 3k-4 types in all.
Profile build_k_types(int k);

enum class FillVariant { ConsequentialTieFree, TieFree };

// Base construction over the kappa + c top candidates, with kappa - c filler
// candidates (labels 1..kappa-c) padding every ballot to length kappa - c.
// w has length kappa + c - 1 and w_h must lie in kappa-c+h+1..2*kappa.
Profile build_min_length(int kappa, int c, const std::vector<Candidate>& w,
                         FillVariant variant = FillVariant::ConsequentialTieFree);

// The c = 0 case with every ballot completed to a full ranking by appending
// the unused candidates in ascending order.
Profile build_full_ballot(int kappa, const std::vector<Candidate>& w,
                          FillVariant variant = FillVariant::ConsequentialTieFree);

}  // namespace irvlab
