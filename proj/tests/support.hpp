#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "irvlab/irv.hpp"
#include "irvlab/profile.hpp"

namespace irvlab::testing {

inline std::string fixture(const std::string& name) { return std::string(IRVLAB_FIXTURE_DIR) + "/" + name; }

// 24 voters of 6 types over A, B, C, D.
inline Profile fig2_profile() {
  return profile_from_named({"A", "B", "C", "D"}, {{2, {"A", "D", "C", "B"}},
                                                   {5, {"A"}},
                                                   {6, {"B", "D", "A"}},
                                                   {6, {"C"}},
                                                   {3, {"D", "B"}},
                                                   {2, {"D", "C"}}});
}

// Uniformly random partial ballots: random permutation, random length.
inline Profile random_profile(int k, int n_types, int max_count, std::mt19937_64& rng, bool full = false) {
  std::vector<BallotType> types;
  std::uniform_int_distribution<int> count(1, max_count);
  std::uniform_int_distribution<int> length(1, k);
  for (int t = 0; t < n_types; ++t) {
    Ballot b(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) b[static_cast<std::size_t>(c)] = c + 1;
    std::shuffle(b.begin(), b.end(), rng);
    if (!full) b.resize(static_cast<std::size_t>(length(rng)));
    types.push_back({b, count(rng)});
  }
  return normalize(Profile(k, std::move(types)));
}

// Every ballot over 1..k: all orderings of every nonempty subset.
inline std::vector<Ballot> all_ballots(int k) {
  std::vector<Ballot> out;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Ballot b;
    for (int c = 1; c <= k; ++c) {
      if (mask & (1u << (c - 1))) b.push_back(c);
    }
    do {
      out.push_back(b);
    } while (std::next_permutation(b.begin(), b.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Calls body on every profile over 1..k with 1..max_n voters whose ballots
// come from `ballots`.
template <class Body>
void for_each_profile(int k, const std::vector<Ballot>& ballots, int max_n, Body&& body) {
  std::vector<std::int64_t> counts(ballots.size(), 0);
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    std::vector<BallotType> types;
    for (std::size_t i = 0; i < ballots.size(); ++i) {
      if (counts[i] > 0) types.push_back({ballots[i], counts[i]});
    }
    if (!types.empty()) body(Profile(k, std::move(types)));
    if (left == 0) return;
    for (std::size_t i = from; i < ballots.size(); ++i) {
      ++counts[i];
      self(self, i, left - 1);
      --counts[i];
    }
  };
  rec(rec, 0, max_n);
}

// Per-voter IRV that follows every tie-for-last branch.
struct OracleOutcome {
  std::set<Candidate> winners;
  bool tally_tie = false;
  bool elim_tie = false;
};

inline void oracle_branch(const std::vector<Ballot>& voters, int k, std::vector<bool>& out_flag, int remaining,
                          OracleOutcome& result) {
  if (remaining == 1) {
    for (int c = 1; c <= k; ++c) {
      if (!out_flag[static_cast<std::size_t>(c)]) result.winners.insert(c);
    }
    return;
  }
  std::map<Candidate, std::int64_t> tally;
  for (int c = 1; c <= k; ++c) {
    if (!out_flag[static_cast<std::size_t>(c)]) tally[c] = 0;
  }
  for (const auto& b : voters) {
    for (Candidate c : b) {
      if (!out_flag[static_cast<std::size_t>(c)]) {
        ++tally[c];
        break;
      }
    }
  }
  std::set<std::int64_t> values;
  std::int64_t low = INT64_MAX;
  for (auto& [c, v] : tally) {
    if (!values.insert(v).second) result.tally_tie = true;
    low = std::min(low, v);
  }
  std::vector<Candidate> last;
  for (auto& [c, v] : tally) {
    if (v == low) last.push_back(c);
  }
  if (last.size() > 1) result.elim_tie = true;
  for (Candidate c : last) {
    out_flag[static_cast<std::size_t>(c)] = true;
    oracle_branch(voters, k, out_flag, remaining - 1, result);
    out_flag[static_cast<std::size_t>(c)] = false;
  }
}

inline OracleOutcome oracle(const Profile& p, int h) {
  std::vector<Ballot> voters;
  for (const auto& type : p.types()) {
    Ballot b(type.ballot.begin(), type.ballot.begin() + std::min<std::ptrdiff_t>(h, static_cast<std::ptrdiff_t>(type.ballot.size())));
    for (std::int64_t v = 0; v < type.count; ++v) voters.push_back(b);
  }
  OracleOutcome result;
  std::vector<bool> out_flag(static_cast<std::size_t>(p.k()) + 1, false);
  oracle_branch(voters, p.k(), out_flag, p.k(), result);
  return result;
}

inline TieClassValue oracle_class(const Profile& p) {
  if (p.k() < 2) return TieClassValue::TieFree;
  bool tally = false;
  bool elim = false;
  bool consequential = false;
  for (int h = 1; h <= p.k() - 1; ++h) {
    const auto o = oracle(p, h);
    tally = tally || o.tally_tie;
    elim = elim || o.elim_tie;
    consequential = consequential || o.winners.size() > 1;
  }
  if (consequential) return TieClassValue::HasConsequentialTies;
  if (elim) return TieClassValue::ConsequentialTieFree;
  if (tally) return TieClassValue::EliminationTieFree;
  return TieClassValue::TieFree;
}

}  // namespace irvlab::testing
