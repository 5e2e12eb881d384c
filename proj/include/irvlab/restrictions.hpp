#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "irvlab/profile.hpp"
#include "irvlab/rational.hpp"

namespace irvlab {

// Left-to-right order of all candidates.
using Axis = std::vector<Candidate>;

// A ballot is single-peaked on the axis when every prefix of it is a
// contiguous stretch of the axis containing its top choice. Unranked
// candidates count as below every ranked one, so a ranked candidate may not
// sit beyond an unranked one on the same side of the peak.
bool is_single_peaked_on_axis(const Profile& p, const Axis& axis);
bool is_single_peaked_on_axis(const WeightedProfile& p, const Axis& axis);

inline constexpr int kDefaultAxisSearchLimit = 10;

// First axis in lexicographic order (with axis.front() < axis.back(), one of
// each mirror pair) on which p is single-peaked. Throws BudgetError when
// k > k_limit.
std::optional<Axis> find_axis(const Profile& p, int k_limit = kDefaultAxisSearchLimit);

// True iff for every ordered pair (a, b) the ballots ranking a above b form
// a contiguous run, after dropping ballots that rank neither a nor b.
bool is_single_crossing_sequence(const std::vector<Ballot>& ballots);

// `order` is a permutation of 0..n-1 over the expanded ballots, where the
// expanded list repeats each type's ballot `count` times in type order.
bool is_single_crossing_in_order(const Profile& p, const std::vector<std::size_t>& order);

// Same check with the weighted types taken in their stored order.
bool is_single_crossing_in_order(const WeightedProfile& p);

struct EuclideanSpec {
  std::vector<Rational> candidate_positions;
};

// Parses a comma-separated list of exact rationals.
EuclideanSpec parse_euclidean_spec(std::string_view text);

// Infinite voter population uniform on [0,1]. Each open cell between
// consecutive midpoints yields one full ranking by distance, weighted by the
// cell length, in left-to-right cell order. Candidate c sits at
// candidate_positions[c - 1].
WeightedProfile euclidean_profile(const EuclideanSpec& spec);

// Candidates sorted by position.
Axis euclidean_axis(const EuclideanSpec& spec);

// Random profile single-peaked on the axis 1..k: each voter picks a peak and
// walks outward, choosing a side at random, then stops after a uniform
// length in 1..k (or always at k when `partial` is false).
Profile random_single_peaked_profile(int k, std::int64_t n, std::mt19937_64& rng, bool partial = true);

struct SingleCrossingSample {
  Profile profile;
  // Voter ballots in a single-crossing order.
  std::vector<Ballot> sequence;
};

// Walks from a random ranking by adjacent swaps that each flip a pair at most
// once, samples n voters along the walk, and optionally truncates each.
SingleCrossingSample random_single_crossing_profile(int k, std::int64_t n, std::mt19937_64& rng,
                                                    bool partial = true);

}  // namespace irvlab
