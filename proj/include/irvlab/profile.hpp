#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irvlab/rational.hpp"

namespace irvlab {

// Candidates are dense 1-based indices into the owning profile.
using Candidate = int;

// A strict ranking over a subset of the candidates, most preferred first.
using Ballot = std::vector<Candidate>;

struct BallotType {
  Ballot ballot;
  std::int64_t count = 0;

  bool operator==(const BallotType&) const = default;
};

// Count-compressed multiset of ballots over candidates 1..k. Construction
// validates every ballot; it does not merge duplicate types (see normalize).
class Profile {
 public:
  Profile() = default;
  Profile(int k, std::vector<BallotType> types, std::vector<std::string> labels = {});

  int k() const { return k_; }
  const std::vector<BallotType>& types() const { return types_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }

  // Display name, falling back to the decimal index.
  std::string label(Candidate c) const;
  std::optional<Candidate> find_label(std::string_view name) const;

  std::int64_t total_voters() const;
  std::size_t max_ballot_length() const;
  std::size_t min_ballot_length() const;

  bool operator==(const Profile&) const = default;

 private:
  int k_ = 0;
  std::vector<BallotType> types_;
  std::vector<std::string> labels_;
};

// Merges identical ballots, drops zero-count types and sorts types
// lexicographically by ranking.
Profile normalize(const Profile& p);

// Every ballot replaced by its length-h prefix; result is normalized.
Profile truncate_profile(const Profile& p, int h);

std::int64_t total_voters(const Profile& p);

// Builds a normalized profile from display-name ballots, assigning candidate
// indices in the order of `labels`.
Profile profile_from_named(const std::vector<std::string>& labels,
                           const std::vector<std::pair<std::int64_t, std::vector<std::string>>>& ballots);

struct WeightedBallotType {
  Ballot ballot;
  Rational weight;

  bool operator==(const WeightedBallotType&) const = default;
};

// Ballot types carrying exact rational weights; models an infinite voter
// population where each type holds a fraction of the electorate.
class WeightedProfile {
 public:
  WeightedProfile() = default;
  WeightedProfile(int k, std::vector<WeightedBallotType> types);

  int k() const { return k_; }
  const std::vector<WeightedBallotType>& types() const { return types_; }
  Rational total_weight() const;

  bool operator==(const WeightedProfile&) const = default;

 private:
  int k_ = 0;
  std::vector<WeightedBallotType> types_;
};

WeightedProfile truncate_profile(const WeightedProfile& p, int h);

// Scales all weights by the least common denominator. IRV comparisons are
// invariant under positive scaling, so the integer profile has the same
// outcome. Returns nullopt if a scaled count would not fit in 62 bits.
std::optional<Profile> to_integer_profile(const WeightedProfile& p);

}  // namespace irvlab
