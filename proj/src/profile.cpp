#include "irvlab/profile.hpp"

#include <algorithm>
#include <map>

#include "irvlab/errors.hpp"

namespace irvlab {

namespace {

void validate_ballot(const Ballot& ballot, int k) {
  if (ballot.empty()) throw ValidationError("empty ballot");
  if (ballot.size() > static_cast<std::size_t>(k)) throw ValidationError("ballot longer than candidate count");
  std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
  for (Candidate c : ballot) {
    if (c < 1 || c > k) {
      throw ValidationError("candidate " + std::to_string(c) + " out of range 1.." + std::to_string(k));
    }
    if (seen[static_cast<std::size_t>(c)]) throw ValidationError("candidate " + std::to_string(c) + " ranked twice");
    seen[static_cast<std::size_t>(c)] = true;
  }
}

}  // namespace

Profile::Profile(int k, std::vector<BallotType> types, std::vector<std::string> labels)
    : k_(k), types_(std::move(types)), labels_(std::move(labels)) {
  if (k_ < 0) throw ValidationError("negative candidate count");
  if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(k_)) {
    throw ValidationError("label count does not match candidate count");
  }
  for (const auto& type : types_) {
    if (type.count < 0) throw ValidationError("negative ballot count");
    validate_ballot(type.ballot, k_);
  }
}

std::string Profile::label(Candidate c) const {
  if (c >= 1 && static_cast<std::size_t>(c) <= labels_.size()) return labels_[static_cast<std::size_t>(c) - 1];
  return std::to_string(c);
}

std::optional<Candidate> Profile::find_label(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == name) return static_cast<Candidate>(i + 1);
  }
  return std::nullopt;
}

std::int64_t Profile::total_voters() const {
  std::int64_t n = 0;
  for (const auto& type : types_) n += type.count;
  return n;
}

std::size_t Profile::max_ballot_length() const {
  std::size_t out = 0;
  for (const auto& type : types_) out = std::max(out, type.ballot.size());
  return out;
}

std::size_t Profile::min_ballot_length() const {
  if (types_.empty()) return 0;
  std::size_t out = types_.front().ballot.size();
  for (const auto& type : types_) out = std::min(out, type.ballot.size());
  return out;
}

Profile normalize(const Profile& p) {
  std::map<Ballot, std::int64_t> merged;
  for (const auto& type : p.types()) {
    if (type.count == 0) continue;
    merged[type.ballot] += type.count;
  }
  std::vector<BallotType> types;
  types.reserve(merged.size());
  for (auto& [ballot, count] : merged) types.push_back({ballot, count});
  return Profile(p.k(), std::move(types), p.labels());
}

Profile truncate_profile(const Profile& p, int h) {
  if (h < 1 || h > p.k()) {
    throw InvalidLengthError("ballot length " + std::to_string(h) + " outside 1.." + std::to_string(p.k()));
  }
  std::vector<BallotType> types;
  types.reserve(p.types().size());
  const auto limit = static_cast<std::size_t>(h);
  for (const auto& type : p.types()) {
    const auto len = std::min(limit, type.ballot.size());
    types.push_back({Ballot(type.ballot.begin(), type.ballot.begin() + static_cast<std::ptrdiff_t>(len)), type.count});
  }
  return normalize(Profile(p.k(), std::move(types), p.labels()));
}

std::int64_t total_voters(const Profile& p) { return p.total_voters(); }

Profile profile_from_named(const std::vector<std::string>& labels,
                           const std::vector<std::pair<std::int64_t, std::vector<std::string>>>& ballots) {
  std::map<std::string, Candidate> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<Candidate>(i + 1);
  std::vector<BallotType> types;
  for (const auto& [count, names] : ballots) {
    Ballot ballot;
    for (const auto& name : names) {
      auto it = index.find(name);
      if (it == index.end()) throw ValidationError("unknown candidate '" + name + "'");
      ballot.push_back(it->second);
    }
    types.push_back({std::move(ballot), count});
  }
  return normalize(Profile(static_cast<int>(labels.size()), std::move(types), labels));
}

WeightedProfile::WeightedProfile(int k, std::vector<WeightedBallotType> types) : k_(k), types_(std::move(types)) {
  if (k_ < 0) throw ValidationError("negative candidate count");
  for (const auto& type : types_) {
    if (sgn(type.weight) < 0) throw ValidationError("negative ballot weight");
    validate_ballot(type.ballot, k_);
  }
}

Rational WeightedProfile::total_weight() const {
  Rational total = 0;
  for (const auto& type : types_) total += type.weight;
  return total;
}

WeightedProfile truncate_profile(const WeightedProfile& p, int h) {
  if (h < 1 || h > p.k()) {
    throw InvalidLengthError("ballot length " + std::to_string(h) + " outside 1.." + std::to_string(p.k()));
  }
  std::map<Ballot, Rational> merged;
  const auto limit = static_cast<std::size_t>(h);
  for (const auto& type : p.types()) {
    const auto len = std::min(limit, type.ballot.size());
    merged[Ballot(type.ballot.begin(), type.ballot.begin() + static_cast<std::ptrdiff_t>(len))] += type.weight;
  }
  std::vector<WeightedBallotType> types;
  for (auto& [ballot, weight] : merged) {
    if (sgn(weight) > 0) types.push_back({ballot, weight});
  }
  return WeightedProfile(p.k(), std::move(types));
}

std::optional<Profile> to_integer_profile(const WeightedProfile& p) {
  mpz_class denominator = 1;
  for (const auto& type : p.types()) {
    mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), type.weight.get_den_mpz_t());
  }
  const mpz_class limit = mpz_class(1) << 62;
  std::vector<BallotType> types;
  types.reserve(p.types().size());
  mpz_class total = 0;
  for (const auto& type : p.types()) {
    mpz_class scaled = type.weight.get_num() * (denominator / type.weight.get_den());
    total += scaled;
    if (total > limit) return std::nullopt;
    types.push_back({type.ballot, static_cast<std::int64_t>(scaled.get_si())});
  }
  return normalize(Profile(p.k(), std::move(types)));
}

}  // namespace irvlab
