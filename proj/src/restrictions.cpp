#include "irvlab/restrictions.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "irvlab/errors.hpp"

namespace irvlab {

namespace {

std::vector<int> axis_positions(int k, const Axis& axis) {
  if (axis.size() != static_cast<std::size_t>(k)) throw DomainError("axis does not cover all candidates");
  std::vector<int> pos(static_cast<std::size_t>(k) + 1, -1);
  for (std::size_t i = 0; i < axis.size(); ++i) {
    const Candidate c = axis[i];
    if (c < 1 || c > k || pos[static_cast<std::size_t>(c)] != -1) throw DomainError("axis is not a permutation");
    pos[static_cast<std::size_t>(c)] = static_cast<int>(i);
  }
  return pos;
}

bool ballot_single_peaked(const Ballot& ballot, const std::vector<int>& pos) {
  int lo = pos[static_cast<std::size_t>(ballot.front())];
  int hi = lo;
  for (std::size_t r = 1; r < ballot.size(); ++r) {
    const int at = pos[static_cast<std::size_t>(ballot[r])];
    if (at == lo - 1) {
      lo = at;
    } else if (at == hi + 1) {
      hi = at;
    } else {
      return false;
    }
  }
  return true;
}

template <class Types>
bool all_single_peaked(int k, const Types& types, const Axis& axis) {
  const auto pos = axis_positions(k, axis);
  return std::all_of(types.begin(), types.end(), [&](const auto& t) { return ballot_single_peaked(t.ballot, pos); });
}

class AxisSearch {
 public:
  AxisSearch(const Profile& p) : k_(p.k()) {
    constexpr int unranked = std::numeric_limits<int>::max();
    for (const auto& type : p.types()) {
      std::vector<int> rank(static_cast<std::size_t>(k_) + 1, unranked);
      for (std::size_t r = 0; r < type.ballot.size(); ++r) rank[static_cast<std::size_t>(type.ballot[r])] = static_cast<int>(r);
      ranks_.push_back(std::move(rank));
      tops_.push_back(type.ballot.front());
    }
    used_.assign(static_cast<std::size_t>(k_) + 1, 0);
  }

  std::optional<Axis> run() {
    if (k_ == 0) return Axis{};
    if (extend()) return axis_;
    return std::nullopt;
  }

 private:
  // Placing x at the right end can only complete violating triples in which
  // x is an endpoint: x the top with a ranked j to its left, or x ranked with
  // the top to its left.
  bool consistent_with(Candidate x) const {
    const std::size_t n = axis_.size();
    for (std::size_t b = 0; b < ranks_.size(); ++b) {
      const auto& rank = ranks_[b];
      const Candidate top = tops_[b];
      const int rx = rank[static_cast<std::size_t>(x)];
      if (x == top) {
        for (std::size_t q = 0; q < n; ++q) {
          const int rj = rank[static_cast<std::size_t>(axis_[q])];
          if (rj == std::numeric_limits<int>::max()) continue;
          for (std::size_t m = q + 1; m < n; ++m) {
            if (rank[static_cast<std::size_t>(axis_[m])] > rj) return false;
          }
        }
      } else if (rx != std::numeric_limits<int>::max()) {
        std::size_t tpos = n;
        for (std::size_t q = 0; q < n; ++q) {
          if (axis_[q] == top) tpos = q;
        }
        if (tpos == n) continue;
        for (std::size_t m = tpos + 1; m < n; ++m) {
          if (rank[static_cast<std::size_t>(axis_[m])] > rx) return false;
        }
      }
    }
    return true;
  }

  bool extend() {
    if (axis_.size() == static_cast<std::size_t>(k_)) return axis_.front() <= axis_.back();
    for (Candidate x = 1; x <= k_; ++x) {
      if (used_[static_cast<std::size_t>(x)] || !consistent_with(x)) continue;
      used_[static_cast<std::size_t>(x)] = 1;
      axis_.push_back(x);
      if (extend()) return true;
      axis_.pop_back();
      used_[static_cast<std::size_t>(x)] = 0;
    }
    return false;
  }

  int k_;
  std::vector<std::vector<int>> ranks_;
  std::vector<Candidate> tops_;
  std::vector<char> used_;
  Axis axis_;
};

// Position of each candidate in a ballot, or -1 when unranked.
std::vector<int> ballot_ranks(const Ballot& ballot, int k) {
  std::vector<int> rank(static_cast<std::size_t>(k) + 1, -1);
  for (std::size_t r = 0; r < ballot.size(); ++r) rank[static_cast<std::size_t>(ballot[r])] = static_cast<int>(r);
  return rank;
}

}  // namespace

bool is_single_peaked_on_axis(const Profile& p, const Axis& axis) { return all_single_peaked(p.k(), p.types(), axis); }

bool is_single_peaked_on_axis(const WeightedProfile& p, const Axis& axis) {
  return all_single_peaked(p.k(), p.types(), axis);
}

std::optional<Axis> find_axis(const Profile& p, int k_limit) {
  if (p.k() > k_limit) {
    throw BudgetError("axis search limited to k <= " + std::to_string(k_limit) + ", got k = " + std::to_string(p.k()));
  }
  return AxisSearch(normalize(p)).run();
}

bool is_single_crossing_sequence(const std::vector<Ballot>& ballots) {
  int k = 0;
  for (const auto& b : ballots) {
    for (Candidate c : b) k = std::max(k, c);
  }
  // Collapse runs of identical ballots; they cannot split an interval.
  std::vector<std::vector<int>> ranks;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    if (i > 0 && ballots[i] == ballots[i - 1]) continue;
    ranks.push_back(ballot_ranks(ballots[i], k));
  }
  for (Candidate a = 1; a <= k; ++a) {
    for (Candidate b = 1; b <= k; ++b) {
      if (a == b) continue;
      // 0 = not seen yet, 1 = inside the run, 2 = run closed.
      int state = 0;
      for (const auto& rank : ranks) {
        const int ra = rank[static_cast<std::size_t>(a)];
        const int rb = rank[static_cast<std::size_t>(b)];
        if (ra < 0 && rb < 0) continue;
        const bool prefers = ra >= 0 && (rb < 0 || ra < rb);
        if (prefers) {
          if (state == 2) return false;
          state = 1;
        } else if (state == 1) {
          state = 2;
        }
      }
    }
  }
  return true;
}

bool is_single_crossing_in_order(const Profile& p, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> owner;
  for (std::size_t t = 0; t < p.types().size(); ++t) owner.insert(owner.end(), static_cast<std::size_t>(p.types()[t].count), t);
  if (order.size() != owner.size()) throw DomainError("order length does not match the number of voters");
  std::vector<char> seen(owner.size(), 0);
  std::vector<Ballot> sequence;
  sequence.reserve(order.size());
  for (std::size_t e : order) {
    if (e >= owner.size() || seen[e]) throw DomainError("order is not a permutation of the voters");
    seen[e] = 1;
    sequence.push_back(p.types()[owner[e]].ballot);
  }
  return is_single_crossing_sequence(sequence);
}

bool is_single_crossing_in_order(const WeightedProfile& p) {
  std::vector<Ballot> sequence;
  for (const auto& type : p.types()) sequence.push_back(type.ballot);
  return is_single_crossing_sequence(sequence);
}

EuclideanSpec parse_euclidean_spec(std::string_view text) {
  EuclideanSpec spec;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    spec.candidate_positions.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return spec;
}

Axis euclidean_axis(const EuclideanSpec& spec) {
  Axis axis(spec.candidate_positions.size());
  std::iota(axis.begin(), axis.end(), 1);
  std::stable_sort(axis.begin(), axis.end(), [&](Candidate a, Candidate b) {
    return spec.candidate_positions[static_cast<std::size_t>(a) - 1] <
           spec.candidate_positions[static_cast<std::size_t>(b) - 1];
  });
  return axis;
}

WeightedProfile euclidean_profile(const EuclideanSpec& spec) {
  const auto& pos = spec.candidate_positions;
  const int k = static_cast<int>(pos.size());
  if (k < 1) throw SpecError("no candidate positions");
  for (const auto& x : pos) {
    if (x < 0 || x > 1) throw SpecError("candidate position " + to_string(x) + " outside [0,1]");
  }
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (std::size_t a = 0; a < pos.size(); ++a) {
    for (std::size_t b = a + 1; b < pos.size(); ++b) {
      if (pos[a] == pos[b]) throw SpecError("duplicate candidate position " + to_string(pos[a]));
      cuts.push_back((pos[a] + pos[b]) / 2);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<WeightedBallotType> types;
  std::vector<Rational> dist(pos.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational x = (cuts[i] + cuts[i + 1]) / 2;
    for (std::size_t c = 0; c < pos.size(); ++c) dist[c] = abs(x - pos[c]);
    Ballot ranking(pos.size());
    std::iota(ranking.begin(), ranking.end(), 1);
    std::sort(ranking.begin(), ranking.end(), [&](Candidate a, Candidate b) {
      return dist[static_cast<std::size_t>(a) - 1] < dist[static_cast<std::size_t>(b) - 1];
    });
    types.push_back({std::move(ranking), Rational(cuts[i + 1] - cuts[i])});
  }
  return WeightedProfile(k, std::move(types));
}

Profile random_single_peaked_profile(int k, std::int64_t n, std::mt19937_64& rng, bool partial) {
  if (k < 1) throw DomainError("need at least one candidate");
  std::uniform_int_distribution<int> peak(1, k);
  std::uniform_int_distribution<int> length(1, k);
  std::bernoulli_distribution go_left(0.5);
  std::map<Ballot, std::int64_t> counts;
  for (std::int64_t v = 0; v < n; ++v) {
    const int top = peak(rng);
    const int len = partial ? length(rng) : k;
    Ballot b{top};
    int lo = top;
    int hi = top;
    while (static_cast<int>(b.size()) < len) {
      const bool left = lo > 1 && (hi == k || go_left(rng));
      b.push_back(left ? --lo : ++hi);
    }
    ++counts[b];
  }
  std::vector<BallotType> types;
  for (auto& [b, c] : counts) types.push_back({b, c});
  return Profile(k, std::move(types));
}

SingleCrossingSample random_single_crossing_profile(int k, std::int64_t n, std::mt19937_64& rng, bool partial) {
  if (k < 1) throw DomainError("need at least one candidate");
  Ballot current(static_cast<std::size_t>(k));
  std::iota(current.begin(), current.end(), 1);
  std::shuffle(current.begin(), current.end(), rng);
  // flipped[a][b]: the pair has already swapped once along the walk.
  std::vector<std::vector<char>> flipped(static_cast<std::size_t>(k) + 1, std::vector<char>(static_cast<std::size_t>(k) + 1, 0));
  std::vector<Ballot> path{current};
  while (true) {
    std::vector<std::size_t> options;
    for (std::size_t i = 0; i + 1 < current.size(); ++i) {
      if (!flipped[static_cast<std::size_t>(current[i])][static_cast<std::size_t>(current[i + 1])]) options.push_back(i);
    }
    if (options.empty()) break;
    const std::size_t i = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    flipped[static_cast<std::size_t>(current[i])][static_cast<std::size_t>(current[i + 1])] = 1;
    flipped[static_cast<std::size_t>(current[i + 1])][static_cast<std::size_t>(current[i])] = 1;
    std::swap(current[i], current[i + 1]);
    path.push_back(current);
  }
  std::uniform_int_distribution<std::size_t> where(0, path.size() - 1);
  std::vector<std::size_t> picks(static_cast<std::size_t>(n));
  for (auto& p : picks) p = where(rng);
  std::sort(picks.begin(), picks.end());

  std::uniform_int_distribution<int> length(1, k);
  SingleCrossingSample out;
  std::map<Ballot, std::int64_t> counts;
  for (std::size_t p : picks) {
    Ballot b = path[p];
    if (partial) b.resize(static_cast<std::size_t>(length(rng)));
    ++counts[b];
    out.sequence.push_back(std::move(b));
  }
  std::vector<BallotType> types;
  for (auto& [b, c] : counts) types.push_back({b, c});
  out.profile = Profile(k, std::move(types));
  return out;
}

}  // namespace irvlab
