#include "irvlab/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "irvlab/errors.hpp"
#include "irvlab/truncation.hpp"

namespace irvlab {

namespace {

void require_feasible(const TargetSequence& t) {
  if (!is_feasible(t)) throw FeasibilityError("winner sequence is not feasible: some w_h <= h");
}

// Accumulates ballots as a map so repeated additions merge.
class BallotSink {
 public:
  void add(Ballot ballot, std::int64_t count) {
    if (count > 0) counts_[std::move(ballot)] += count;
  }
  Profile finish(int k) const {
    std::vector<BallotType> types;
    types.reserve(counts_.size());
    for (const auto& [ballot, count] : counts_) types.push_back({ballot, count});
    return normalize(Profile(k, std::move(types)));
  }

 private:
  std::map<Ballot, std::int64_t> counts_;
};

std::string describe(const std::vector<Candidate>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seq[i]);
  }
  return out;
}

void verify_winners(const Profile& p, const std::vector<Candidate>& w, const char* what) {
  for (std::size_t h = 1; h <= w.size(); ++h) {
    const Candidate got = irv_winner(p, static_cast<int>(h));
    if (got != w[h - 1]) {
      throw ConstructionError(std::string(what) + ": winner at h=" + std::to_string(h) + " is " + std::to_string(got) +
                              ", expected " + std::to_string(w[h - 1]) + " (target " + describe(w) + ")");
    }
  }
}

void verify_class(const Profile& p, TieClassValue required, int max_h, const char* what) {
  const auto cls = classify_ties(p, kDefaultBranchBudget, max_h);
  if (!at_least(cls.value, required)) {
    throw ConstructionError(std::string(what) + ": tie class is " + std::string(to_string(cls.value)) +
                            ", expected at least " + std::string(to_string(required)));
  }
}

void verify_voters(const Profile& p, std::int64_t expected, const char* what) {
  if (p.total_voters() != expected) {
    throw ConstructionError(std::string(what) + ": " + std::to_string(p.total_voters()) + " voters, expected " +
                            std::to_string(expected));
  }
}

// The ballot prefix shared by all of S_i: i first, then 1..i-1.
Ballot s_prefix(Candidate i) {
  Ballot b{i};
  for (Candidate c = 1; c < i; ++c) b.push_back(c);
  return b;
}

Profile ctf_k3(const TargetSequence& t) {
  const Candidate w1 = t.w[0];
  const Candidate other = w1 == 2 ? 3 : 2;
  std::map<Candidate, std::int64_t> first{{1, 2}, {w1, 4}, {other, 3}};
  BallotSink sink;
  sink.add({1, 3}, first[1]);
  sink.add({2, 1}, first[2]);
  sink.add({3, 1, 2}, first[3]);
  return sink.finish(3);
}

Profile ctf_raw(const TargetSequence& t) {
  const int k = t.k;
  if (k == 3) return ctf_k3(t);
  auto w = [&](int i) { return t.w[static_cast<std::size_t>(i) - 1]; };
  const std::int64_t base = 2 * (k - 2) + 1;
  BallotSink sink;
  for (Candidate i = 1; i <= k; ++i) {
    std::int64_t size = base;
    if (i == w(1)) {
      size += 2;
    } else if (i != 1) {
      size += 1;
    }
    const Ballot prefix = s_prefix(i);
    std::int64_t used = 0;
    if (i < k) {
      std::map<Candidate, std::int64_t> next;
      for (Candidate l = i + 2; l <= k; ++l) {
        if (l != w(i)) next[l] += 2;
      }
      if (w(i) != i + 1) next[w(i)] += 1;
      if (i <= k - 2) next[w(i + 1)] += 1;
      for (const auto& [c, n] : next) {
        Ballot b = prefix;
        b.push_back(c);
        sink.add(std::move(b), n);
        used += n;
      }
    }
    if (used > size) throw ConstructionError("S_" + std::to_string(i) + " needs more ballots than it has");
    sink.add(prefix, size - used);
  }
  return sink.finish(k);
}

Profile tie_free_raw(const TargetSequence& t) {
  const int k = t.k;
  auto w = [&](int i) { return t.w[static_cast<std::size_t>(i) - 1]; };
  const auto f = f_sequence(t);
  const std::int64_t base = static_cast<std::int64_t>(k - 2) * (k - 1);

  std::vector<std::int64_t> size(static_cast<std::size_t>(k) + 1, 0);
  for (int j = 1; j <= k; ++j) size[static_cast<std::size_t>(f.order[static_cast<std::size_t>(j) - 1])] = base + k - j;
  // Tallies as IRV would see them with unbounded ballot length.
  std::vector<std::int64_t> tally = size;

  // Next h > i at which w_h == c, or 0.
  auto next_win = [&](int i, Candidate c) {
    for (int h = i + 1; h <= k - 1; ++h) {
      if (w(h) == c) return h;
    }
    return 0;
  };

  BallotSink sink;
  for (Candidate i = 1; i <= k; ++i) {
    const Ballot prefix = s_prefix(i);
    std::map<Candidate, std::int64_t> next;
    if (i <= k - 2 && w(i) != w(i + 1)) {
      // Remaining candidates other than i, by decreasing tally.
      std::vector<Candidate> order;
      for (Candidate c = i + 1; c <= k; ++c) order.push_back(c);
      std::sort(order.begin(), order.end(), [&](Candidate a, Candidate b) {
        return tally[static_cast<std::size_t>(a)] > tally[static_cast<std::size_t>(b)];
      });
      const Candidate wi = w(i);
      const auto tw = tally[static_cast<std::size_t>(wi)];
      if (wi == i + 1) {
        for (Candidate c = i + 2; c <= k; ++c) next[c] = k - i;
      } else if (const int again = next_win(i, wi); again > 0) {
        std::set<Candidate> seen;
        Candidate wj = 0;
        for (int h = i + 1; h < again; ++h) {
          if (seen.insert(w(h)).second) wj = w(h);
        }
        const std::int64_t c = tw - tally[static_cast<std::size_t>(wj)];
        bool above = true;
        for (Candidate x : order) {
          if (x == wi) continue;
          next[x] = above ? c + 1 : c;
          if (x == wj) above = false;
        }
      } else {
        std::set<Candidate> future;
        for (int h = i + 1; h <= k - 1; ++h) future.insert(w(h));
        Candidate j = 0;
        for (Candidate x = i + 1; x < wi; ++x) {
          if (!future.count(x)) j = x;
        }
        if (j == 0) throw ConstructionError("no loser below w_" + std::to_string(i));
        const auto tj = tally[static_cast<std::size_t>(j)];
        const std::int64_t c = tw - tj;
        for (Candidate x : order) {
          if (x == wi) continue;
          next[x] = tally[static_cast<std::size_t>(x)] > tj ? c : c - 1;
        }
      }
    }
    std::int64_t used = 0;
    for (const auto& [c, n] : next) {
      if (n <= 0) continue;
      Ballot b = prefix;
      b.push_back(c);
      sink.add(std::move(b), n);
      tally[static_cast<std::size_t>(c)] += n;
      used += n;
    }
    const auto own = size[static_cast<std::size_t>(i)];
    if (used > own) throw ConstructionError("S_" + std::to_string(i) + " needs more ballots than it has");
    sink.add(prefix, own - used);
    tally[static_cast<std::size_t>(i)] = 0;
  }
  return sink.finish(k);
}

Profile k_types_raw(int k) {
  const std::int64_t x = static_cast<std::int64_t>(2 * k - 4) * (k - 2);
  BallotSink sink;
  for (Candidate j = 2; j <= k - 1; ++j) sink.add({k, j}, 2 * k - 4);

  Ballot long_km1{k - 1};
  for (Candidate c = 2; c <= k - 2; ++c) long_km1.push_back(c);
  sink.add(long_km1, 2 * k);
  sink.add({k - 1}, x + 3 - 2 * k);

  for (Candidate i = 1; i <= k - 2; ++i) {
    const std::int64_t first = i == 1 ? x + 2 * (k - 1) : x + 2 * i;
    Ballot b{i, k};
    for (Candidate c = 1; c < i; ++c) b.push_back(c);
    b.push_back(k - 1);
    sink.add(b, 2);
    sink.add({i}, first - 2);
  }
  return sink.finish(k);
}

}  // namespace

bool is_feasible(const TargetSequence& t) {
  if (t.k < 2) throw DomainError("target sequence needs k >= 2");
  if (t.w.size() != static_cast<std::size_t>(t.k) - 1) {
    throw DomainError("target sequence has length " + std::to_string(t.w.size()) + ", expected " +
                      std::to_string(t.k - 1));
  }
  for (std::size_t h = 1; h <= t.w.size(); ++h) {
    const Candidate c = t.w[h - 1];
    if (c < static_cast<Candidate>(h) + 1 || c > t.k) return false;
  }
  return true;
}

std::int64_t voter_lower_bound(int k, TieClassValue cls) {
  if (k < 3) throw DomainError("voter lower bounds need k >= 3");
  const std::int64_t kk = k;
  switch (cls) {
    case TieClassValue::ConsequentialTieFree: return k == 3 ? 9 : 2 * kk * kk - 2 * kk;
    case TieClassValue::EliminationTieFree: return (kk * kk * kk - 3 * kk) / 2;
    case TieClassValue::TieFree: return (2 * kk * kk * kk - 5 * kk * kk + 3 * kk) / 2;
    default: throw DomainError("no voter lower bound for class " + std::string(to_string(cls)));
  }
}

Profile build_ctf(const TargetSequence& t) {
  require_feasible(t);
  if (t.k < 3) throw DomainError("build_ctf needs k >= 3");
  Profile p = ctf_raw(t);
  verify_voters(p, voter_lower_bound(t.k, TieClassValue::ConsequentialTieFree), "build_ctf");
  verify_winners(p, t.w, "build_ctf");
  verify_class(p, TieClassValue::ConsequentialTieFree, 0, "build_ctf");
  return p;
}

FSequence f_sequence(const TargetSequence& t) {
  require_feasible(t);
  FSequence out;
  std::vector<char> used(static_cast<std::size_t>(t.k) + 1, 0);
  for (Candidate c : t.w) {
    if (!used[static_cast<std::size_t>(c)]) {
      used[static_cast<std::size_t>(c)] = 1;
      out.order.push_back(c);
    }
  }
  out.winner_prefix_len = static_cast<int>(out.order.size());
  for (Candidate c = t.k; c >= 1; --c) {
    if (!used[static_cast<std::size_t>(c)]) out.order.push_back(c);
  }
  return out;
}

Profile build_tie_free(const TargetSequence& t) {
  require_feasible(t);
  if (t.k < 3) throw DomainError("build_tie_free needs k >= 3");
  Profile p = tie_free_raw(t);
  verify_voters(p, voter_lower_bound(t.k, TieClassValue::TieFree), "build_tie_free");
  verify_winners(p, t.w, "build_tie_free");
  verify_class(p, TieClassValue::TieFree, 0, "build_tie_free");
  return p;
}

SinglePeakedConstruction build_single_peaked(int kappa) {
  if (kappa < 3) throw DomainError("build_single_peaked needs kappa >= 3");
  const int k = kappa * (kappa + 1) / 2;
  BallotSink sink;
  std::vector<Candidate> axis{1};
  Candidate next_filler = kappa + 1;
  sink.add({1}, kappa + 2);
  for (Candidate i = 2; i <= kappa; ++i) {
    Ballot filler_ballot;
    for (int f = 1; f < i; ++f) {
      axis.push_back(next_filler);
      filler_ballot.push_back(next_filler++);
    }
    axis.push_back(i);
    filler_ballot.push_back(i);
    sink.add(filler_ballot, i);
    sink.add({i}, kappa + 1);
  }
  Profile p = sink.finish(k);

  verify_voters(p, 3 * static_cast<std::int64_t>(kappa) * (kappa + 1) / 2, "build_single_peaked");
  std::vector<Candidate> w;
  for (int h = 1; h < k; ++h) w.push_back(std::min(h, kappa));
  verify_winners(p, w, "build_single_peaked");
  verify_class(p, TieClassValue::ConsequentialTieFree, 0, "build_single_peaked");
  return {std::move(p), std::move(axis)};
}

Profile build_k_types(int k) {
  if (k <= 3) throw DomainError("build_k_types needs k > 3");
  Profile p = k_types_raw(k);
  if (p.types().size() != static_cast<std::size_t>(3 * k - 4)) {
    throw ConstructionError("build_k_types: " + std::to_string(p.types().size()) + " types, expected " +
                            std::to_string(3 * k - 4));
  }
  std::vector<Candidate> w;
  for (Candidate h = 1; h < k; ++h) w.push_back(h);
  verify_winners(p, w, "build_k_types");
  verify_class(p, TieClassValue::TieFree, 0, "build_k_types");
  return p;
}

Profile build_min_length(int kappa, int c, const std::vector<Candidate>& w, FillVariant variant) {
  if (kappa <= 3) throw DomainError("filler constructions need kappa > 3");
  if (c < 0 || c >= kappa) throw DomainError("c must lie in 0..kappa-1");
  const int k = 2 * kappa;
  const int fillers = kappa - c;
  const int top = kappa + c;
  if (w.size() != static_cast<std::size_t>(top) - 1) {
    throw DomainError("winner sequence has length " + std::to_string(w.size()) + ", expected " +
                      std::to_string(top - 1));
  }
  TargetSequence inner{top, {}};
  for (std::size_t h = 1; h <= w.size(); ++h) {
    if (w[h - 1] < fillers + static_cast<Candidate>(h) + 1 || w[h - 1] > k) {
      throw FeasibilityError("w_" + std::to_string(h) + " must lie in " + std::to_string(fillers + h + 1) + ".." +
                             std::to_string(k));
    }
    inner.w.push_back(w[h - 1] - fillers);
  }
  const Profile base = variant == FillVariant::TieFree ? tie_free_raw(inner) : ctf_raw(inner);

  BallotSink sink;
  for (const auto& type : base.types()) {
    Ballot b;
    for (Candidate x : type.ballot) b.push_back(x + fillers);
    for (Candidate f = 1; static_cast<int>(b.size()) < fillers; ++f) b.push_back(f);
    sink.add(std::move(b), type.count);
  }
  std::int64_t extra = 0;
  if (variant == FillVariant::TieFree) {
    // Filler t+1 heads t ballots so the fillers go out first without ties.
    for (int t = 1; t < fillers; ++t) {
      Ballot b{t + 1};
      for (int f = 0; f < t; ++f) b.push_back(f + 1);
      for (int f = fillers - 1; f > t; --f) b.push_back(f + 1);
      sink.add(std::move(b), t);
      extra += t;
    }
  }
  Profile p = sink.finish(k);

  const auto cls = variant == FillVariant::TieFree ? TieClassValue::TieFree : TieClassValue::ConsequentialTieFree;
  verify_voters(p, base.total_voters() + extra, "build_min_length");
  verify_winners(p, w, "build_min_length");
  verify_class(p, cls, top - 1, "build_min_length");
  return p;
}

Profile build_full_ballot(int kappa, const std::vector<Candidate>& w, FillVariant variant) {
  const Profile padded = build_min_length(kappa, 0, w, variant);
  const int k = padded.k();
  BallotSink sink;
  for (const auto& type : padded.types()) {
    Ballot b = type.ballot;
    std::vector<char> present(static_cast<std::size_t>(k) + 1, 0);
    for (Candidate x : b) present[static_cast<std::size_t>(x)] = 1;
    for (Candidate x = 1; x <= k; ++x) {
      if (!present[static_cast<std::size_t>(x)]) b.push_back(x);
    }
    sink.add(std::move(b), type.count);
  }
  Profile p = sink.finish(k);
  const auto cls = variant == FillVariant::TieFree ? TieClassValue::TieFree : TieClassValue::ConsequentialTieFree;
  verify_winners(p, w, "build_full_ballot");
  verify_class(p, cls, kappa - 1, "build_full_ballot");
  return p;
}

}  // namespace irvlab
