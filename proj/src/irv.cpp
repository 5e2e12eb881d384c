#include "irvlab/irv.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <string>
#include <unordered_map>

#include "irvlab/errors.hpp"

namespace irvlab {

TieBreakKind parse_tie_break_kind(std::string_view name) {
  if (name == "min") return TieBreakKind::LexicographicMin;
  if (name == "max") return TieBreakKind::LexicographicMax;
  if (name == "random") return TieBreakKind::SeededRandom;
  if (name == "script") return TieBreakKind::Scripted;
  throw DomainError("unknown tie-break policy '" + std::string(name) + "'");
}

std::string_view to_string(TieClassValue value) {
  switch (value) {
    case TieClassValue::TieFree: return "tie-free";
    case TieClassValue::EliminationTieFree: return "elimination-tie-free";
    case TieClassValue::ConsequentialTieFree: return "consequential-tie-free";
    case TieClassValue::HasConsequentialTies: return "consequential-ties";
    case TieClassValue::Unknown: return "unknown";
  }
  return "unknown";
}

bool at_least(TieClassValue value, TieClassValue required) {
  auto rank = [](TieClassValue v) {
    switch (v) {
      case TieClassValue::TieFree: return 3;
      case TieClassValue::EliminationTieFree: return 2;
      case TieClassValue::ConsequentialTieFree: return 1;
      default: return 0;
    }
  };
  return rank(value) >= rank(required) && rank(required) > 0;
}

namespace {

class TieBreaker {
 public:
  explicit TieBreaker(const TieBreakPolicy& policy) : policy_(policy), rng_(policy.seed) {}

  Candidate choose(const std::vector<Candidate>& tied) {
    if (tied.size() == 1) return tied.front();
    switch (policy_.kind) {
      case TieBreakKind::LexicographicMin: return tied.front();
      case TieBreakKind::LexicographicMax: return tied.back();
      case TieBreakKind::SeededRandom: {
        std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
        return tied[pick(rng_)];
      }
      case TieBreakKind::Scripted: {
        if (next_ >= policy_.script.size()) throw PolicyError("tie-break script exhausted", tied);
        Candidate c = policy_.script[next_++];
        if (!std::binary_search(tied.begin(), tied.end(), c)) {
          throw PolicyError("scripted choice " + std::to_string(c) + " is not among the tied candidates", tied);
        }
        return c;
      }
    }
    return tied.front();
  }

 private:
  const TieBreakPolicy& policy_;
  std::mt19937_64 rng_;
  std::size_t next_ = 0;
};

template <class W>
struct CoreResult {
  Candidate winner = 0;
  bool any_tally_tie = false;
  bool any_elim_tie = false;
  std::vector<Candidate> order;
  std::vector<BasicRoundRecord<W>> rounds;
};

// `access(i)` yields (ballot span, weight) for type i. Ballots are read to at
// most `depth` entries.
template <class W, class Access>
CoreResult<W> run_core(int k, std::size_t n_types, Access access, std::size_t depth, const TieBreakPolicy& policy,
                       bool record) {
  if (k < 1) throw NoWinnerError("profile has no candidates");
  const auto kk = static_cast<std::size_t>(k);
  std::vector<W> tally(kk + 1, W(0));
  std::vector<char> eliminated(kk + 1, 0);
  std::vector<std::vector<std::uint32_t>> bucket(kk + 1);
  std::vector<std::uint32_t> cursor(n_types, 0);
  W total(0);
  W exhausted(0);

  for (std::size_t i = 0; i < n_types; ++i) {
    auto [ballot, w] = access(i);
    if (w == 0) continue;
    const auto c = static_cast<std::size_t>(ballot[0]);
    tally[c] += w;
    total += w;
    bucket[c].push_back(static_cast<std::uint32_t>(i));
  }
  if (total == 0) throw NoWinnerError("profile has no voters");

  std::vector<Candidate> remaining;
  remaining.reserve(kk);
  for (Candidate c = 1; c <= k; ++c) remaining.push_back(c);

  CoreResult<W> out;
  out.order.reserve(kk);
  TieBreaker breaker(policy);
  std::vector<Candidate> tied;
  std::vector<W> sorted;
  int round = 0;

  while (remaining.size() > 1) {
    ++round;
    tied.clear();
    W low = tally[static_cast<std::size_t>(remaining.front())];
    for (Candidate c : remaining) {
      const W& t = tally[static_cast<std::size_t>(c)];
      if (t < low) {
        low = t;
        tied.clear();
      }
      if (t == low) tied.push_back(c);
    }

    sorted.clear();
    for (Candidate c : remaining) sorted.push_back(tally[static_cast<std::size_t>(c)]);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) out.any_tally_tie = true;
    if (tied.size() > 1) out.any_elim_tie = true;

    const Candidate e = breaker.choose(tied);

    if (record) {
      BasicRoundRecord<W> rec;
      rec.round = round;
      rec.tallies.reserve(remaining.size());
      for (Candidate c : remaining) rec.tallies.emplace_back(c, tally[static_cast<std::size_t>(c)]);
      rec.eliminated = e;
      rec.tie_among = tied;
      out.rounds.push_back(std::move(rec));
    }

    const auto ei = static_cast<std::size_t>(e);
    eliminated[ei] = 1;
    remaining.erase(std::find(remaining.begin(), remaining.end(), e));
    out.order.push_back(e);

    for (std::uint32_t idx : bucket[ei]) {
      auto [ballot, w] = access(idx);
      const std::size_t limit = std::min(depth, ballot.size());
      std::size_t pos = cursor[idx] + 1;
      while (pos < limit && eliminated[static_cast<std::size_t>(ballot[pos])]) ++pos;
      if (pos < limit) {
        cursor[idx] = static_cast<std::uint32_t>(pos);
        const auto next = static_cast<std::size_t>(ballot[pos]);
        tally[next] += w;
        bucket[next].push_back(idx);
      } else {
        exhausted += w;
      }
    }
    bucket[ei].clear();
    tally[ei] = W(0);

    if (record) out.rounds.back().exhausted_after = exhausted;
  }

  out.winner = remaining.front();
  return out;
}

std::size_t checked_depth(int k, int h) {
  if (h < 1 || h > k) {
    throw InvalidLengthError("ballot length " + std::to_string(h) + " outside 1.." + std::to_string(k));
  }
  return static_cast<std::size_t>(h);
}

auto profile_access(const Profile& p, std::span<const std::int64_t> counts) {
  return [&p, counts](std::size_t i) {
    const auto& type = p.types()[i];
    return std::pair<std::span<const Candidate>, std::int64_t>(type.ballot, counts.empty() ? type.count : counts[i]);
  };
}

auto weighted_access(const WeightedProfile& p) {
  return [&p](std::size_t i) {
    const auto& type = p.types()[i];
    return std::pair<std::span<const Candidate>, const Rational&>(type.ballot, type.weight);
  };
}

template <class W>
BasicEliminationTrace<W> to_trace(CoreResult<W>&& core) {
  BasicEliminationTrace<W> trace;
  trace.winner = core.winner;
  trace.rounds = std::move(core.rounds);
  trace.elimination_order = std::move(core.order);
  trace.any_tally_tie = core.any_tally_tie;
  trace.any_elim_tie = core.any_elim_tie;
  return trace;
}

}  // namespace

EliminationTrace run_irv(const Profile& p, const TieBreakPolicy& policy) {
  return run_irv_truncated(p, std::max(p.k(), 1), policy);
}

EliminationTrace run_irv_truncated(const Profile& p, int h, const TieBreakPolicy& policy) {
  if (p.k() < 1) throw NoWinnerError("profile has no candidates");
  const auto depth = checked_depth(p.k(), h);
  return to_trace(run_core<std::int64_t>(p.k(), p.types().size(), profile_access(p, {}), depth, policy, true));
}

WeightedEliminationTrace run_irv(const WeightedProfile& p, const TieBreakPolicy& policy) {
  return run_irv_truncated(p, std::max(p.k(), 1), policy);
}

WeightedEliminationTrace run_irv_truncated(const WeightedProfile& p, int h, const TieBreakPolicy& policy) {
  if (p.k() < 1) throw NoWinnerError("profile has no candidates");
  const auto depth = checked_depth(p.k(), h);
  return to_trace(run_core<Rational>(p.k(), p.types().size(), weighted_access(p), depth, policy, true));
}

Candidate irv_winner(const Profile& p, int h, const TieBreakPolicy& policy, std::span<const std::int64_t> counts) {
  if (p.k() < 1) throw NoWinnerError("profile has no candidates");
  if (!counts.empty() && counts.size() != p.types().size()) throw DomainError("count override has wrong length");
  const auto depth = checked_depth(p.k(), h);
  return run_core<std::int64_t>(p.k(), p.types().size(), profile_access(p, counts), depth, policy, false).winner;
}

WinnerProbe irv_probe(const Profile& p, int h, const TieBreakPolicy& policy) {
  if (p.k() < 1) throw NoWinnerError("profile has no candidates");
  const auto depth = checked_depth(p.k(), h);
  auto core = run_core<std::int64_t>(p.k(), p.types().size(), profile_access(p, {}), depth, policy, false);
  return {core.winner, core.any_tally_tie, core.any_elim_tie, std::move(core.order)};
}

namespace {

struct BudgetExhausted {};

// Depth-first search over tie-break choices at a fixed ballot length. The
// IRV state is determined by the set of eliminated candidates, so results
// are memoized per set.
class BranchExplorer {
 public:
  BranchExplorer(const Profile& p, int h, std::int64_t budget, std::int64_t& nodes)
      : p_(p), depth_(static_cast<std::size_t>(h)), budget_(budget), nodes_(nodes) {}

  std::vector<Candidate> reachable_winners() {
    std::string eliminated(static_cast<std::size_t>(p_.k()) + 1, '0');
    return explore(eliminated);
  }

 private:
  std::vector<Candidate> explore(std::string& eliminated) {
    if (auto it = memo_.find(eliminated); it != memo_.end()) return it->second;
    if (++nodes_ > budget_) throw BudgetExhausted{};

    const int k = p_.k();
    std::vector<Candidate> remaining;
    for (Candidate c = 1; c <= k; ++c) {
      if (eliminated[static_cast<std::size_t>(c)] == '0') remaining.push_back(c);
    }
    std::vector<Candidate> result;
    if (remaining.size() == 1) {
      result = remaining;
    } else {
      std::vector<std::int64_t> tally(static_cast<std::size_t>(k) + 1, 0);
      // live[c]: some ballot currently counting for c would move on if c went.
      std::vector<char> live(static_cast<std::size_t>(k) + 1, 0);
      for (const auto& type : p_.types()) {
        const std::size_t limit = std::min(depth_, type.ballot.size());
        std::size_t pos = 0;
        while (pos < limit && eliminated[static_cast<std::size_t>(type.ballot[pos])] == '1') ++pos;
        if (pos == limit) continue;
        const auto top = static_cast<std::size_t>(type.ballot[pos]);
        tally[top] += type.count;
        for (std::size_t next = pos + 1; next < limit; ++next) {
          if (eliminated[static_cast<std::size_t>(type.ballot[next])] == '0') {
            live[top] = 1;
            break;
          }
        }
      }
      std::int64_t low = tally[static_cast<std::size_t>(remaining.front())];
      for (Candidate c : remaining) low = std::min(low, tally[static_cast<std::size_t>(c)]);
      std::vector<Candidate> tied;
      bool inert = true;
      for (Candidate c : remaining) {
        if (tally[static_cast<std::size_t>(c)] == low) {
          tied.push_back(c);
          if (live[static_cast<std::size_t>(c)]) inert = false;
        }
      }

      if (tied.size() == 1) {
        result = descend(eliminated, tied);
      } else if (inert) {
        // Eliminating an inert tied candidate moves no ballots, so the rest
        // of the tie stays at the minimum and goes next in some order. Only
        // the case where the tie is everyone left lets the order matter.
        if (tied.size() == remaining.size()) {
          result = tied;
        } else {
          result = descend(eliminated, tied);
        }
      } else {
        for (Candidate c : tied) {
          auto sub = descend(eliminated, {c});
          result.insert(result.end(), sub.begin(), sub.end());
        }
        std::sort(result.begin(), result.end());
        result.erase(std::unique(result.begin(), result.end()), result.end());
      }
    }
    memo_.emplace(eliminated, result);
    return result;
  }

  std::vector<Candidate> descend(std::string& eliminated, const std::vector<Candidate>& drop) {
    for (Candidate c : drop) eliminated[static_cast<std::size_t>(c)] = '1';
    auto out = explore(eliminated);
    for (Candidate c : drop) eliminated[static_cast<std::size_t>(c)] = '0';
    return out;
  }

  const Profile& p_;
  std::size_t depth_;
  std::int64_t budget_;
  std::int64_t& nodes_;
  std::unordered_map<std::string, std::vector<Candidate>> memo_;
};

}  // namespace

TieClass classify_ties(const Profile& p, std::int64_t branch_budget, int max_h) {
  if (branch_budget < 1) throw DomainError("branch budget must be at least 1");
  const int k = p.k();
  int last_h = k - 1;
  if (max_h > 0) last_h = std::min(last_h, max_h);
  if (last_h < 1) return {TieClassValue::TieFree, 0};
  if (p.total_voters() == 0) return {TieClassValue::HasConsequentialTies, 0};

  bool tally_tie = false;
  bool elim_tie = false;
  for (int h = 1; h <= last_h; ++h) {
    auto probe = irv_probe(p, h);
    tally_tie = tally_tie || probe.any_tally_tie;
    elim_tie = elim_tie || probe.any_elim_tie;
  }
  if (!tally_tie) return {TieClassValue::TieFree, 0};
  if (!elim_tie) return {TieClassValue::EliminationTieFree, 0};

  std::int64_t nodes = 0;
  for (int h = 1; h <= last_h; ++h) {
    BranchExplorer explorer(p, h, branch_budget, nodes);
    try {
      if (explorer.reachable_winners().size() > 1) return {TieClassValue::HasConsequentialTies, nodes};
    } catch (const BudgetExhausted&) {
      return {TieClassValue::Unknown, nodes};
    }
  }
  return {TieClassValue::ConsequentialTieFree, nodes};
}

Profile apply_permutation(const Profile& p, const std::vector<Candidate>& permutation) {
  if (permutation.size() != static_cast<std::size_t>(p.k())) throw DomainError("permutation size does not match k");
  std::vector<BallotType> types;
  types.reserve(p.types().size());
  for (const auto& type : p.types()) {
    Ballot ballot;
    ballot.reserve(type.ballot.size());
    for (Candidate c : type.ballot) ballot.push_back(permutation[static_cast<std::size_t>(c) - 1]);
    types.push_back({std::move(ballot), type.count});
  }
  std::vector<std::string> labels;
  if (p.has_labels()) {
    labels.resize(p.labels().size());
    for (std::size_t old = 0; old < permutation.size(); ++old) {
      labels[static_cast<std::size_t>(permutation[old]) - 1] = p.labels()[old];
    }
  }
  return normalize(Profile(p.k(), std::move(types), std::move(labels)));
}

Relabeling relabel_by_elimination(const Profile& p) {
  auto trace = run_irv(p);
  std::vector<Candidate> permutation(static_cast<std::size_t>(p.k()), 0);
  Candidate next = 1;
  for (Candidate c : trace.elimination_order) permutation[static_cast<std::size_t>(c) - 1] = next++;
  permutation[static_cast<std::size_t>(trace.winner) - 1] = next;
  return {apply_permutation(p, permutation), permutation, trace.any_elim_tie};
}

void write_trace_csv_header(std::ostream& out) {
  out << "h,round,candidate,tally,eliminated_flag,exhausted_after\n";
}

void write_trace_csv_rows(std::ostream& out, int h, const EliminationTrace& trace, const Profile& labels_from) {
  for (const auto& round : trace.rounds) {
    for (const auto& [c, tally] : round.tallies) {
      out << h << ',' << round.round << ',' << labels_from.label(c) << ',' << tally << ','
          << (c == round.eliminated ? 1 : 0) << ',' << round.exhausted_after << '\n';
    }
  }
}

}  // namespace irvlab
