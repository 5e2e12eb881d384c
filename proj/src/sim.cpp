#include "irvlab/sim.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "irvlab/errors.hpp"
#include "irvlab/irv.hpp"
#include "irvlab/parallel.hpp"
#include "irvlab/random.hpp"
#include "irvlab/restrictions.hpp"

namespace irvlab {

namespace {

struct TrialOutcome {
  // winners[h - 1] for h = 1..k; the last entry is the full-length winner.
  std::vector<Candidate> winners;
  bool tie = false;
};

TrialOutcome run_trial(const SimConfig& cfg, int k, std::int64_t trial) {
  const Profile p = trial_profile(cfg, k, trial);
  TrialOutcome out;
  out.winners.reserve(static_cast<std::size_t>(k));
  for (int h = 1; h <= k; ++h) {
    const auto probe = irv_probe(p, h);
    out.winners.push_back(probe.winner);
    out.tie = out.tie || probe.any_elim_tie;
  }
  return out;
}

// Runs every (k, trial) pair; results[k - k_min][trial].
std::vector<std::vector<TrialOutcome>> run_all(const SimConfig& cfg) {
  validate(cfg);
  const auto ks = static_cast<std::size_t>(cfg.k_max - cfg.k_min + 1);
  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<std::vector<TrialOutcome>> results(ks, std::vector<TrialOutcome>(trials));
  parallel_for(ks * trials, cfg.threads, [&](std::size_t i) {
    const auto ki = i / trials;
    const auto t = i % trials;
    results[ki][t] = run_trial(cfg, cfg.k_min + static_cast<int>(ki), static_cast<std::int64_t>(t));
  });
  return results;
}

}  // namespace

std::string_view to_string(PreferenceKind kind) {
  return kind == PreferenceKind::UniformGeneral ? "uniform" : "euclidean";
}

std::string_view to_string(BallotKind kind) { return kind == BallotKind::Full ? "full" : "truncated"; }

PreferenceKind parse_preference_kind(std::string_view name) {
  if (name == "uniform") return PreferenceKind::UniformGeneral;
  if (name == "euclidean") return PreferenceKind::Euclidean1D;
  throw DomainError("unknown preference kind '" + std::string(name) + "'");
}

BallotKind parse_ballot_kind(std::string_view name) {
  if (name == "full") return BallotKind::Full;
  if (name == "truncated") return BallotKind::VoluntarilyTruncated;
  throw DomainError("unknown ballot kind '" + std::string(name) + "'");
}

void validate(const SimConfig& cfg) {
  if (cfg.k_min < 2 || cfg.k_max < cfg.k_min) throw DomainError("k range must satisfy 2 <= k_min <= k_max");
  if (cfg.trials < 1) throw DomainError("trials must be at least 1");
  if (cfg.n_voters < 1) throw DomainError("n_voters must be at least 1");
}

Profile uniform_profile(int k, std::int64_t n, std::uint64_t seed) {
  if (k < 1) throw DomainError("uniform_profile needs k >= 1");
  auto rng = make_rng(seed, 0);
  std::map<Ballot, std::int64_t> counts;
  Ballot ballot(static_cast<std::size_t>(k));
  for (std::int64_t v = 0; v < n; ++v) {
    std::iota(ballot.begin(), ballot.end(), 1);
    for (std::size_t i = ballot.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(ballot[i - 1], ballot[pick(rng)]);
    }
    ++counts[ballot];
  }
  std::vector<BallotType> types;
  types.reserve(counts.size());
  for (auto& [b, c] : counts) types.push_back({b, c});
  return Profile(k, std::move(types));
}

Profile voluntary_truncate(const Profile& p, std::uint64_t seed) {
  if (p.k() <= 1) return p;
  auto rng = make_rng(seed, 1);
  std::uniform_int_distribution<int> length(1, p.k());
  std::map<Ballot, std::int64_t> counts;
  for (const auto& type : p.types()) {
    std::vector<std::int64_t> by_length(type.ballot.size() + 1, 0);
    for (std::int64_t v = 0; v < type.count; ++v) {
      const auto len = std::min<std::size_t>(static_cast<std::size_t>(length(rng)), type.ballot.size());
      ++by_length[len];
    }
    for (std::size_t len = 1; len < by_length.size(); ++len) {
      if (by_length[len] == 0) continue;
      counts[Ballot(type.ballot.begin(), type.ballot.begin() + static_cast<std::ptrdiff_t>(len))] += by_length[len];
    }
  }
  std::vector<BallotType> types;
  for (auto& [b, c] : counts) types.push_back({b, c});
  return Profile(p.k(), std::move(types), p.labels());
}

WeightedProfile voluntary_truncate(const WeightedProfile& p, std::uint64_t seed) {
  if (p.k() <= 1) return p;
  auto rng = make_rng(seed, 1);
  std::uniform_int_distribution<int> length(1, p.k());
  std::map<Ballot, Rational> weights;
  for (const auto& type : p.types()) {
    const auto len = std::min<std::size_t>(static_cast<std::size_t>(length(rng)), type.ballot.size());
    weights[Ballot(type.ballot.begin(), type.ballot.begin() + static_cast<std::ptrdiff_t>(len))] += type.weight;
  }
  std::vector<WeightedBallotType> types;
  for (auto& [b, w] : weights) types.push_back({b, w});
  return WeightedProfile(p.k(), std::move(types));
}

std::vector<Rational> random_positions(int k, std::uint64_t seed) {
  auto rng = make_rng(seed, 2);
  const mpz_class denominator = mpz_class(1) << 53;
  std::set<std::uint64_t> used;
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(k));
  while (out.size() < static_cast<std::size_t>(k)) {
    const std::uint64_t v = rng() >> 11;
    if (!used.insert(v).second) continue;
    Rational r{mpz_class(static_cast<unsigned long>(v)), denominator};
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

Profile trial_profile(const SimConfig& cfg, int k, std::int64_t trial) {
  const auto seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(trial));
  if (cfg.preference_kind == PreferenceKind::UniformGeneral) {
    auto p = uniform_profile(k, cfg.n_voters, seed);
    if (cfg.ballots == BallotKind::VoluntarilyTruncated) p = voluntary_truncate(p, seed);
    return p;
  }
  auto w = euclidean_profile({random_positions(k, seed)});
  if (cfg.ballots == BallotKind::VoluntarilyTruncated) w = voluntary_truncate(w, seed);
  auto p = to_integer_profile(w);
  if (!p) throw Error("euclidean weights do not fit in 62 bits");
  return *p;
}

double HeatmapResult::probability(int k, int h) const {
  return static_cast<double>(row(k).matches.at(static_cast<std::size_t>(h) - 1)) / static_cast<double>(trials);
}

const HeatmapRow& HeatmapResult::row(int k) const {
  for (const auto& r : rows) {
    if (r.k == k) return r;
  }
  throw DomainError("no heatmap row for k=" + std::to_string(k));
}

HeatmapResult heatmap(const SimConfig& cfg) {
  const auto results = run_all(cfg);
  HeatmapResult out;
  out.trials = cfg.trials;
  for (std::size_t ki = 0; ki < results.size(); ++ki) {
    HeatmapRow row;
    row.k = cfg.k_min + static_cast<int>(ki);
    row.matches.assign(static_cast<std::size_t>(row.k - 1), 0);
    for (const auto& trial : results[ki]) {
      for (std::size_t h = 0; h + 1 < trial.winners.size(); ++h) {
        if (trial.winners[h] == trial.winners.back()) ++row.matches[h];
      }
      if (trial.tie) ++out.tie_trials;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

WinnerCountResult winner_count_stats(const SimConfig& cfg) {
  const auto results = run_all(cfg);
  WinnerCountResult out;
  out.trials = cfg.trials;
  out.preference_kind = cfg.preference_kind;
  out.ballots = cfg.ballots;
  for (std::size_t ki = 0; ki < results.size(); ++ki) {
    WinnerCountRow row;
    row.k = cfg.k_min + static_cast<int>(ki);
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    for (const auto& trial : results[ki]) {
      const std::set<Candidate> distinct(trial.winners.begin(), trial.winners.end() - 1);
      const auto count = static_cast<std::int64_t>(distinct.size());
      sum += count;
      sum_sq += count * count;
      row.max = std::max(row.max, static_cast<int>(count));
      if (trial.tie) ++out.tie_trials;
    }
    const auto n = static_cast<double>(cfg.trials);
    row.mean = static_cast<double>(sum) / n;
    row.stddev = std::sqrt(std::max(0.0, static_cast<double>(sum_sq) / n - row.mean * row.mean));
    out.rows.push_back(row);
  }
  return out;
}

void write_heatmap_csv(std::ostream& out, const HeatmapResult& result) {
  out << "k,h,probability,trials\n";
  for (const auto& row : result.rows) {
    for (std::size_t h = 0; h < row.matches.size(); ++h) {
      out << row.k << ',' << h + 1 << ','
          << static_cast<double>(row.matches[h]) / static_cast<double>(result.trials) << ',' << result.trials << '\n';
    }
  }
}

void write_winner_count_csv(std::ostream& out, const WinnerCountResult& result) {
  out << "k,mean,std,max,trials,kind,ballots\n";
  for (const auto& row : result.rows) {
    out << row.k << ',' << row.mean << ',' << row.stddev << ',' << row.max << ',' << result.trials << ','
        << to_string(result.preference_kind) << ',' << to_string(result.ballots) << '\n';
  }
}

}  // namespace irvlab
