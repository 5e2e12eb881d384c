#include "irvlab/truncation.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <set>

#include "irvlab/errors.hpp"
#include "irvlab/parallel.hpp"
#include "irvlab/random.hpp"

namespace irvlab {

WinnerSequence winner_sequence(const Profile& p, const TieBreakPolicy& policy) {
  return winner_sequence(p, policy, {});
}

WinnerSequence winner_sequence(const Profile& p, const TieBreakPolicy& policy, std::span<const std::int64_t> counts) {
  if (p.k() < 2) throw DomainError("winner sequence needs at least 2 candidates");
  WinnerSequence out;
  out.winners.reserve(static_cast<std::size_t>(p.k()) - 1);
  for (int h = 1; h < p.k(); ++h) out.winners.push_back(irv_winner(p, h, policy, counts));
  out.distinct_count = static_cast<int>(std::set<Candidate>(out.winners.begin(), out.winners.end()).size());
  return out;
}

int num_truncation_winners(const Profile& p, const TieBreakPolicy& policy) {
  return winner_sequence(p, policy).distinct_count;
}

Rational ResampleReport::win_prob(int h, Candidate c) const {
  Rational out(wins.at(static_cast<std::size_t>(h) - 1).at(static_cast<std::size_t>(c) - 1), trials);
  out.canonicalize();
  return out;
}

double ResampleReport::frequency(int h, Candidate c) const { return win_prob(h, c).get_d(); }

namespace {

// Multinomial draw of n items over the type counts, one conditional
// binomial per type.
void draw_counts(const Profile& p, std::int64_t n, std::mt19937_64& rng, std::vector<std::int64_t>& out) {
  std::int64_t left = n;
  std::int64_t mass = n;
  const auto& types = p.types();
  for (std::size_t i = 0; i < types.size(); ++i) {
    const std::int64_t weight = types[i].count;
    if (left == 0 || weight == 0) {
      out[i] = 0;
    } else if (weight == mass) {
      out[i] = left;
    } else {
      std::binomial_distribution<std::int64_t> draw(left, static_cast<double>(weight) / static_cast<double>(mass));
      out[i] = draw(rng);
    }
    left -= out[i];
    mass -= weight;
  }
}

}  // namespace

ResampleReport resample(const Profile& p, std::int64_t trials, std::uint64_t seed, const TieBreakPolicy& policy,
                        int threads) {
  if (trials < 1) throw DomainError("resampling needs at least one trial");
  const std::int64_t n = p.total_voters();
  if (n < 1) throw DomainError("resampling needs at least one voter");

  ResampleReport report;
  report.trials = trials;
  report.seed = seed;
  report.k = p.k();
  report.actual = winner_sequence(p, policy);
  const auto kk = static_cast<std::size_t>(p.k());
  const auto hh = kk - 1;

  // Each trial stores its winners; tallying happens afterwards so the
  // reduction is independent of scheduling.
  std::vector<Candidate> trial_winners(static_cast<std::size_t>(trials) * hh);
  const std::size_t chunk = 256;
  const std::size_t n_chunks = (static_cast<std::size_t>(trials) + chunk - 1) / chunk;
  parallel_for(n_chunks, threads, [&](std::size_t chunk_index) {
    std::vector<std::int64_t> counts(p.types().size());
    const std::size_t begin = chunk_index * chunk;
    const std::size_t end = std::min(begin + chunk, static_cast<std::size_t>(trials));
    for (std::size_t t = begin; t < end; ++t) {
      auto rng = make_rng(seed, t);
      draw_counts(p, n, rng, counts);
      for (std::size_t h = 1; h <= hh; ++h) {
        trial_winners[t * hh + h - 1] = irv_winner(p, static_cast<int>(h), policy, counts);
      }
    }
  });

  report.wins.assign(hh, std::vector<std::int64_t>(kk, 0));
  report.winner_counts.reserve(static_cast<std::size_t>(trials));
  std::vector<char> seen(kk + 1);
  for (std::size_t t = 0; t < static_cast<std::size_t>(trials); ++t) {
    std::fill(seen.begin(), seen.end(), 0);
    int distinct = 0;
    for (std::size_t h = 0; h < hh; ++h) {
      const auto c = static_cast<std::size_t>(trial_winners[t * hh + h]);
      ++report.wins[h][c - 1];
      if (!seen[c]) {
        seen[c] = 1;
        ++distinct;
      }
    }
    report.winner_counts.push_back(distinct);
  }
  return report;
}

void write_resample_csv(std::ostream& out, const ResampleReport& report, const Profile& labels_from) {
  out << "h,candidate,frequency,actual_winner_flag\n";
  for (int h = 1; h < report.k; ++h) {
    for (Candidate c = 1; c <= report.k; ++c) {
      const auto& prob = report.win_prob(h, c);
      out << h << ',' << labels_from.label(c) << ',' << prob.get_d() << ',' << (report.actual.at(h) == c ? 1 : 0)
          << '\n';
    }
  }
}

}  // namespace irvlab
