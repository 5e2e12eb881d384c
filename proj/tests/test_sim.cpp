#include <doctest.h>

#include <map>
#include <sstream>

#include "irvlab/errors.hpp"
#include "irvlab/sim.hpp"

using namespace irvlab;

TEST_CASE("uniform profiles") {
  const auto p = uniform_profile(2, 100000, 5);
  REQUIRE(p.types().size() == 2);
  for (const auto& t : p.types()) CHECK(std::abs(t.count / 100000.0 - 0.5) < 0.01);
  CHECK(uniform_profile(3, 50, 9) == uniform_profile(3, 50, 9));
  CHECK(uniform_profile(5, 200, 1).min_ballot_length() == 5);

  // Chi-square against uniform over the 24 rankings of 4 candidates.
  const auto q = uniform_profile(4, 24000, 2);
  CHECK(q.types().size() == 24);
  double chi = 0;
  for (const auto& t : q.types()) chi += (t.count - 1000.0) * (t.count - 1000.0) / 1000.0;
  CHECK(chi < 49.7);  // 0.999 quantile at 23 degrees of freedom
}

TEST_CASE("voluntary truncation") {
  const Profile one(1, {{{1}, 4}});
  CHECK(voluntary_truncate(one, 3) == one);
  const auto p = uniform_profile(5, 100000, 8);
  const auto t = voluntary_truncate(p, 8);
  CHECK(t.total_voters() == 100000);
  double total = 0;
  for (const auto& type : t.types()) total += static_cast<double>(type.ballot.size()) * static_cast<double>(type.count);
  CHECK(std::abs(total / 100000 - 3.0) < 0.05);
  CHECK(voluntary_truncate(p, 8) == t);
  const WeightedProfile w(3, {{{1, 2, 3}, Rational(1, 2)}, {{3, 2, 1}, Rational(1, 2)}});
  CHECK(voluntary_truncate(w, 1).total_weight() == 1);
}

TEST_CASE("configuration validation") {
  SimConfig cfg;
  cfg.k_min = 1;
  CHECK_THROWS_AS(validate(cfg), DomainError);
  cfg.k_min = 3;
  cfg.trials = 0;
  CHECK_THROWS_AS(validate(cfg), DomainError);
  CHECK(parse_preference_kind("euclidean") == PreferenceKind::Euclidean1D);
  CHECK_THROWS_AS(parse_ballot_kind("short"), DomainError);
}

TEST_CASE("heatmap basics") {
  SimConfig cfg;
  cfg.k_min = 2;
  cfg.k_max = 6;
  cfg.trials = 40;
  cfg.n_voters = 200;
  cfg.seed = 12;
  for (auto kind : {PreferenceKind::UniformGeneral, PreferenceKind::Euclidean1D}) {
    cfg.preference_kind = kind;
    for (auto ballots : {BallotKind::Full, BallotKind::VoluntarilyTruncated}) {
      cfg.ballots = ballots;
      cfg.threads = 1;
      const auto a = heatmap(cfg);
      cfg.threads = 3;
      const auto b = heatmap(cfg);
      for (int k = 2; k <= 6; ++k) {
        CHECK(a.row(k).matches == b.row(k).matches);
        CHECK(a.probability(k, k - 1) == 1.0);
      }
    }
  }
}

TEST_CASE("winner count basics") {
  SimConfig cfg;
  cfg.k_min = 2;
  cfg.k_max = 8;
  cfg.trials = 300;
  cfg.n_voters = 300;
  const auto result = winner_count_stats(cfg);
  for (const auto& row : result.rows) {
    CHECK(row.max <= row.k - 1);
    CHECK(row.mean >= 1.0);
  }
  CHECK(result.rows[0].mean == 1.0);
  CHECK(result.rows[0].max == 1);
  double mean = 0;
  for (const auto& row : result.rows) mean += row.mean;
  CHECK(std::abs(mean / static_cast<double>(result.rows.size()) - 2.0) <= 0.5);
  std::ostringstream csv;
  write_winner_count_csv(csv, result);
  CHECK(csv.str().rfind("k,mean,std,max,trials,kind,ballots\n2,1,0,1,300,uniform,full\n", 0) == 0);
}

TEST_CASE("heatmap csv") {
  SimConfig cfg;
  cfg.k_min = 3;
  cfg.k_max = 3;
  cfg.trials = 5;
  cfg.n_voters = 20;
  std::ostringstream csv;
  write_heatmap_csv(csv, heatmap(cfg));
  const auto text = csv.str();
  CHECK(text.rfind("k,h,probability,trials\n", 0) == 0);
  CHECK(text.find("3,2,1,5\n") != std::string::npos);
}
