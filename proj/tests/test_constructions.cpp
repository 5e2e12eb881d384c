#include <doctest.h>

#include <functional>
#include <map>

#include "irvlab/constructions.hpp"
#include "irvlab/errors.hpp"
#include "irvlab/restrictions.hpp"
#include "irvlab/truncation.hpp"
#include "support.hpp"

using namespace irvlab;

namespace {

std::int64_t first_place(const Profile& p, Candidate c) {
  std::int64_t n = 0;
  for (const auto& t : p.types()) {
    if (t.ballot.front() == c) n += t.count;
  }
  return n;
}

void for_each_feasible(int k, const std::function<void(const TargetSequence&)>& body) {
  TargetSequence t{k, std::vector<Candidate>(static_cast<std::size_t>(k - 1))};
  std::function<void(int)> rec = [&](int h) {
    if (h == k) {
      body(t);
      return;
    }
    for (Candidate c = h + 1; c <= k; ++c) {
      t.w[static_cast<std::size_t>(h) - 1] = c;
      rec(h + 1);
    }
  };
  rec(1);
}

}  // namespace

TEST_CASE("feasibility") {
  CHECK(is_feasible({4, {2, 3, 4}}));
  CHECK_FALSE(is_feasible({4, {2, 2, 4}}));
  CHECK(is_feasible({3, {3, 3}}));
  CHECK_THROWS_AS(is_feasible({4, {2, 3}}), DomainError);
}

TEST_CASE("voter lower bounds") {
  CHECK(voter_lower_bound(5, TieClassValue::EliminationTieFree) == 55);
  CHECK(voter_lower_bound(7, TieClassValue::EliminationTieFree) == 161);
  CHECK(voter_lower_bound(3, TieClassValue::ConsequentialTieFree) == 9);
  CHECK(voter_lower_bound(5, TieClassValue::ConsequentialTieFree) == 40);
  CHECK(voter_lower_bound(5, TieClassValue::TieFree) == 70);
  const std::vector<std::int64_t> table{26, 55, 99, 161, 244, 351, 485};
  for (int k = 4; k <= 10; ++k) {
    CHECK(voter_lower_bound(k, TieClassValue::EliminationTieFree) == table[static_cast<std::size_t>(k - 4)]);
  }
  CHECK_THROWS_AS(voter_lower_bound(2, TieClassValue::TieFree), DomainError);
  CHECK_THROWS_AS(voter_lower_bound(5, TieClassValue::Unknown), DomainError);
}

TEST_CASE("ctf construction for the fig2 sequence") {
  const auto p = build_ctf({4, {2, 3, 4}});
  CHECK(p.total_voters() == 24);
  CHECK(p.types().size() == 6);
  CHECK(winner_sequence(p).winners == std::vector<Candidate>{2, 3, 4});
  // Same first-place profile as the worked example under A,B,C,D -> 2,3,4,1.
  const auto example = apply_permutation(irvlab::testing::fig2_profile(), {2, 3, 4, 1});
  for (Candidate c = 1; c <= 4; ++c) CHECK(first_place(p, c) == first_place(example, c));
}

TEST_CASE("ctf constructions") {
  const auto constant = build_ctf({5, {5, 5, 5, 5}});
  CHECK(constant.total_voters() == 40);
  CHECK(winner_sequence(constant).winners == std::vector<Candidate>{5, 5, 5, 5});
  const auto small = build_ctf({3, {2, 3}});
  CHECK(small.total_voters() == 9);
  CHECK(winner_sequence(small).winners == std::vector<Candidate>{2, 3});
  CHECK_THROWS_AS(build_ctf({4, {2, 2, 4}}), FeasibilityError);
}

TEST_CASE("f-sequences") {
  CHECK(f_sequence({5, {4, 3, 4, 5}}).order == std::vector<Candidate>{4, 3, 5, 2, 1});
  CHECK(f_sequence({5, {4, 3, 4, 5}}).winner_prefix_len == 3);
  CHECK(f_sequence({4, {2, 3, 4}}).order == std::vector<Candidate>{2, 3, 4, 1});
  CHECK(f_sequence({4, {4, 4, 4}}).order == std::vector<Candidate>{4, 3, 2, 1});
  CHECK_THROWS_AS(f_sequence({4, {1, 3, 4}}), FeasibilityError);
}

TEST_CASE("tie-free constructions") {
  CHECK(build_tie_free({4, {2, 3, 4}}).total_voters() == 30);
  const auto p = build_tie_free({5, {4, 3, 4, 5}});
  CHECK(p.total_voters() == 70);
  CHECK(classify_ties(p).value == TieClassValue::TieFree);
  CHECK(winner_sequence(p).winners == std::vector<Candidate>{4, 3, 4, 5});
  const auto f = f_sequence({5, {4, 3, 4, 5}});
  for (std::size_t j = 0; j < f.order.size(); ++j) {
    CHECK(first_place(p, f.order[j]) == 3 * 4 + 5 - static_cast<std::int64_t>(j + 1));
  }
  CHECK(build_tie_free({3, {2, 3}}).total_voters() == 9);
}

TEST_CASE("every feasible sequence up to k=6") {
  for (int k = 3; k <= 6; ++k) {
    for_each_feasible(k, [&](const TargetSequence& t) {
      const auto ctf = build_ctf(t);
      CHECK(winner_sequence(ctf).winners == t.w);
      CHECK(ctf.total_voters() == voter_lower_bound(k, TieClassValue::ConsequentialTieFree));
      const auto tf = build_tie_free(t);
      CHECK(winner_sequence(tf).winners == t.w);
      CHECK(classify_ties(tf).value == TieClassValue::TieFree);
      CHECK(tf.total_voters() == voter_lower_bound(k, TieClassValue::TieFree));
    });
  }
}

TEST_CASE("single-peaked construction") {
  for (int kappa = 3; kappa <= 5; ++kappa) {
    const auto sp = build_single_peaked(kappa);
    CHECK(sp.profile.k() == kappa * (kappa + 1) / 2);
    CHECK(sp.profile.total_voters() == 3 * kappa * (kappa + 1) / 2);
    CHECK(is_single_peaked_on_axis(sp.profile, sp.axis));
    const auto seq = winner_sequence(sp.profile);
    CHECK(seq.distinct_count == kappa);
    for (int h = 1; h <= kappa; ++h) CHECK(seq.at(h) == h);
  }
  CHECK_THROWS_AS(build_single_peaked(2), DomainError);
}

TEST_CASE("few-types construction") {
  const auto p4 = build_k_types(4);
  CHECK(first_place(p4, 1) == 14);
  CHECK(p4.types().size() == 8);
  const auto p6 = build_k_types(6);
  CHECK(winner_sequence(p6).winners == std::vector<Candidate>{1, 2, 3, 4, 5});
  CHECK(p6.types().size() == 14);
  CHECK(classify_ties(p6).value == TieClassValue::TieFree);
  CHECK_THROWS_AS(build_k_types(3), DomainError);
}

TEST_CASE("full-ballot construction") {
  const auto p = build_full_ballot(4, {6, 7, 8});
  CHECK(p.k() == 8);
  CHECK(p.total_voters() == 24);
  CHECK(p.min_ballot_length() == 8);
  for (int h = 1; h <= 3; ++h) CHECK(irv_winner(p, h) == 5 + h);
  const auto tf = build_full_ballot(4, {6, 7, 8}, FillVariant::TieFree);
  CHECK(tf.total_voters() == 36);
  CHECK(tf.min_ballot_length() == 8);
  CHECK_THROWS_AS(build_full_ballot(4, {5, 7, 8}), FeasibilityError);
}

TEST_CASE("minimum-length construction") {
  const std::vector<Candidate> w{7, 8, 9, 10, 10};
  const auto p = build_min_length(5, 1, w);
  CHECK(p.k() == 10);
  CHECK(p.min_ballot_length() == 4);
  for (int h = 1; h <= 5; ++h) CHECK(irv_winner(p, h) == w[static_cast<std::size_t>(h) - 1]);
  const auto tf = build_min_length(5, 1, w, FillVariant::TieFree);
  CHECK(tf.total_voters() == voter_lower_bound(6, TieClassValue::TieFree) + 4 * 3 / 2);
  CHECK(classify_ties(tf).value == TieClassValue::TieFree);
  const auto c0 = build_min_length(4, 0, {6, 7, 8});
  for (int h = 1; h <= 3; ++h) CHECK(irv_winner(c0, h) == irv_winner(build_full_ballot(4, {6, 7, 8}), h));
  CHECK_THROWS_AS(build_min_length(4, 4, {6, 7, 8, 8, 8, 8, 8}), DomainError);
}
