#include <doctest.h>

#include <random>

#include "irvlab/constructions.hpp"
#include "irvlab/errors.hpp"
#include "irvlab/restrictions.hpp"
#include "irvlab/sim.hpp"

using namespace irvlab;

TEST_CASE("single-peaked checks") {
  const auto sp = build_single_peaked(3);
  CHECK(is_single_peaked_on_axis(sp.profile, sp.axis));
  // Mirror images: (1,3) and (3,1) both skip the middle candidate 2.
  CHECK_FALSE(is_single_peaked_on_axis(Profile(3, {{{1, 3}, 1}}), {1, 2, 3}));
  CHECK_FALSE(is_single_peaked_on_axis(Profile(3, {{{3, 1}, 1}}), {1, 2, 3}));
  CHECK(is_single_peaked_on_axis(Profile(3, {{{2, 3, 1}, 1}, {{1, 2}, 1}}), {1, 2, 3}));
  CHECK(is_single_peaked_on_axis(Profile(3, {{{1}, 1}, {{3}, 2}, {{2}, 1}}), {3, 1, 2}));
  CHECK_THROWS_AS(is_single_peaked_on_axis(Profile(3, {{{1}, 1}}), {1, 2}), DomainError);
  CHECK_THROWS_AS(is_single_peaked_on_axis(Profile(3, {{{1}, 1}}), {1, 2, 2}), DomainError);
}

TEST_CASE("axis search") {
  const auto sp = build_single_peaked(3);
  const auto axis = find_axis(sp.profile);
  REQUIRE(axis.has_value());
  CHECK(is_single_peaked_on_axis(sp.profile, *axis));
  // Every candidate is some voter's peak with both others following: no axis.
  CHECK_FALSE(find_axis(Profile(3, {{{1, 2, 3}, 1}, {{2, 3, 1}, 1}, {{3, 1, 2}, 1}})).has_value());
  const auto partial = find_axis(Profile(3, {{{1, 2}, 1}, {{2, 3}, 1}, {{3, 1}, 1}}));
  CHECK_FALSE(partial.has_value());
  CHECK_THROWS_AS(find_axis(Profile(11, {{{1}, 1}})), BudgetError);
}

TEST_CASE("single-crossing checks") {
  CHECK(is_single_crossing_sequence({{1, 2, 3}}));
  CHECK(is_single_crossing_sequence({{1, 2, 3}, {3, 2, 1}}));
  CHECK(is_single_crossing_sequence({{3, 2, 1}, {1, 2, 3}}));
  CHECK_FALSE(is_single_crossing_sequence({{1, 2, 3}, {2, 3, 1}, {1, 3, 2}}));
  const Profile p(3, {{{1, 2, 3}, 2}, {{3, 2, 1}, 1}});
  CHECK(is_single_crossing_in_order(p, {0, 1, 2}));
  CHECK_FALSE(is_single_crossing_in_order(p, {0, 2, 1}));
  CHECK_THROWS_AS(is_single_crossing_in_order(p, {0, 1}), DomainError);
}

TEST_CASE("euclidean profiles") {
  const auto two = euclidean_profile(parse_euclidean_spec("1/4,3/4"));
  REQUIRE(two.types().size() == 2);
  CHECK(two.types()[0].weight == Rational(1, 2));
  const auto three = euclidean_profile(parse_euclidean_spec("0,0.5,1"));
  REQUIRE(three.types().size() == 4);
  const std::vector<Ballot> rankings{{1, 2, 3}, {2, 1, 3}, {2, 3, 1}, {3, 2, 1}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(three.types()[i].ballot == rankings[i]);
    CHECK(three.types()[i].weight == Rational(1, 4));
  }
  CHECK_THROWS_AS(euclidean_profile(parse_euclidean_spec("1/2,0.5")), SpecError);
  CHECK(parse_euclidean_spec("010/20,0.25e1").candidate_positions == std::vector<Rational>{Rational(1, 2), Rational(5, 2)});
  CHECK_THROWS_AS(euclidean_profile({{Rational(3, 2)}}), SpecError);
  CHECK(euclidean_axis(parse_euclidean_spec("0.9,0.1,0.5")) == Axis{2, 3, 1});
}

TEST_CASE("euclidean profiles are single-peaked and single-crossing") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int k = 2 + static_cast<int>(seed % 39);
    const EuclideanSpec spec{random_positions(k, seed)};
    const auto w = euclidean_profile(spec);
    CHECK(w.types().size() <= static_cast<std::size_t>(k * (k - 1) / 2 + 1));
    CHECK(w.total_weight() == 1);
    CHECK(is_single_peaked_on_axis(w, euclidean_axis(spec)));
    CHECK(is_single_crossing_in_order(w));
  }
}

TEST_CASE("euclidean cells agree with grid sampling") {
  const EuclideanSpec spec{random_positions(6, 42)};
  const auto w = euclidean_profile(spec);
  const int grid = 10000;
  std::vector<int> hits(w.types().size(), 0);
  for (int g = 0; g < grid; ++g) {
    const Rational x(2 * g + 1, 2 * grid);
    Ballot b(6);
    for (int c = 0; c < 6; ++c) b[static_cast<std::size_t>(c)] = c + 1;
    std::stable_sort(b.begin(), b.end(), [&](Candidate a, Candidate c) {
      return abs(spec.candidate_positions[static_cast<std::size_t>(a - 1)] - x) <
             abs(spec.candidate_positions[static_cast<std::size_t>(c - 1)] - x);
    });
    bool found = false;
    for (std::size_t t = 0; t < w.types().size(); ++t) {
      if (w.types()[t].ballot == b) {
        ++hits[t];
        found = true;
      }
    }
    CHECK(found);
  }
  for (std::size_t t = 0; t < w.types().size(); ++t) {
    CHECK(std::abs(hits[t] / static_cast<double>(grid) - w.types()[t].weight.get_d()) <= 2.0 / grid);
  }
}

TEST_CASE("random restricted generators") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const int k = 3 + i % 6;
    std::vector<Candidate> axis(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) axis[static_cast<std::size_t>(c)] = c + 1;
    CHECK(is_single_peaked_on_axis(random_single_peaked_profile(k, 30, rng), axis));
    CHECK(random_single_peaked_profile(k, 30, rng, false).min_ballot_length() == static_cast<std::size_t>(k));
    const auto sc = random_single_crossing_profile(k, 30, rng);
    CHECK(is_single_crossing_sequence(sc.sequence));
    CHECK(sc.profile.total_voters() == 30);
  }
}
