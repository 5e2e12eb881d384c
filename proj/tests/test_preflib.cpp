#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "irvlab/errors.hpp"
#include "irvlab/preflib.hpp"
#include "support.hpp"

using namespace irvlab;
using irvlab::testing::fixture;

namespace {

void check_round_trip(const Election& e) {
  const auto again = parse_election(emit_election(e), e.name, e.source_tag);
  CHECK(again.profile == e.profile);
  CHECK(again.omitted_tie_ballots == e.omitted_tie_ballots);
  CHECK(again.tie_lines == e.tie_lines);
  CHECK(again.declared_ballot_length == e.declared_ballot_length);
  CHECK(emit_election(again) == emit_election(e));
}

}  // namespace

TEST_CASE("classic soi example") {
  const auto e = parse_election("3\n1,A\n2,B\n3,C\n5,5,2\n3,1,2,3\n2,2\n");
  CHECK(e.profile == Profile(3, {{{1, 2, 3}, 3}, {{2}, 2}}, {"A", "B", "C"}));
  CHECK(e.omitted_tie_ballots == 0);
  CHECK(e.layout == PreflibLayout::Classic);
  CHECK(e.declared_ballot_length == 3);
}

TEST_CASE("fixtures in all four formats round trip") {
  for (const char* name : {"sample.soc", "sample.soi", "sample.toc", "sample.toi", "fig2.soi"}) {
    CAPTURE(name);
    const auto e = load_election(fixture(name));
    CHECK(e.source_tag == "fixtures");
    check_round_trip(e);
  }
}

TEST_CASE("complete strict orders in the 2023 layout") {
  const auto e = load_election(fixture("sample.soc"));
  CHECK(e.layout == PreflibLayout::Modern);
  CHECK(e.name == "sample");
  CHECK(e.profile.labels() == std::vector<std::string>{"Alice", "Bob", "Carol"});
  CHECK(e.profile.total_voters() == 10);
  CHECK(e.profile.min_ballot_length() == 3);
  CHECK(e.metadata.at("TITLE") == "Complete strict sample");
}

TEST_CASE("tie lines are counted and excluded") {
  const auto toi = load_election(fixture("sample.toi"));
  // Singleton braces are strict; "{1,2}" and "{2,4}" are ties.
  CHECK(toi.omitted_tie_ballots == 6);
  CHECK(toi.profile.total_voters() == 9);
  CHECK(toi.profile.total_voters() + toi.omitted_tie_ballots == 15);
  REQUIRE(toi.tie_lines.size() == 2);
  CHECK(toi.tie_lines[0] == TieLine{4, "{1,2},3"});
  const auto toc = load_election(fixture("sample.toc"));
  CHECK(toc.omitted_tie_ballots == 4);
  CHECK(toc.profile.total_voters() == 8);
  CHECK(toc.profile.types().size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_election(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("3\n1,A\n2,B\n3,C\n2,2,1\nx,1,2\n") == 6);
  CHECK(line_of("3\n1,A\n2,B\n3,C\n2,2,1\n2,1,4\n") == 6);
  CHECK(line_of("3\n1,A\n2,B\n3,C\n2,2,1\n2,1,1\n") == 6);
  CHECK(line_of("3\n1,A\n2,B\n3,C\n3,3,1\n2,1\n") == 5);
  CHECK(line_of("three\n") == 1);
  CHECK(line_of("2\n1,A\n1,B\n") == 3);
  CHECK(line_of("# NUMBER ALTERNATIVES: 2\n1: 1,3\n") == 2);
  CHECK(line_of("1: 1\n# NUMBER ALTERNATIVES: 2\n") == 1);
  CHECK_THROWS_AS(parse_election("1: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_election(""), ParseError);
  CHECK_THROWS_AS(parse_election("2\n1,A\n2,B\n1,1,1\n1,{1,2\n"), ParseError);
}

TEST_CASE("summaries") {
  CHECK(summarize({}).empty());
  auto make = [](std::int64_t n, const std::string& tag) {
    Election e;
    e.profile = Profile(6, {{{1, 2, 3, 4, 5}, n}});
    e.source_tag = tag;
    e.declared_ballot_length = 5;
    return e;
  };
  const auto rows = summarize({make(9756, "burlington"), make(8974, "burlington")});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].elections == 2);
  CHECK(rows[0].k_min == 6);
  CHECK(rows[0].k_max == 6);
  CHECK(rows[0].n_min == 8974);
  CHECK(rows[0].n_max == 9756);
  const auto single = summarize({make(10, "x")});
  CHECK(single[0].n_min == single[0].n_max);
  std::ostringstream csv;
  write_summary_csv(csv, rows);
  CHECK(csv.str() == "source_tag,elections,k_min,k_max,h_min,h_max,n_min,n_max\nburlington,2,6,6,5,5,8974,9756\n");
}

TEST_CASE("audit of the fixture directory") {
  const auto files = find_election_files(fixture(""));
  CHECK(files.size() == 5);
  const auto elections = load_elections(files, 2);
  const auto report = audit(elections);
  CHECK(report.elections == 5);
  const auto& fig2 = report.rows[0];
  CHECK(fig2.name == "fig2");
  CHECK(fig2.winners == std::vector<Candidate>{1, 2, 3});
  CHECK(report.three_or_more == 1);
  std::ostringstream table;
  write_audit_comparison_csv(table, report);
  CHECK(table.str().find("metric,observed,reference\n") == 0);
  CHECK(table.str().find("two_winners,") != std::string::npos);
  std::ostringstream rows;
  write_audit_rows_csv(rows, report, elections);
  CHECK(rows.str().find("fig2,fixtures,4,4,24,3,1,A;B;C\n") != std::string::npos);
}
