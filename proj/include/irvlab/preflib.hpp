#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irvlab/irv.hpp"
#include "irvlab/profile.hpp"

namespace irvlab {

enum class PreflibLayout { Classic, Modern };

// A ballot line with a tied group, kept verbatim so emission can restore it.
struct TieLine {
  std::int64_t count = 0;
  // Ranking text in PrefLib syntax, e.g. "1,{2,3},4".
  std::string ranking;

  bool operator==(const TieLine&) const = default;
};

struct Election {
  Profile profile;
  std::string name;
  std::string source_tag;
  std::int64_t omitted_tie_ballots = 0;
  // Longest strict ballot in the file, taken as the ballot length the
  // election used.
  std::optional<int> declared_ballot_length;
  std::vector<TieLine> tie_lines;
  PreflibLayout layout = PreflibLayout::Classic;
  // Modern-layout "# KEY: value" entries other than alternative names.
  std::map<std::string, std::string> metadata;
};

// Auto-detects the layout: modern files start with '#'. Brace groups of two
// or more candidates mark a tied ballot, which is counted and set aside.
// Declared voter and unique-order totals are checked.
Election parse_election(std::string_view text, std::string name = {}, std::string source_tag = {});

// Reads a file; the name is the file stem and the source tag defaults to the
// parent directory name.
Election load_election(const std::filesystem::path& path, std::optional<std::string> source_tag = std::nullopt);

// Loads files in parallel; output order matches input order.
std::vector<Election> load_elections(const std::vector<std::filesystem::path>& paths, int threads = 1);

// Every .soc/.soi/.toc/.toi file under `root`, sorted.
std::vector<std::filesystem::path> find_election_files(const std::filesystem::path& root);

// Classic layout: k, "i,name" lines, "n_voters,n_sum,n_unique", then
// "count,ranking" lines (strict types first, then tie lines).
void write_classic(std::ostream& out, const Profile& p, const std::vector<TieLine>& tie_lines = {});
std::string emit_election(const Election& e);

struct SummaryRow {
  std::string source_tag;
  std::int64_t elections = 0;
  int k_min = 0;
  int k_max = 0;
  int h_min = 0;
  int h_max = 0;
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
};

// One row per source tag, sorted by tag. n counts the ballots kept for
// analysis (tie lines excluded).
std::vector<SummaryRow> summarize(const std::vector<Election>& elections);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

struct AuditRow {
  std::string name;
  std::string source_tag;
  int k = 0;
  int h = 0;
  std::int64_t n = 0;
  // Winners at h' = 1..min(h, k-1).
  std::vector<Candidate> winners;
  int distinct = 0;
  bool any_elim_tie = false;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  std::int64_t elections = 0;
  std::int64_t two_winners = 0;
  std::int64_t three_or_more = 0;
  std::int64_t short_total = 0;
  std::int64_t short_sensitive = 0;
  std::int64_t long_total = 0;
  std::int64_t long_sensitive = 0;
};

// Elections with h <= this count as short-ballot elections in the split.
inline constexpr int kShortBallotCutoff = 5;

AuditReport audit(const std::vector<Election>& elections, const TieBreakPolicy& policy = {}, int threads = 1);
void write_audit_rows_csv(std::ostream& out, const AuditReport& report, const std::vector<Election>& elections);
// metric,observed,reference rows against the published corpus figures.
void write_audit_comparison_csv(std::ostream& out, const AuditReport& report);

}  // namespace irvlab
