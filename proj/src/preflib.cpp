#include "irvlab/preflib.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "irvlab/errors.hpp"
#include "irvlab/parallel.hpp"
#include "irvlab/truncation.hpp"

namespace irvlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::int64_t parse_int(std::string_view s, std::size_t line, const char* what) {
  s = trim(s);
  std::int64_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(s) + "'");
  }
  return value;
}

struct ParsedRanking {
  Ballot ballot;
  bool tied = false;
  std::string canonical;
};

// Parses "1,{2,3},4". Singleton braces count as a strict position.
ParsedRanking parse_ranking(std::string_view text, int k, std::size_t line) {
  ParsedRanking out;
  std::set<Candidate> seen;
  auto take = [&](std::string_view token) {
    const auto c = parse_int(token, line, "candidate");
    if (c < 1 || c > k) throw ParseError(line, "candidate " + std::to_string(c) + " out of range 1.." + std::to_string(k));
    if (!seen.insert(static_cast<Candidate>(c)).second) {
      throw ParseError(line, "candidate " + std::to_string(c) + " listed twice");
    }
    return static_cast<Candidate>(c);
  };
  text = trim(text);
  if (text.empty()) throw ParseError(line, "empty ballot");
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (!out.canonical.empty()) out.canonical += ',';
    const std::size_t start = pos;
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos < text.size() && text[pos] == '{') {
      const auto close = text.find('}', pos);
      if (close == std::string_view::npos) throw ParseError(line, "unclosed brace");
      const auto inner = text.substr(pos + 1, close - pos - 1);
      std::vector<Candidate> group;
      std::size_t a = 0;
      while (a <= inner.size()) {
        auto comma = inner.find(',', a);
        if (comma == std::string_view::npos) comma = inner.size();
        group.push_back(take(inner.substr(a, comma - a)));
        a = comma + 1;
      }
      if (group.size() > 1) out.tied = true;
      if (group.size() == 1) {
        out.ballot.push_back(group.front());
        out.canonical += std::to_string(group.front());
      } else {
        out.canonical += '{';
        for (std::size_t g = 0; g < group.size(); ++g) {
          if (g) out.canonical += ',';
          out.canonical += std::to_string(group[g]);
        }
        out.canonical += '}';
        for (Candidate c : group) out.ballot.push_back(c);
      }
      pos = close + 1;
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
      if (pos < text.size()) {
        if (text[pos] != ',') throw ParseError(line, "expected ',' after brace group");
        ++pos;
        if (pos == text.size()) throw ParseError(line, "trailing ','");
      }
    } else {
      auto comma = text.find(',', start);
      if (comma == std::string_view::npos) comma = text.size();
      const Candidate c = take(text.substr(start, comma - start));
      out.ballot.push_back(c);
      out.canonical += std::to_string(c);
      pos = comma == text.size() ? comma : comma + 1;
      if (comma + 1 == text.size()) throw ParseError(line, "trailing ','");
    }
  }
  return out;
}

struct BallotAccumulator {
  int k = 0;
  std::vector<BallotType> types;
  std::vector<TieLine> ties;
  std::int64_t omitted = 0;
  std::int64_t total = 0;
  std::int64_t lines = 0;

  void add(std::int64_t count, std::string_view ranking, std::size_t line) {
    if (count < 0) throw ParseError(line, "negative ballot count");
    auto parsed = parse_ranking(ranking, k, line);
    ++lines;
    total += count;
    if (parsed.tied) {
      omitted += count;
      ties.push_back({count, std::move(parsed.canonical)});
    } else {
      types.push_back({std::move(parsed.ballot), count});
    }
  }
};

Election finish(BallotAccumulator&& acc, std::vector<std::string> labels, std::string name, std::string source_tag,
                PreflibLayout layout) {
  Election e;
  e.profile = normalize(Profile(acc.k, std::move(acc.types), std::move(labels)));
  e.name = std::move(name);
  e.source_tag = std::move(source_tag);
  e.omitted_tie_ballots = acc.omitted;
  e.tie_lines = std::move(acc.ties);
  e.layout = layout;
  if (!e.profile.types().empty()) e.declared_ballot_length = static_cast<int>(e.profile.max_ballot_length());
  return e;
}

Election parse_classic(const std::vector<std::string_view>& lines, std::string name, std::string source_tag) {
  std::size_t i = 0;
  auto next_line = [&](const char* what) -> std::string_view {
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
    if (i == lines.size()) throw ParseError(lines.size(), std::string("unexpected end of file, expected ") + what);
    return trim(lines[i++]);
  };
  const auto k_text = next_line("candidate count");
  const auto k = parse_int(k_text, i, "candidate count");
  if (k < 1 || k > 100000) throw ParseError(i, "candidate count out of range");
  std::vector<std::string> labels(static_cast<std::size_t>(k));
  std::vector<char> named(static_cast<std::size_t>(k), 0);
  for (std::int64_t c = 0; c < k; ++c) {
    const auto text = next_line("candidate line");
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ParseError(i, "candidate line needs 'index,name'");
    const auto idx = parse_int(text.substr(0, comma), i, "candidate index");
    if (idx < 1 || idx > k || named[static_cast<std::size_t>(idx) - 1]) {
      throw ParseError(i, "bad or repeated candidate index " + std::to_string(idx));
    }
    named[static_cast<std::size_t>(idx) - 1] = 1;
    labels[static_cast<std::size_t>(idx) - 1] = std::string(trim(text.substr(comma + 1)));
  }
  const auto totals = next_line("voter totals");
  const std::size_t totals_line = i;
  std::vector<std::int64_t> declared;
  {
    std::size_t a = 0;
    while (a <= totals.size()) {
      auto comma = totals.find(',', a);
      if (comma == std::string_view::npos) comma = totals.size();
      declared.push_back(parse_int(totals.substr(a, comma - a), totals_line, "voter total"));
      a = comma + 1;
    }
  }
  if (declared.size() != 3) throw ParseError(totals_line, "voter totals line needs n_voters,n_sum,n_unique");

  BallotAccumulator acc;
  acc.k = static_cast<int>(k);
  for (; i < lines.size(); ++i) {
    const auto text = trim(lines[i]);
    if (text.empty()) continue;
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ParseError(i + 1, "ballot line needs 'count,ranking'");
    acc.add(parse_int(text.substr(0, comma), i + 1, "ballot count"), text.substr(comma + 1), i + 1);
  }
  if (acc.total != declared[0]) {
    throw ParseError(totals_line, "declared " + std::to_string(declared[0]) + " voters but ballots sum to " +
                                      std::to_string(acc.total));
  }
  if (acc.lines != declared[2]) {
    throw ParseError(totals_line, "declared " + std::to_string(declared[2]) + " unique orders but found " +
                                      std::to_string(acc.lines));
  }
  return finish(std::move(acc), std::move(labels), std::move(name), std::move(source_tag), PreflibLayout::Classic);
}

Election parse_modern(const std::vector<std::string_view>& lines, std::string name, std::string source_tag) {
  std::map<std::string, std::string> meta;
  std::map<std::int64_t, std::string> names;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> voters;
  std::optional<std::int64_t> unique;
  BallotAccumulator acc;
  std::size_t voters_line = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto text = trim(lines[i]);
    const std::size_t line = i + 1;
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto body = trim(text.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string key(trim(body.substr(0, colon)));
      const std::string value(trim(body.substr(colon + 1)));
      if (key == "NUMBER ALTERNATIVES") {
        k = parse_int(value, line, "alternative count");
        if (*k < 1 || *k > 100000) throw ParseError(line, "alternative count out of range");
        acc.k = static_cast<int>(*k);
      } else if (key == "NUMBER VOTERS") {
        voters = parse_int(value, line, "voter count");
        voters_line = line;
      } else if (key == "NUMBER UNIQUE ORDERS") {
        unique = parse_int(value, line, "unique order count");
      } else if (key.rfind("ALTERNATIVE NAME", 0) == 0) {
        names[parse_int(std::string_view(key).substr(16), line, "alternative index")] = value;
      } else {
        meta[key] = value;
      }
      continue;
    }
    if (!k) throw ParseError(line, "ballot before '# NUMBER ALTERNATIVES'");
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError(line, "ballot line needs 'count: ranking'");
    acc.add(parse_int(text.substr(0, colon), line, "ballot count"), text.substr(colon + 1), line);
  }
  if (!k) throw ParseError(lines.size(), "missing '# NUMBER ALTERNATIVES'");
  if (voters && *voters != acc.total) {
    throw ParseError(voters_line, "declared " + std::to_string(*voters) + " voters but ballots sum to " +
                                      std::to_string(acc.total));
  }
  if (unique && *unique != acc.lines) {
    throw ParseError(lines.size(), "declared " + std::to_string(*unique) + " unique orders but found " +
                                       std::to_string(acc.lines));
  }
  std::vector<std::string> labels;
  if (!names.empty()) {
    if (names.size() != static_cast<std::size_t>(*k) || names.begin()->first != 1 || names.rbegin()->first != *k) {
      throw ParseError(lines.size(), "alternative names do not cover 1.." + std::to_string(*k));
    }
    for (auto& [idx, n] : names) labels.push_back(n);
  }
  if (name.empty()) {
    if (auto it = meta.find("TITLE"); it != meta.end()) name = it->second;
  }
  auto e = finish(std::move(acc), std::move(labels), std::move(name), std::move(source_tag), PreflibLayout::Modern);
  e.metadata = std::move(meta);
  return e;
}

}  // namespace

Election parse_election(std::string_view text, std::string name, std::string source_tag) {
  const auto lines = split_lines(text);
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw ParseError(1, "empty file");
  if (trim(lines[first]).front() == '#') return parse_modern(lines, std::move(name), std::move(source_tag));
  return parse_classic(lines, std::move(name), std::move(source_tag));
}

Election load_election(const std::filesystem::path& path, std::optional<std::string> source_tag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string tag = source_tag ? *source_tag : path.parent_path().filename().string();
  try {
    return parse_election(buffer.str(), path.stem().string(), std::move(tag));
  } catch (const ParseError& e) {
    std::string detail = e.what();
    if (const auto colon = detail.find(": "); colon != std::string::npos) detail = detail.substr(colon + 2);
    throw ParseError(e.line(), path.string() + ": " + detail);
  }
}

std::vector<Election> load_elections(const std::vector<std::filesystem::path>& paths, int threads) {
  std::vector<Election> out(paths.size());
  parallel_for(paths.size(), threads, [&](std::size_t i) { out[i] = load_election(paths[i]); });
  return out;
}

std::vector<std::filesystem::path> find_election_files(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> out;
  if (std::filesystem::is_regular_file(root)) return {root};
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".soc" || ext == ".soi" || ext == ".toc" || ext == ".toi") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_classic(std::ostream& out, const Profile& p, const std::vector<TieLine>& tie_lines) {
  out << p.k() << '\n';
  for (Candidate c = 1; c <= p.k(); ++c) out << c << ',' << p.label(c) << '\n';
  std::int64_t total = p.total_voters();
  for (const auto& t : tie_lines) total += t.count;
  out << total << ',' << total << ',' << p.types().size() + tie_lines.size() << '\n';
  for (const auto& type : p.types()) {
    out << type.count;
    for (Candidate c : type.ballot) out << ',' << c;
    out << '\n';
  }
  for (const auto& t : tie_lines) out << t.count << ',' << t.ranking << '\n';
}

std::string emit_election(const Election& e) {
  std::ostringstream out;
  write_classic(out, e.profile, e.tie_lines);
  return out.str();
}

std::vector<SummaryRow> summarize(const std::vector<Election>& elections) {
  std::map<std::string, SummaryRow> rows;
  for (const auto& e : elections) {
    const int k = e.profile.k();
    const int h = e.declared_ballot_length.value_or(0);
    const std::int64_t n = e.profile.total_voters();
    auto [it, fresh] = rows.try_emplace(e.source_tag);
    auto& row = it->second;
    if (fresh) {
      row = {e.source_tag, 0, k, k, h, h, n, n};
    }
    ++row.elections;
    row.k_min = std::min(row.k_min, k);
    row.k_max = std::max(row.k_max, k);
    row.h_min = std::min(row.h_min, h);
    row.h_max = std::max(row.h_max, h);
    row.n_min = std::min(row.n_min, n);
    row.n_max = std::max(row.n_max, n);
  }
  std::vector<SummaryRow> out;
  for (auto& [tag, row] : rows) out.push_back(row);
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "source_tag,elections,k_min,k_max,h_min,h_max,n_min,n_max\n";
  for (const auto& r : rows) {
    out << r.source_tag << ',' << r.elections << ',' << r.k_min << ',' << r.k_max << ',' << r.h_min << ',' << r.h_max
        << ',' << r.n_min << ',' << r.n_max << '\n';
  }
}

AuditReport audit(const std::vector<Election>& elections, const TieBreakPolicy& policy, int threads) {
  AuditReport report;
  report.rows.resize(elections.size());
  parallel_for(elections.size(), threads, [&](std::size_t i) {
    const auto& e = elections[i];
    auto& row = report.rows[i];
    row.name = e.name;
    row.source_tag = e.source_tag;
    row.k = e.profile.k();
    row.h = e.declared_ballot_length.value_or(row.k);
    row.n = e.profile.total_voters();
    if (row.n == 0 || row.k < 2) return;
    const int last = std::min(row.h, row.k - 1);
    std::set<Candidate> distinct;
    for (int h = 1; h <= last; ++h) {
      const auto probe = irv_probe(e.profile, h, policy);
      row.winners.push_back(probe.winner);
      row.any_elim_tie = row.any_elim_tie || probe.any_elim_tie;
      distinct.insert(probe.winner);
    }
    row.distinct = static_cast<int>(distinct.size());
  });
  for (const auto& row : report.rows) {
    ++report.elections;
    if (row.distinct == 2) ++report.two_winners;
    if (row.distinct >= 3) ++report.three_or_more;
    const bool sensitive = row.distinct >= 2;
    if (row.h <= kShortBallotCutoff) {
      ++report.short_total;
      if (sensitive) ++report.short_sensitive;
    } else {
      ++report.long_total;
      if (sensitive) ++report.long_sensitive;
    }
  }
  return report;
}

void write_audit_rows_csv(std::ostream& out, const AuditReport& report, const std::vector<Election>& elections) {
  out << "name,source_tag,k,h,n,distinct_winners,any_elim_tie,winners\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    out << r.name << ',' << r.source_tag << ',' << r.k << ',' << r.h << ',' << r.n << ',' << r.distinct << ','
        << (r.any_elim_tie ? 1 : 0) << ',';
    for (std::size_t h = 0; h < r.winners.size(); ++h) {
      if (h) out << ';';
      out << elections[i].profile.label(r.winners[h]);
    }
    out << '\n';
  }
}

void write_audit_comparison_csv(std::ostream& out, const AuditReport& report) {
  auto frac = [](std::int64_t a, std::int64_t b) { return std::to_string(a) + "/" + std::to_string(b); };
  const auto sensitive = report.two_winners + report.three_or_more;
  const double pct = report.elections ? 100.0 * static_cast<double>(sensitive) / static_cast<double>(report.elections) : 0;
  std::ostringstream pct_text;
  pct_text.precision(3);
  pct_text << pct << '%';
  out << "metric,observed,reference\n";
  out << "elections," << report.elections << ",168\n";
  out << "two_winners," << frac(report.two_winners, report.elections) << ",41/168\n";
  out << "three_or_more_winners," << report.three_or_more << ",1\n";
  out << "sensitive_share," << pct_text.str() << ",25%\n";
  out << "short_ballot_sensitive," << frac(report.short_sensitive, report.short_total) << ",12/85\n";
  out << "long_ballot_sensitive," << frac(report.long_sensitive, report.long_total) << ",29/83\n";
}

}  // namespace irvlab
