#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "irvlab/constructions.hpp"
#include "irvlab/errors.hpp"
#include "irvlab/fetch.hpp"
#include "irvlab/irv.hpp"
#include "irvlab/lp_search.hpp"
#include "irvlab/preflib.hpp"
#include "irvlab/restrictions.hpp"
#include "irvlab/sim.hpp"
#include "irvlab/truncation.hpp"

namespace irvlab::cli {

namespace {

using nlohmann::json;

std::vector<Candidate> parse_candidate_list(const std::string& text) {
  std::vector<Candidate> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::logic_error&) {
      throw DomainError("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

json candidates_json(const std::vector<Candidate>& cs, const Profile& p) {
  json out = json::array();
  for (Candidate c : cs) out.push_back(p.label(c));
  return out;
}

struct TieBreakFlags {
  std::string kind = "min";
  std::uint64_t seed = 0;
  std::string script;

  void add(CLI::App* app) {
    app->add_option("--tie-break", kind, "Tie-break policy: min, max, random or script")
        ->check(CLI::IsMember({"min", "max", "random", "script"}));
    app->add_option("--tie-seed", seed, "Seed for --tie-break random");
    app->add_option("--script", script, "Comma-separated candidates for --tie-break script");
  }

  TieBreakPolicy policy() const {
    switch (parse_tie_break_kind(kind)) {
      case TieBreakKind::LexicographicMin: return TieBreakPolicy::lexicographic_min();
      case TieBreakKind::LexicographicMax: return TieBreakPolicy::lexicographic_max();
      case TieBreakKind::SeededRandom: return TieBreakPolicy::seeded(seed);
      case TieBreakKind::Scripted: return TieBreakPolicy::scripted(parse_candidate_list(script));
    }
    return {};
  }
};

// Shared state for one invocation.
struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string command_line;

  // Writes `content` to `path`, or to stdout when `path` is empty, and the
  // provenance sidecar next to any file written.
  void emit(const std::string& path, const std::string& content, json sidecar) const {
    if (path.empty()) {
      out << content;
      return;
    }
    write_file_atomic(path, content);
    sidecar["command"] = command_line;
    sidecar["version"] = kVersion;
    write_file_atomic(path + ".json", sidecar.dump(2) + "\n");
  }
};

json base_sidecar(std::optional<std::uint64_t> seed = std::nullopt) {
  json j = json::object();
  j["seed"] = seed ? json(*seed) : json(nullptr);
  return j;
}

std::string election_info(const Election& e) {
  json j;
  j["name"] = e.name;
  j["source_tag"] = e.source_tag;
  j["k"] = e.profile.k();
  j["voters"] = e.profile.total_voters();
  j["types"] = e.profile.types().size();
  j["omitted_tie_ballots"] = e.omitted_tie_ballots;
  j["declared_ballot_length"] = e.declared_ballot_length ? json(*e.declared_ballot_length) : json(nullptr);
  j["layout"] = e.layout == PreflibLayout::Classic ? "classic" : "modern";
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> collect_files(const std::vector<std::string>& inputs) {
  std::vector<std::filesystem::path> out;
  for (const auto& in : inputs) {
    for (auto& f : find_election_files(in)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot write " + tmp.string());
    file << content;
    file.flush();
    if (!file) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"IRV ballot-length analysis", "irvlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  std::string in_path;
  std::string out_path;
  std::uint64_t seed = 0;
  TieBreakFlags ties;
  std::function<void(Context&)> action;

  // tabulate
  auto* tabulate = app.add_subcommand("tabulate", "IRV elimination trace as CSV");
  int tab_h = 0;
  tabulate->add_option("--in", in_path, "Profile file")->required()->check(CLI::ExistingFile);
  tabulate->add_option("--length", tab_h, "Ballot length h (default k)");
  tabulate->add_option("--out", out_path, "Output CSV (default stdout)");
  ties.add(tabulate);
  tabulate->callback([&] {
    action = [&](Context& ctx) {
      const auto e = load_election(in_path);
      const int h = tab_h > 0 ? tab_h : e.profile.k();
      const auto trace = run_irv_truncated(e.profile, h, ties.policy());
      std::ostringstream csv;
      write_trace_csv_header(csv);
      write_trace_csv_rows(csv, h, trace, e.profile);
      json j = base_sidecar();
      j["winner"] = e.profile.label(trace.winner);
      j["h"] = h;
      j["elimination_order"] = candidates_json(trace.elimination_order, e.profile);
      j["any_elim_tie"] = trace.any_elim_tie;
      ctx.emit(out_path, csv.str(), j);
      if (!out_path.empty()) ctx.out << "winner," << e.profile.label(trace.winner) << "\n";
    };
  });

  // sequence
  auto* sequence = app.add_subcommand("sequence", "Winner at every ballot length 1..k-1");
  sequence->add_option("--in", in_path, "Profile file")->required()->check(CLI::ExistingFile);
  sequence->add_option("--out", out_path, "Output CSV (default stdout)");
  ties.add(sequence);
  sequence->callback([&] {
    action = [&](Context& ctx) {
      const auto e = load_election(in_path);
      const auto seq = winner_sequence(e.profile, ties.policy());
      std::ostringstream csv;
      csv << "h,winner\n";
      for (std::size_t h = 0; h < seq.winners.size(); ++h) {
        csv << h + 1 << ',' << e.profile.label(seq.winners[h]) << '\n';
      }
      json j = base_sidecar();
      j["winners"] = candidates_json(seq.winners, e.profile);
      j["distinct"] = seq.distinct_count;
      ctx.emit(out_path, csv.str(), j);
    };
  });

  // classify
  auto* classify = app.add_subcommand("classify", "Strongest tie class across ballot lengths");
  std::int64_t budget = kDefaultBranchBudget;
  classify->add_option("--in", in_path, "Profile file")->required()->check(CLI::ExistingFile);
  classify->add_option("--budget", budget, "Tie-branch budget")->capture_default_str();
  classify->callback([&] {
    action = [&](Context& ctx) {
      const auto e = load_election(in_path);
      const auto cls = classify_ties(e.profile, budget);
      ctx.out << "class," << to_string(cls.value) << "\nbranches," << cls.branches_explored << "\n";
    };
  });

  // construct
  auto* construct = app.add_subcommand("construct", "Build a profile with many truncation winners");
  std::string kind;
  int k = 0;
  int kappa = 0;
  int c_extra = 0;
  std::string seq_text;
  std::string variant = "ctf";
  construct->add_option("--kind", kind, "ctf, tie-free, single-peaked, k-types, min-length or full-ballot")
      ->required()
      ->check(CLI::IsMember({"ctf", "tie-free", "single-peaked", "k-types", "min-length", "full-ballot"}));
  construct->add_option("--k", k, "Candidates (ctf, tie-free, k-types)");
  construct->add_option("--kappa", kappa, "Size parameter (single-peaked, min-length, full-ballot)");
  construct->add_option("--c", c_extra, "Extra top candidates (min-length)");
  construct->add_option("--sequence", seq_text, "Target winners w_1,...,w_{k-1}");
  construct->add_option("--variant", variant, "ctf or tie-free (min-length, full-ballot)")
      ->check(CLI::IsMember({"ctf", "tie-free"}));
  construct->add_option("--out", out_path, "Output profile (default stdout)");
  construct->callback([&] {
    action = [&](Context& ctx) {
      const auto fill = variant == "ctf" ? FillVariant::ConsequentialTieFree : FillVariant::TieFree;
      const auto target = seq_text.empty() ? std::vector<Candidate>{} : parse_candidate_list(seq_text);
      Profile p;
      json j = base_sidecar();
      if (kind == "ctf" || kind == "tie-free") {
        const TargetSequence t{k, target};
        p = kind == "ctf" ? build_ctf(t) : build_tie_free(t);
      } else if (kind == "single-peaked") {
        auto sp = build_single_peaked(kappa);
        p = std::move(sp.profile);
        j["axis"] = sp.axis;
      } else if (kind == "k-types") {
        p = build_k_types(k);
      } else if (kind == "min-length") {
        p = build_min_length(kappa, c_extra, target, fill);
      } else {
        p = build_full_ballot(kappa, target, fill);
      }
      const auto seq = winner_sequence(p);
      j["kind"] = kind;
      j["k"] = p.k();
      j["target"] = target;
      j["sequence"] = seq.winners;
      j["distinct_winners"] = seq.distinct_count;
      j["voters"] = p.total_voters();
      j["types"] = p.types().size();
      j["tie_class"] = to_string(classify_ties(p).value);
      bool verified = true;
      if (!target.empty()) {
        for (std::size_t h = 0; h < target.size() && h < seq.winners.size(); ++h) {
          verified = verified && seq.winners[h] == target[h];
        }
      }
      j["verified"] = verified;
      std::ostringstream text;
      write_classic(text, p);
      ctx.emit(out_path, text.str(), j);
    };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Voter lower bounds for k-1 truncation winners");
  bounds->add_option("--k", k, "Candidates")->required();
  bounds->callback([&] {
    action = [&](Context& ctx) {
      ctx.out << "class,min_voters\n";
      for (auto cls : {TieClassValue::ConsequentialTieFree, TieClassValue::EliminationTieFree,
                       TieClassValue::TieFree}) {
        ctx.out << to_string(cls) << ',' << voter_lower_bound(k, cls) << '\n';
      }
    };
  });

  // restrict
  auto* restrict_cmd = app.add_subcommand("restrict", "Single-peaked and single-crossing checks");
  std::string axis_text;
  bool find = false;
  restrict_cmd->add_option("--in", in_path, "Profile file")->required()->check(CLI::ExistingFile);
  restrict_cmd->add_option("--axis", axis_text, "Axis as a comma-separated candidate list");
  restrict_cmd->add_flag("--find-axis", find, "Search all axes (k <= 10)");
  restrict_cmd->callback([&] {
    action = [&](Context& ctx) {
      const auto e = load_election(in_path);
      if (!axis_text.empty()) {
        ctx.out << "single_peaked_on_axis," << (is_single_peaked_on_axis(e.profile, parse_candidate_list(axis_text)) ? "true" : "false")
                << '\n';
      }
      if (find) {
        const auto axis = find_axis(e.profile);
        ctx.out << "axis,";
        if (axis) {
          for (std::size_t i = 0; i < axis->size(); ++i) ctx.out << (i ? ";" : "") << e.profile.label((*axis)[i]);
        } else {
          ctx.out << "none";
        }
        ctx.out << '\n';
      }
      std::vector<Ballot> ballots;
      for (const auto& type : e.profile.types()) ballots.push_back(type.ballot);
      ctx.out << "single_crossing_in_file_order," << (is_single_crossing_sequence(ballots) ? "true" : "false")
              << '\n';
    };
  });

  // euclid
  auto* euclid = app.add_subcommand("euclid", "Exact 1-Euclidean profile for given candidate positions");
  std::string positions;
  euclid->add_option("--positions", positions, "Comma-separated rationals in [0,1]")->required();
  euclid->add_option("--out", out_path, "Output CSV (default stdout)");
  euclid->callback([&] {
    action = [&](Context& ctx) {
      const auto spec = parse_euclidean_spec(positions);
      const auto w = euclidean_profile(spec);
      std::ostringstream csv;
      csv << "weight,ballot\n";
      for (const auto& type : w.types()) {
        csv << to_string(type.weight) << ',';
        for (std::size_t i = 0; i < type.ballot.size(); ++i) csv << (i ? ";" : "") << type.ballot[i];
        csv << '\n';
      }
      json j = base_sidecar();
      j["positions"] = positions;
      j["axis"] = euclidean_axis(spec);
      j["types"] = w.types().size();
      ctx.emit(out_path, csv.str(), j);
    };
  });

  // lp-search
  auto* lp = app.add_subcommand("lp-search", "LP search for full-ballot profiles with k-1 winners");
  SearchOptions search_options;
  lp->add_option("--k", k, "Candidates (4..10)")->required();
  lp->add_flag("--all-orders", search_options.all_orders, "Try every elimination matrix for k >= 8");
  lp->add_option("--cmax", search_options.gap_max, "Largest elimination gap")->capture_default_str();
  lp->add_option("--max-seconds", search_options.max_seconds, "Wall-clock budget (0 = none)");
  lp->add_option("--out", out_path, "Output profile")->required();
  lp->callback([&] {
    action = [&](Context& ctx) {
      const auto result = search(k, search_options);
      json j = base_sidecar();
      j["k"] = k;
      j["eliminations_tried"] = result.eliminations_tried;
      j["verified"] = result.verified;
      if (!result.profile) {
        ctx.err << "no profile found after " << result.eliminations_tried << " attempts\n";
        throw FeasibilityError("lp-search found no verified profile");
      }
      const auto& p = *result.profile;
      j["voters"] = p.total_voters();
      j["types"] = p.types().size();
      j["C"] = result.gap_used;
      j["matrix_index"] = result.matrix_index;
      j["matrix"] = result.matrix->rows;
      j["lp_objective"] = to_string(result.lp_objective);
      j["truncation_winners"] = num_truncation_winners(p);
      std::ostringstream text;
      write_classic(text, p);
      ctx.emit(out_path, text.str(), j);
      ctx.out << "voters," << p.total_voters() << "\ntypes," << p.types().size() << "\nC," << result.gap_used
              << "\nmatrix_index," << result.matrix_index << "\nverified," << (result.verified ? "true" : "false")
              << '\n';
    };
  });

  // preflib
  auto* preflib = app.add_subcommand("preflib", "PrefLib ingestion");
  preflib->require_subcommand(1);
  std::vector<std::string> inputs;
  std::string comparison_path;
  auto* parse = preflib->add_subcommand("parse", "Parse one file; re-emit it in the classic layout");
  parse->add_option("--in", in_path, "PrefLib file")->required()->check(CLI::ExistingFile);
  parse->add_option("--out", out_path, "Classic-layout output");
  parse->callback([&] {
    action = [&](Context& ctx) {
      const auto e = load_election(in_path);
      ctx.out << election_info(e);
      if (!out_path.empty()) ctx.emit(out_path, emit_election(e), base_sidecar());
    };
  });
  auto* summarize_cmd = preflib->add_subcommand("summarize", "Per-dataset k, h and ballot ranges");
  summarize_cmd->add_option("inputs", inputs, "Files or directories")->required()->check(CLI::ExistingPath);
  summarize_cmd->add_option("--out", out_path, "Output CSV (default stdout)");
  summarize_cmd->callback([&] {
    action = [&](Context& ctx) {
      const auto elections = load_elections(collect_files(inputs), threads);
      std::ostringstream csv;
      write_summary_csv(csv, summarize(elections));
      ctx.emit(out_path, csv.str(), base_sidecar());
    };
  });
  auto* fetch = preflib->add_subcommand("fetch", "Download the files listed in a manifest");
  std::string base_url;
  std::string manifest;
  std::string cache;
  fetch->add_option("--base-url", base_url, "Base URL the manifest paths are relative to")->required();
  fetch->add_option("--manifest", manifest, "Manifest of '<family> <path>' lines")
      ->required()
      ->check(CLI::ExistingFile);
  fetch->add_option("--cache", cache, "Cache directory (default $IRVLAB_CACHE or .irvlab-cache)");
  fetch->callback([&] {
    action = [&](Context& ctx) {
      const auto dir = cache.empty() ? default_cache_dir() : std::filesystem::path(cache);
      const auto report = fetch_datasets(base_url, load_manifest(manifest), dir);
      ctx.out << "downloaded," << report.downloaded.size() << "\ncached," << report.cached.size() << "\ndir,"
              << dir.string() << '\n';
    };
  });
  auto* audit_cmd = preflib->add_subcommand("audit", "Truncation winners for every election");
  audit_cmd->add_option("inputs", inputs, "Files or directories")->required()->check(CLI::ExistingPath);
  audit_cmd->add_option("--out", out_path, "Per-election CSV");
  audit_cmd->add_option("--comparison-out", comparison_path, "Comparison table CSV (default stdout)");
  audit_cmd->callback([&] {
    action = [&](Context& ctx) {
      const auto elections = load_elections(collect_files(inputs), threads);
      const auto report = audit(elections, ties.policy(), threads);
      if (!out_path.empty()) {
        std::ostringstream rows;
        write_audit_rows_csv(rows, report, elections);
        ctx.emit(out_path, rows.str(), base_sidecar());
      }
      std::ostringstream table;
      write_audit_comparison_csv(table, report);
      ctx.emit(comparison_path, table.str(), base_sidecar());
    };
  });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Synthetic-profile experiments");
  simulate->require_subcommand(1);
  SimConfig cfg;
  std::string pref_kind = "uniform";
  std::string ballot_kind = "full";
  std::optional<std::int64_t> sim_trials;
  auto add_sim_flags = [&](CLI::App* cmd) {
    cmd->add_option("--k-min", cfg.k_min, "Smallest k")->capture_default_str();
    cmd->add_option("--k-max", cfg.k_max, "Largest k")->capture_default_str();
    cmd->add_option("--trials", sim_trials, "Trials per k");
    cmd->add_option("--voters", cfg.n_voters, "Voters per uniform profile")->capture_default_str();
    cmd->add_option("--kind", pref_kind, "uniform or euclidean")->check(CLI::IsMember({"uniform", "euclidean"}));
    cmd->add_option("--ballots", ballot_kind, "full or truncated")->check(CLI::IsMember({"full", "truncated"}));
    cmd->add_option("--seed", seed, "Root seed")->capture_default_str();
    cmd->add_option("--out", out_path, "Output CSV (default stdout)");
  };
  auto sim_sidecar = [&](std::int64_t tie_trials) {
    json j = base_sidecar(seed);
    j["k_min"] = cfg.k_min;
    j["k_max"] = cfg.k_max;
    j["trials"] = cfg.trials;
    j["voters"] = cfg.n_voters;
    j["kind"] = pref_kind;
    j["ballots"] = ballot_kind;
    j["tie_trials"] = tie_trials;
    return j;
  };
  auto finish_config = [&](std::int64_t default_trials) {
    cfg.trials = sim_trials.value_or(default_trials);
    cfg.seed = seed;
    cfg.preference_kind = parse_preference_kind(pref_kind);
    cfg.ballots = parse_ballot_kind(ballot_kind);
    cfg.threads = threads;
    validate(cfg);
  };
  auto* heat = simulate->add_subcommand("heatmap", "P(length-h winner = full winner) per (k, h)");
  add_sim_flags(heat);
  heat->callback([&] {
    action = [&](Context& ctx) {
      finish_config(kDefaultHeatmapTrials);
      const auto result = heatmap(cfg);
      std::ostringstream csv;
      write_heatmap_csv(csv, result);
      ctx.emit(out_path, csv.str(), sim_sidecar(result.tie_trials));
    };
  });
  auto* winners = simulate->add_subcommand("winners", "Distinct truncation winners per k");
  add_sim_flags(winners);
  winners->callback([&] {
    action = [&](Context& ctx) {
      finish_config(kDefaultWinnerCountTrials);
      const auto result = winner_count_stats(cfg);
      std::ostringstream csv;
      write_winner_count_csv(csv, result);
      ctx.emit(out_path, csv.str(), sim_sidecar(result.tie_trials));
    };
  });

  // resample
  auto* resample_cmd = app.add_subcommand("resample", "Bootstrap winner frequencies per ballot length");
  std::int64_t trials = kDefaultResampleTrials;
  resample_cmd->add_option("--in", in_path, "Profile file")->required()->check(CLI::ExistingFile);
  resample_cmd->add_option("--trials", trials, "Resampling trials")->capture_default_str();
  resample_cmd->add_option("--seed", seed, "Root seed")->capture_default_str();
  resample_cmd->add_option("--out", out_path, "Output CSV (default stdout)");
  ties.add(resample_cmd);
  resample_cmd->callback([&] {
    action = [&](Context& ctx) {
      if (trials < 1) throw DomainError("trials must be at least 1");
      const auto e = load_election(in_path);
      const auto report = resample(e.profile, trials, seed, ties.policy(), threads);
      std::ostringstream csv;
      write_resample_csv(csv, report, e.profile);
      json j = base_sidecar(seed);
      j["trials"] = trials;
      j["actual_winners"] = candidates_json(report.actual.winners, e.profile);
      double mean = 0;
      int max = 0;
      for (int count : report.winner_counts) {
        mean += count;
        max = std::max(max, count);
      }
      j["mean_truncation_winners"] = mean / static_cast<double>(trials);
      j["max_truncation_winners"] = max;
      ctx.emit(out_path, csv.str(), j);
    };
  });

  std::vector<char*> argv;
  std::vector<std::string> storage(args);
  if (storage.empty()) storage.emplace_back("irvlab");
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  std::string command_line;
  for (std::size_t i = 0; i < storage.size(); ++i) command_line += (i ? " " : "") + storage[i];
  Context ctx{out, err, command_line};
  try {
    if (action) action(ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace irvlab::cli
