#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

using irvlab::testing::fixture;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "irvlab");
  std::ostringstream out;
  std::ostringstream err;
  const int code = irvlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "irvlab-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("sequence of the worked example") {
  const auto r = run({"sequence", "--in", fixture("fig2.soi")});
  CHECK(r.code == 0);
  CHECK(r.out == "h,winner\n1,A\n2,B\n3,C\n");
}

TEST_CASE("bounds") {
  const auto r = run({"bounds", "--k", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "class,min_voters\nconsequential-tie-free,40\nelimination-tie-free,55\ntie-free,70\n");
  CHECK(run({"bounds", "--k", "2"}).code == 1);
}

TEST_CASE("construct then analyze") {
  const auto path = scratch("ctf4.soi").string();
  const auto r = run({"construct", "--kind", "ctf", "--k", "4", "--sequence", "2,3,4", "--out", path});
  REQUIRE(r.code == 0);
  const auto seq = run({"sequence", "--in", path});
  CHECK(seq.out == "h,winner\n1,2\n2,3\n3,4\n");
  const auto sidecar = nlohmann::json::parse(slurp(path + ".json"));
  CHECK(sidecar["voters"] == 24);
  CHECK(sidecar["verified"] == true);
  CHECK(sidecar["tie_class"] == "consequential-tie-free");
  CHECK(sidecar["version"] == "0.1.0");
  CHECK(run({"classify", "--in", path}).out.rfind("class,consequential-tie-free\n", 0) == 0);
  CHECK(run({"construct", "--kind", "ctf", "--k", "4", "--sequence", "2,2,4"}).code == 1);
}

TEST_CASE("usage and domain errors") {
  CHECK(run({"sequence", "--bogus"}).code == 2);
  CHECK(run({"sequence", "--in", "/nonexistent/file.soi"}).code == 2);
  CHECK(run({}).code == 2);
  const auto bad = scratch("bad.soi");
  std::ofstream(bad) << "2\n1,A\n2,B\n1,1,1\n1,3\n";
  const auto r = run({"tabulate", "--in", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 5") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("tabulate") {
  const auto r = run({"tabulate", "--in", fixture("fig2.soi"), "--length", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("h,round,candidate,tally,eliminated_flag,exhausted_after\n", 0) == 0);
  CHECK(r.out.find("2,1,D,5,1,0\n") != std::string::npos);
}

TEST_CASE("stochastic commands are reproducible") {
  const auto a = scratch("heat_a.csv").string();
  const auto b = scratch("heat_b.csv").string();
  const std::vector<std::string> common{"simulate", "heatmap", "--k-min", "3", "--k-max", "5", "--trials", "20",
                                        "--voters", "50", "--seed", "4"};
  auto with = [&](const std::string& out, const std::string& threads) {
    auto args = common;
    args.insert(args.begin(), {"--threads", threads});
    args.insert(args.end(), {"--out", out});
    return run(args);
  };
  REQUIRE(with(a, "1").code == 0);
  REQUIRE(with(b, "3").code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(nlohmann::json::parse(slurp(a + ".json"))["seed"] == 4);

  const auto r1 = run({"resample", "--in", fixture("fig2.soi"), "--trials", "50", "--seed", "2"});
  const auto r2 = run({"resample", "--in", fixture("fig2.soi"), "--trials", "50", "--seed", "2"});
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out.rfind("h,candidate,frequency,actual_winner_flag\n", 0) == 0);

  const auto w = run({"simulate", "winners", "--k-min", "2", "--k-max", "3", "--trials", "10", "--voters", "20",
                      "--kind", "euclidean"});
  CHECK(w.code == 0);
  CHECK(w.out.find(",euclidean,full\n") != std::string::npos);
}

TEST_CASE("restrict and euclid") {
  const auto sp = scratch("sp3.soi").string();
  REQUIRE(run({"construct", "--kind", "single-peaked", "--kappa", "3", "--out", sp}).code == 0);
  const auto r = run({"restrict", "--in", sp, "--find-axis"});
  CHECK(r.code == 0);
  CHECK(r.out.find("axis,") != std::string::npos);
  CHECK(r.out.find("axis,none") == std::string::npos);
  const auto e = run({"euclid", "--positions", "0,1/2,1"});
  CHECK(e.out == "weight,ballot\n1/4,1;2;3\n1/4,2;1;3\n1/4,2;3;1\n1/4,3;2;1\n");
  CHECK(run({"euclid", "--positions", "0,0"}).code == 1);
}

TEST_CASE("preflib subcommands") {
  const auto parsed = run({"preflib", "parse", "--in", fixture("sample.toi")});
  CHECK(parsed.code == 0);
  CHECK(nlohmann::json::parse(parsed.out)["omitted_tie_ballots"] == 6);
  const auto summary = run({"preflib", "summarize", fixture("")});
  CHECK(summary.out.rfind("source_tag,elections,k_min,k_max,h_min,h_max,n_min,n_max\nfixtures,5,", 0) == 0);
  const auto audit = run({"preflib", "audit", fixture("")});
  CHECK(audit.code == 0);
  CHECK(audit.out.find("elections,5,168\n") != std::string::npos);
}

TEST_CASE("lp-search writes a verified profile") {
  const auto path = scratch("lp4.soi").string();
  const auto r = run({"lp-search", "--k", "4", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("verified,true") != std::string::npos);
  const auto seq = run({"sequence", "--in", path});
  CHECK(seq.out == "h,winner\n1,2\n2,3\n3,4\n");
}
