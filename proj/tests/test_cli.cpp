#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fcrystal::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "fcrystal_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("gamma tables") {
  auto r = run({"gamma", "--r", "2", "--perm", "(1 2)", "--slopes", "0,4", "--m-max", "6"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "gamma 0,1,2,3,4,4,4\n"));
  CHECK(has(r.out, "stabilization 4 (not known"));
  CHECK(has(r.out, "ordinary n/a"));

  r = run({"gamma", "--r", "2", "--perm", "(1 2)", "--slopes", "0,1", "--m-max", "3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "gamma 0,1,1,1\n"));
  CHECK(has(r.out, "stabilization 1 (isomorphism number)"));

  r = run({"gamma", "--r", "3", "--perm", "1 2 3", "--slopes", "0,0,0", "--m-max", "2"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "gamma 0,0,0\n"));
  CHECK(has(r.out, "ordinary yes"));
}

TEST_CASE("endomorphism exponents") {
  auto r = run({"endo", "--r", "2", "--perm", "1 2", "--slopes", "0,0", "--m", "3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "m=3 b=12\n"));
  r = run({"endo", "--r", "2", "--perm", "(1 2)", "--slopes", "0,1", "--m", "1"});
  CHECK(has(r.out, "m=1 b=2\n"));
  r = run({"endo", "--r", "2", "--perm", "(1 2)", "--slopes", "0,1", "--m", "1", "--prime", "2"});
  CHECK(has(r.out, "p^b=4"));
  r = run({"endo", "--slopes", "0,1", "--perm", "(1 2)", "--m", "1", "--prime", "4"});
  CHECK(r.code == 2);
  r = run({"endo", "--slopes", "0,1", "--perm", "(1 2)", "--m-max", "3", "--format", "csv"});
  CHECK(r.out == "m,b\n1,2\n2,6\n3,10\n");
}

TEST_CASE("verify modes") {
  auto r = run({"verify", "--r-max", "3", "--slope-max", "1", "--m-max", "4"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "mismatches 0"));

  r = run({"verify", "--seq", "3,0,-1,-2", "--m", "5"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "m=5 formula l=3 c=2 oracle l=3 c=2 w=8"));
  CHECK(has(r.out, "match"));

  r = run({"verify", "--seq", "0,0", "--m", "4"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "formula l=0 c=4 oracle l=0 c=4"));

  r = run({"verify", "--perm", "(1 2 3)", "--slopes", "0,1,1", "--m-max", "4"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "checks 12 mismatches 0"));
}

TEST_CASE("scans") {
  auto r = run({"scan", "--family", "circular-dieudonne", "--r", "4", "--m-max", "6"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "summary family=circular-dieudonne r=4 records=96 strict=0"));

  r = run({"scan", "--family", "all-dieudonne", "--r", "3", "--m-max", "5", "--check", "ratio"});
  CHECK(r.code == 0);
  CHECK(has(r.out, " ratio=0 "));
  CHECK_FALSE(has(r.out, " strict="));

  r = run({"scan", "--family", "circular-fcrystal", "--r", "2", "--slope-max", "4", "--m-max", "6"});
  CHECK(r.code == 0);
  for (int e = 2; e <= 4; ++e) {
    const std::string line = "pi=(1 2) slopes=0," + std::to_string(e) + " stab=" + std::to_string(e);
    const auto at = r.out.find(line);
    REQUIRE(at != std::string::npos);
    CHECK(has(r.out.substr(at, r.out.find('\n', at) - at), "constant-delta"));
  }

  r = run({"scan", "--r", "3", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("permutation,slopes,", 0) == 0);
  CHECK(has(r.err, "summary"));

  CHECK(run({"scan", "--r", "3", "--family", "nope"}).code == 2);
  CHECK(run({"scan", "--r", "3", "--check", "bogus"}).code == 2);
  CHECK(run({"scan", "--family", "all-fcrystal", "--r", "8", "--slope-max", "3"}).code == 3);
}

TEST_CASE("minimality reports") {
  auto r = run({"minimal", "--perm", "(1 2)", "--slopes", "0,1"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "minimal true"));
  CHECK(has(r.out, "newton_slopes 1/2,1/2"));
  CHECK(has(r.out, "cross_check ok"));

  r = run({"minimal", "--perm", "(1 2 3 4)", "--slopes", "0,0,1,1"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "minimal false"));

  r = run({"minimal", "--slopes", "0,0,0"});
  CHECK(has(r.out, "minimal true"));

  CHECK(run({"minimal", "--perm", "(1 2)", "--slopes", "0,2"}).code == 2);
}

TEST_CASE("exit codes for bad input and guard rails") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"gamma", "--perm", "(1 3)", "--slopes", "0,1"}).code == 2);
  CHECK(run({"gamma", "--r", "3", "--slopes", "0,1"}).code == 2);
  CHECK(run({"gamma", "--slopes", "0,-1"}).code == 2);
  CHECK(run({"gamma", "--slopes", "0,x"}).code == 2);
  CHECK(run({"gamma", "--perm", "(1 2)"}).code == 2);
  CHECK(run({"gamma", "--slopes", "0,1", "--format", "xml"}).code == 2);
  CHECK(run({"gamma", "--slopes", "0,0,0,0,0,0,0,0,0"}).code == 3);
  CHECK(run({"gamma", "--slopes", "0,1", "--m-max", "17"}).code == 3);
  CHECK(run({"gamma", "--slopes", "0,0,0,0,0,0,0,0,0", "--no-limits", "--m-max", "2"}).code == 0);
  CHECK(run({"gamma", "--slopes", "0,1", "--m-max", "0"}).code == 2);
  CHECK(run({"verify", "--dump-digraph", "x.dot"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const auto bad = run({"gamma", "--perm", "(1 x)", "--slopes", "0,1"});
  CHECK(has(bad.err, "position 3"));
}

TEST_CASE("machine output is versioned and deterministic") {
  const std::vector<std::string> args{"gamma", "--perm", "(1 2 3)", "--slopes", "0,1,1", "--m-max", "5", "--format", "json"};
  const Result a = run(args);
  const Result b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["schema"] == "fcrystal.gamma/1");
  CHECK(j["input"]["permutation"] == "(1 2 3)");
  CHECK(j["gamma"].size() == 6);
  CHECK(j["orbits"].size() == 3);
  CHECK(j["delta"].size() == 5);

  const Result s1 = run({"scan", "--r", "3", "--format", "json", "--threads", "1"});
  const Result s4 = run({"scan", "--r", "3", "--format", "json", "--threads", "4"});
  CHECK(s1.out == s4.out);
  CHECK(nlohmann::json::parse(s1.out)["summary"]["records"] == 16);
}

TEST_CASE("file outputs land atomically") {
  const auto path = scratch("gamma.json");
  std::filesystem::remove(path);
  const std::vector<std::string> base{"gamma", "--perm", "(1 2)", "--slopes", "0,3", "--format", "json"};
  const Result printed = run(base);
  auto with_out = base;
  with_out.insert(with_out.end(), {"--out", path.string()});
  const Result written = run(with_out);
  CHECK(written.code == 0);
  CHECK(written.out.empty());
  CHECK(slurp(path) == printed.out);
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));

  const auto scan_path = scratch("scan.csv");
  const Result scan = run({"scan", "--r", "3", "--format", "csv", "--out", scan_path.string()});
  CHECK(scan.code == 0);
  CHECK(has(scan.out, "summary"));
  CHECK(slurp(scan_path).rfind("permutation,", 0) == 0);

  CHECK(run({"gamma", "--slopes", "0,1", "--out", "/nonexistent-dir/x/y.txt"}).code == 2);
}

TEST_CASE("digraph dump") {
  const auto path = scratch("g.dot");
  const Result r = run({"verify", "--seq", "3,-3", "--m", "5", "--dump-digraph", path.string()});
  CHECK(r.code == 0);
  const std::string dot = slurp(path);
  CHECK(has(dot, "digraph"));
  CHECK(has(dot, "\"0:1\""));
  CHECK(has(dot, "\"4:2\""));
}
