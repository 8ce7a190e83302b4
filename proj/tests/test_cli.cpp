#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(TNP_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) output += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

const std::string kTmp = "/tmp/tnp_cli_test_";

}  // namespace

TEST_CASE("ingest writes the documented matrix format") {
  std::string events = kTmp + "events.txt";
  write_file(events, "0 0 1\n5 0 1\n12 1 2\n");
  std::string out = kTmp + "matrix.txt";
  auto res = run_cli("ingest " + events + " -o " + out + " --bin 10");
  REQUIRE(res.exit_code == 0);
  CHECK(slurp(out) == "2 2 3 1\n2 0\n0 1\n");
  CHECK(slurp(out + ".json").find("\"command\": \"ingest\"") != std::string::npos);
}

TEST_CASE("ingest --undirected merges reciprocal events") {
  std::string events = kTmp + "recip.txt";
  write_file(events, "0 0 1\n1 1 0\n");
  std::string out = kTmp + "recip_matrix.txt";
  auto res = run_cli("ingest " + events + " -o " + out + " --bin 10 --undirected");
  REQUIRE(res.exit_code == 0);
  CHECK(slurp(out) == "1 1 2 0\n2\n");
}

TEST_CASE("ingest reports the offending line on malformed input") {
  std::string events = kTmp + "bad.txt";
  write_file(events, "0 1 2\n1 2 3\n2 3 4\n3 4 5\n4 5 6\n5 6 7\nbroken line here x\n");
  auto res = run_cli("ingest " + events + " -o " + kTmp + "bad_out.txt --bin 1");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("line 7") != std::string::npos);
}

TEST_CASE("profile fails cleanly on a dead matrix") {
  std::string mat = kTmp + "dead.txt";
  write_file(mat, "2 2 1 1\n0 0\n0 0\n");
  auto res = run_cli("profile " + mat + " -o " + kTmp + "dead_report.json");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("no active links") != std::string::npos);
}

TEST_CASE("unknown flags are usage errors") {
  auto res = run_cli("profile --no-such-flag");
  CHECK(res.exit_code == 1);
}

TEST_CASE("synth + profile + markov round trip") {
  std::string mat = kTmp + "sw.txt";
  auto synth = run_cli("synth small-world --nodes 14 --rewire-p 0.2 --snapshots 48 --seed 3 -o " + mat);
  REQUIRE(synth.exit_code == 0);

  std::string report = kTmp + "report.json";
  auto prof = run_cli("profile " + mat + " --baseline-runs 5 --seed 2 -o " + report);
  REQUIRE(prof.exit_code == 0);
  std::string text = slurp(report);
  CHECK(text.find("\"schema_version\": 1") != std::string::npos);
  CHECK(text.find("\"nttp\"") != std::string::npos);
  CHECK(text.find("\"digest\": \"fnv1a64:") != std::string::npos);

  std::string mk = kTmp + "markov.json";
  auto markov = run_cli("markov " + mat + " --order 1 --seed 2 -o " + mk);
  REQUIRE(markov.exit_code == 0);
  CHECK(slurp(mk).find("\"accuracy\"") != std::string::npos);
}

TEST_CASE("perturb and slice compose") {
  std::string mat = kTmp + "base.txt";
  auto synth = run_cli("synth small-world --nodes 12 --rewire-p 0.4 --snapshots 32 --seed 5 -o " + mat);
  REQUIRE(synth.exit_code == 0);

  std::string dropped = kTmp + "dropped.txt";
  auto drop = run_cli("perturb " + mat + " --drop-fraction 0.3 --seed 1 -o " + dropped);
  REQUIRE(drop.exit_code == 0);

  std::string sliced = kTmp + "sliced.txt";
  auto sl = run_cli("slice " + dropped + " --cols 0:16 -o " + sliced);
  REQUIRE(sl.exit_code == 0);
  std::istringstream header(slurp(sliced));
  std::size_t m, T;
  header >> m >> T;
  CHECK(T == 16);

  auto bad = run_cli("slice " + dropped + " --cols 5:5 -o " + kTmp + "x.txt");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("sweep emits one CSV row per grid value") {
  std::string csv = kTmp + "sweep.csv";
  auto res = run_cli(
      "sweep small-world --vary p --values 0.2,0.8 --seeds 2 --baseline-runs 3 "
      "--nodes 12 --snapshots 32 --seed 7 -o " + csv);
  REQUIRE(res.exit_code == 0);
  std::string text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);  // header + 2 rows
  CHECK(text.rfind("family,param,value,seeds,ttp_mean", 0) == 0);
}
