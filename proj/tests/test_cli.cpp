#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rankstore/scenario.hpp"

using namespace rankstore;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + RANKSTORE_CLI + std::string(" ") + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string source(const std::string& rel) { return std::string(RANKSTORE_SOURCE_DIR) + "/" + rel; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("rankstore_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Plan, ZigzagScenario) {
  auto r = run("plan --alpha 4 --k 3 --t 1 --n 5 --d 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "K: 4\n"));
  EXPECT_TRUE(has(r.out, "delta: 9\n"));
  EXPECT_TRUE(has(r.out, "beta: 2\n"));
  EXPECT_TRUE(has(r.out, "resilience_capacity: 4 "));
  EXPECT_TRUE(has(r.out, "capacity: attained"));
}

TEST(Plan, NoAdversary) {
  auto r = run("plan --t 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "K: 12\n"));
  EXPECT_TRUE(has(r.out, "delta: 1\n"));
}

TEST(Plan, Infeasible) {
  auto r = run("plan --k 3 --t 2");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r.out, "k > 2t violated"));
  EXPECT_EQ(run("plan --alpha").code, 2);
}

TEST(Run, Example4MatchesGolden) {
  auto r = run("run " + source("scenarios/example4.scn"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, slurp(source("tests/golden/example4.report")));
  EXPECT_TRUE(has(r.out, "    2 0 1 0\n    0 2 0 1\n    0 0 0 0\n    0 0 0 0\n"));
  EXPECT_TRUE(has(r.out, "aggregate_rank: 4\n"));
}

TEST(Run, EmptyScenario) {
  auto r = run("run " + source("scenarios/empty.scn"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "event 1: store outcome=ok aggregate_rank=0\n"));
  EXPECT_FALSE(has(r.out, "event 2"));
}

TEST(Run, DynamicUnprotectedFailureIsExpected) {
  auto r = run("run " + source("scenarios/dynamic-unprotected.scn"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "outcome=fail"));
  EXPECT_TRUE(has(r.out, "assertions: pass"));
}

TEST(Run, ViolatedExpectationExitsOne) {
  auto dir = scratch("violated");
  std::ofstream(dir / "bad.scn") << R"({"code": "zigzag", "params": {"alpha": 4, "k": 3, "n": 5, "d": 4, "t": 1},
    "events": [{"op": "repair", "node": 1, "expect": {"download": 12}}]})";
  auto r = run("run " + (dir / "bad.scn").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r.out, "expected download 12, got 8"));
}

TEST(Run, InvalidScenarioExitsTwo) {
  auto dir = scratch("invalid");
  std::ofstream(dir / "a.scn") << R"({"code": "zigzag", "params": {"alpha": 4, "k": 3, "n": 5, "d": 4, "t": 2}})";
  std::ofstream(dir / "b.scn") << R"({"code": "zigzag", "params": {"alpha": 4, "k": 3, "n": 5, "d": 4, "t": 1},
    "adversary": {"model": "static", "nodes": [6]}})";
  std::ofstream(dir / "c.scn") << "{not json";
  auto a = run("run " + (dir / "a.scn").string());
  EXPECT_EQ(a.code, 2);
  EXPECT_TRUE(has(a.out, "k > 2t violated"));
  auto b = run("run " + (dir / "b.scn").string());
  EXPECT_EQ(b.code, 2);
  EXPECT_TRUE(has(b.out, "node numbers run from 1 to n = 5"));
  EXPECT_EQ(run("run " + (dir / "c.scn").string()).code, 2);
  EXPECT_EQ(run("run /nonexistent/x.scn").code, 2);
}

TEST(Run, SeedOverrideFromEnvironment) {
  auto r = run("run " + source("scenarios/example4.scn"), "RANKSTORE_SEED=77");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "seed: 77\n"));
  EXPECT_EQ(run("run " + source("scenarios/example4.scn"), "RANKSTORE_SEED=x").code, 2);
}

TEST(Run, EveryBundledScenarioIsDeterministic) {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(source("scenarios"))) {
    if (entry.path().extension() != ".scn") continue;
    ++count;
    auto a = run("run " + entry.path().string());
    auto b = run("run " + entry.path().string());
    EXPECT_EQ(a.code, 0) << entry.path() << "\n" << a.out;
    EXPECT_EQ(a.out, b.out) << entry.path();
  }
  EXPECT_GE(count, 8u);
}

TEST(EncodeDecode, RoundTripFromNodes145) {
  auto dir = scratch("roundtrip");
  std::string data;
  for (int i = 0; i < 700; ++i) data.push_back(static_cast<char>((i * 37 + 11) % 256));
  std::ofstream(dir / "in.bin", std::ios::binary) << data;
  ASSERT_EQ(run("encode " + (dir / "in.bin").string() + " --out-dir " + (dir / "nodes").string()).code, 0);
  const auto n = [&](int i) { return (dir / "nodes" / ("node" + std::to_string(i) + ".txt")).string(); };
  auto r = run("decode " + n(1) + " " + n(4) + " " + n(5) + " -o " + (dir / "out.bin").string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(dir / "out.bin"), data);
}

TEST(EncodeDecode, CorruptedNodeIsCorrected) {
  auto dir = scratch("corrupt");
  std::ofstream(dir / "in.txt") << "a small file stored across five nodes\n";
  ASSERT_EQ(run("encode " + (dir / "in.txt").string() + " --out-dir " + dir.string()).code, 0);
  const auto n = [&](int i) { return (dir / ("node" + std::to_string(i) + ".txt")).string(); };
  for (int bad : {2, 3, 5}) {
    auto r = run("decode " + n(2) + " " + n(3) + " " + n(5) + " --corrupt " + std::to_string(bad) + " -o " +
                 (dir / "out.txt").string());
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(slurp(dir / "out.txt"), slurp(dir / "in.txt"));
  }
  auto two = run("decode " + n(2) + " " + n(3) + " " + n(5) + " --corrupt 2 --corrupt 3 -o " +
                 (dir / "out.txt").string());
  EXPECT_EQ(two.code, 1);
}

TEST(EncodeDecode, TooFewNodes) {
  auto dir = scratch("few");
  std::ofstream(dir / "in.txt") << "x";
  ASSERT_EQ(run("encode " + (dir / "in.txt").string() + " --out-dir " + dir.string()).code, 0);
  auto r = run("decode " + (dir / "node1.txt").string() + " " + (dir / "node2.txt").string() + " -o " +
               (dir / "o").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r.out, "need k nodes"));
}

TEST(EncodeDecode, EmptyFile) {
  auto dir = scratch("empty");
  std::ofstream(dir / "in.bin");
  ASSERT_EQ(run("encode " + (dir / "in.bin").string() + " --out-dir " + dir.string()).code, 0);
  const auto n = [&](int i) { return (dir / ("node" + std::to_string(i) + ".txt")).string(); };
  EXPECT_EQ(run("decode " + n(1) + " " + n(2) + " " + n(3) + " -o " + (dir / "out.bin").string()).code, 0);
  EXPECT_EQ(slurp(dir / "out.bin"), "");
}

TEST(Lrc, DefaultSweep) {
  auto r = run("lrc");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "120/120 erasure patterns decoded"));
  EXPECT_TRUE(has(r.out, "500/500 group-spread rank-1 errors corrected"));
  EXPECT_TRUE(has(r.out, "pattern 1,2,3: pass"));
}

TEST(Lrc, Distance) {
  auto r = run("lrc --distance 10 6 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4\n");
  EXPECT_EQ(run("lrc --distance 10 6").code, 2);
}

TEST(Lrc, WorstFourErasures) {
  auto r = run("lrc --erasures 4 --pattern worst");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "pattern 1,2,3,4: failed (expected failure)"));
}

TEST(Scenario, ParseAndRunInProcess) {
  auto c = load_scenario(source("scenarios/example4.scn"));
  EXPECT_EQ(c.code, "zigzag");
  EXPECT_EQ(c.adversary_nodes, std::vector<std::size_t>{0});
  ASSERT_EQ(c.events.size(), 2u);
  EXPECT_EQ(c.events[0].nodes, std::vector<std::size_t>{1});
  auto out = run_scenario(c);
  EXPECT_TRUE(out.passed());
  EXPECT_EQ(out.report, run_scenario(c).report);
}

TEST(Scenario, RejectsUnknownKeysAndOps) {
  const std::string base = R"("code": "zigzag", "params": {"alpha": 4, "k": 3, "n": 5, "d": 4, "t": 1})";
  EXPECT_THROW(parse_scenario("{" + base + R"(, "colour": 1})"), ParameterError);
  EXPECT_THROW(parse_scenario("{" + base + R"(, "events": [{"op": "explode", "node": 1}]})"), ParameterError);
  EXPECT_THROW(parse_scenario("{" + base + R"(, "events": [{"op": "collect", "nodes": [1, 2]}]})"), ParameterError);
  EXPECT_THROW(parse_scenario(R"({"code": "lrc", "params": {"m": 7, "k": 5, "r": 3}})"), ParameterError);
  EXPECT_THROW(parse_scenario(R"({"code": "zigzag", "params": {"alpha": 5, "k": 3, "n": 5, "d": 4, "t": 1}})"),
               ParameterError);
}
