#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "smr_cli/cli.hpp"

namespace smr::cli {
namespace {

namespace fs = std::filesystem;

const std::string kFig1 = std::string(SMR_TEST_DATA) + "/fig1.txt";

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation smr(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("smr_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  nlohmann::json read_json(const std::string& name) const {
    std::ifstream in(path(name));
    return nlohmann::json::parse(in);
  }

  bool schema_valid(const std::vector<std::string>& names) const {
    std::string cmd = "python3 " SMR_SOURCE_DIR "/tools/validate_json.py " SMR_SOURCE_DIR "/docs/result.schema.json";
    for (const auto& n : names) cmd += " " + path(n);
    return std::system(cmd.c_str()) == 0;
  }

  fs::path dir_;
};

TEST_F(CliTest, Fig1MinViolationsWithRotations) {
  Invocation r = smr({"solve", "--problem", "min-violations", "--algo", "rotation", kFig1, "--json", path("mv.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  auto j = read_json("mv.json");
  EXPECT_EQ(j["value"], "2");
  EXPECT_EQ(j["violations"]["forbidden_used"].get<int>() + j["violations"]["forced_missing"].get<int>(), 2);
  EXPECT_EQ(j["optimality"], "proved");
}

TEST_F(CliTest, Fig1FeasibilityIsProvedInfeasible) {
  Invocation r = smr({"solve", "--problem", "feasible", kFig1, "--json", path("f.json")});
  EXPECT_EQ(r.code, kExitNone);
  EXPECT_EQ(read_json("f.json")["status"], "infeasible");
  EXPECT_TRUE(schema_valid({"f.json"}));
}

TEST_F(CliTest, Fig1MinBpExact) {
  Invocation r = smr({"solve", "--problem", "min-bp", "--algo", "exact", kFig1, "--json", path("bp.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  auto j = read_json("bp.json");
  EXPECT_EQ(j["blocking_pairs"].size(), 1u);
  EXPECT_EQ(j["matching"].size(), 3u);
  EXPECT_TRUE(schema_valid({"bp.json"}));
}

TEST_F(CliTest, AllMinBpAlgorithmsAgreeOnFig1) {
  for (std::string algo : {"exact", "bounded-p", "bounded-bp"}) {
    Invocation r = smr({"solve", "--problem", "min-bp", "--algo", algo, kFig1, "--json", path(algo + ".json")});
    EXPECT_EQ(r.code, kExitOk) << algo << r.err;
    EXPECT_EQ(read_json(algo + ".json")["value"], "1") << algo;
  }
  Invocation bounded = smr({"solve", "--problem", "min-bp", "--algo", "bounded-bp", "--k", "0", kFig1});
  EXPECT_EQ(bounded.code, kExitNone);
}

TEST_F(CliTest, AlgorithmMustFitInstanceKind) {
  std::string sr = write("sr.txt", "sr 4\na1: a2 a3\na2: a1 a4\na3: a1\na4: a2\n");
  Invocation r = smr({"solve", "--problem", "min-violations", "--algo", "rotation", sr});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("rotation"), std::string::npos);
  EXPECT_EQ(smr({"solve", "--problem", "min-bp", "--algo", "bounded-p", sr}).code, kExitError);
  EXPECT_EQ(smr({"solve", "--problem", "min-bp", "--algo", "nonsense", kFig1}).code, kExitError);
}

TEST_F(CliTest, RoommatesWithoutStableMatchingExitsTwo) {
  std::string sr = write("cycle.txt", "sr 3\na1: a2 a3\na2: a3 a1\na3: a1 a2\n");
  EXPECT_EQ(smr({"solve", "--problem", "min-violations", "--algo", "exact", sr}).code, kExitNone);
  EXPECT_EQ(smr({"solve", "--problem", "min-bp", sr}).code, kExitOk);
}

TEST_F(CliTest, WeightsFile) {
  std::string inst = write("i.txt", "sm 2 2\nu1: w1 w2\nu2: w2 w1\nw1: u2 u1\nw2: u1 u2\n");
  std::string w = write("w.txt", "u1 w1 5\nu2 w2 5\nu1 w2 1/2\nu2 w1 1/2\n");
  Invocation r = smr({"solve", "--problem", "min-weight", "--weights", w, inst, "--json", path("w.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_json("w.json")["weight"], "1");
  EXPECT_TRUE(schema_valid({"w.json"}));
}

TEST_F(CliTest, ParseErrorsReportTheLine) {
  std::string bad = write("bad.txt", "sm 1 1\nu1: w2\nw1: u1\n");
  Invocation r = smr({"check", bad});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_EQ(smr({"check", kFig1, "--json", path("c.json")}).code, kExitOk);
  EXPECT_TRUE(schema_valid({"c.json"}));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(smr({}).code, kExitError);
  EXPECT_EQ(smr({"frobnicate"}).code, kExitError);
  EXPECT_EQ(smr({"solve"}).code, kExitError);
  EXPECT_EQ(smr({"solve", "/nonexistent/file"}).code, kExitError);
  EXPECT_EQ(smr({"--help"}).code, kExitOk);
}

TEST_F(CliTest, GenIsDeterministicInSeed) {
  Invocation a = smr({"--seed", "42", "gen", "--kind", "sm", "--n", "4"});
  Invocation b = smr({"gen", "--kind", "sm", "--n", "4", "--seed", "42"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, smr({"gen", "--kind", "sm", "--n", "4", "--seed", "43"}).out);
  EXPECT_EQ(a.out.substr(0, 6), "sm 4 4");
}

TEST_F(CliTest, ReduceWritesAndVerifies) {
  std::string g = write("g.txt", "graph 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
  Invocation r = smr({"reduce", "--kind", "vc-sr", "--in", g, "--out", path("t.txt"), "--verify", "--json", path("r.json")});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  auto j = read_json("r.json");
  EXPECT_EQ(j["forward_check"], "pass");
  EXPECT_EQ(j["equivalence_check"], "pass");
  EXPECT_EQ(smr({"check", path("t.txt")}).code, kExitOk);
  EXPECT_TRUE(schema_valid({"r.json"}));

  Invocation wrong = smr({"reduce", "--kind", "e3sat", "--in", g});
  EXPECT_EQ(wrong.code, kExitError);
  EXPECT_EQ(smr({"reduce", "--kind", "no-such", "--in", g}).code, kExitError);
}

TEST_F(CliTest, OracleOnSources) {
  std::string g = write("g.txt", "graph 3\ne 1 2\ne 2 3\ne 1 3\n");
  Invocation r = smr({"oracle", "--problem", "source:vertex-cover", g, "--json", path("o.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(read_json("o.json")["value"], 2);
  std::string c6 = write("c6.txt", "graph 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n");
  EXPECT_EQ(smr({"oracle", "--problem", "source:exact-mm", "--K", "2", c6}).code, kExitOk);
  EXPECT_EQ(smr({"oracle", "--problem", "source:exact-mm", "--K", "1", c6}).code, kExitNone);
  EXPECT_TRUE(schema_valid({"o.json"}));
}

TEST_F(CliTest, OracleGuardIsEnforced) {
  Invocation big = smr({"--limit", "4", "oracle", "--problem", "min-bp", kFig1});
  EXPECT_EQ(big.code, kExitError);
  EXPECT_NE(big.err.find("estimated"), std::string::npos) << big.err;
}

TEST_F(CliTest, EmptyBenchConfig) {
  std::string cfg = write("empty.json", "");
  Invocation r = smr({"bench", cfg, "--json", path("e.json")});
  EXPECT_EQ(r.code, kExitOk);
  auto j = read_json("e.json");
  EXPECT_TRUE(j["records"].empty());
  EXPECT_TRUE(j["aggregate"].empty());
  EXPECT_TRUE(schema_valid({"e.json"}));
}

TEST_F(CliTest, BenchRecordsAreOrderedAndAgreeWithOracle) {
  std::string cfg = write("cfg.json", R"({
    "generators": [{"kind": "sm", "n": 6, "density": 0.7, "p": 1, "count": 50, "seed": 100}],
    "algorithms": [{"problem": "min-bp", "algo": "exact"}, {"problem": "min-bp", "algo": "bounded-bp"}]
  })");
  Invocation one = smr({"bench", cfg, "--json", path("one.json")});
  Invocation two = smr({"--jobs", "3", "bench", cfg, "--json", path("two.json")});
  EXPECT_EQ(one.code, kExitOk) << one.err;
  EXPECT_EQ(two.code, kExitOk) << two.err;
  auto a = read_json("one.json");
  auto b = read_json("two.json");
  ASSERT_EQ(a["records"].size(), 100u);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(a["records"][i]["index"], i);
  for (const auto& row : a["aggregate"]) EXPECT_EQ(row["agreement_rate"], 1.0) << row.dump();
  EXPECT_EQ(without_timings(a).dump(), without_timings(b).dump());
  EXPECT_TRUE(schema_valid({"one.json", "two.json"}));
}

TEST_F(CliTest, BenchApproxRatioStaysWithinTwo) {
  std::string cfg = write("cfg.json", R"({
    "generators": [{"kind": "sr", "n": 10, "density": "1/2", "p": 4, "count": 40}],
    "algorithms": [{"problem": "min-violations", "algo": "approx2"}]
  })");
  Invocation r = smr({"bench", cfg, "--json", path("a.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  auto j = read_json("a.json");
  EXPECT_EQ(j["aggregate"][0]["agreement_rate"], 1.0);
  for (const auto& rec : j["records"]) {
    if (!rec["oracle_value"].is_null() && rec["status"] == "solved") {
      EXPECT_LE(std::stoi(rec["value"].get<std::string>()), 2 * std::stoi(rec["oracle_value"].get<std::string>()));
    }
  }
}

TEST_F(CliTest, BenchConfigErrors) {
  EXPECT_EQ(smr({"bench", write("x.json", "{not json")}).code, kExitError);
  EXPECT_EQ(smr({"bench", write("y.json", R"({"generatorz": []})")}).code, kExitError);
  EXPECT_EQ(smr({"bench", write("z.json", R"({"generators": [{"kind": "hr"}]})")}).code, kExitError);
}

TEST(WithoutTimings, StripsNestedMembers) {
  auto j = nlohmann::json::parse(R"({"runtime_ms": 1, "a": [{"median_runtime_ms": 2, "b": 3}]})");
  EXPECT_EQ(without_timings(j).dump(), R"({"a":[{"b":3}]})");
}

}  // namespace
}  // namespace smr::cli
