// Copyright 2026 The ghzmpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.h"

namespace ghzmpc::cli {
namespace {

namespace fs = std::filesystem;

std::string fn(const std::string& name) {
  return std::string(GHZMPC_DATA_DIR) + "/" + name + ".json";
}

ExperimentConfig config(const std::string& function, const std::string& scheme) {
  ExperimentConfig c;
  c.function_file = fn(function);
  c.scheme = scheme;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Binary : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ghzmpc_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string(GHZMPC_BINARY) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

TEST(ParseInputs, BitStrings) {
  EXPECT_EQ(parse_inputs("1,01"), (std::vector<std::vector<Bit>>{{1}, {0, 1}}));
  EXPECT_THROW(parse_inputs("1,2"), ConfigError);
  EXPECT_THROW(parse_inputs(""), ConfigError);
}

TEST(Config, JsonRoundTripAndValidation) {
  auto c = config("and", "C");
  c.tester_policy = protocol::TesterPolicy{0.3, 0.2, 7};
  c.cheat = protocol::CheatConfig::flip_sum(protocol::kBob);
  c.inputs = "1,1";
  const auto back = ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_NO_THROW(back.validate());

  auto bad = config("and", "B");
  bad.tester_policy = protocol::TesterPolicy{};
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = config("and", "Z");
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = config("and", "A");
  bad.cheat = protocol::CheatConfig::flip_sum(protocol::kAlice);
  EXPECT_THROW(bad.validate(), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json({{"seed", "x"}}), ConfigError);
}

TEST(Commands, GhzCheckPasses) {
  const auto r = cmd_ghz_check(2000, 3).to_json();
  EXPECT_EQ(r["kind"], "GhzCheck");
  EXPECT_EQ(r["schema_version"], kSchemaVersion);
  EXPECT_EQ(r["payload"]["stabilizers_ok"], true);
  EXPECT_EQ(r["payload"]["total_violations"], 0);
}

TEST(Commands, DecomposeReportsTermsAndViolations) {
  const auto eq = cmd_decompose(fn("eq2")).payload;
  EXPECT_EQ(eq["inner_product"]["m"], 4);
  const auto xyz = cmd_decompose(fn("xyz")).payload;
  EXPECT_EQ(xyz["degree2"]["ok"], false);
  EXPECT_EQ(xyz["degree2"]["offending_monomial"].get<std::string>().size() > 0, true);
  const auto p4 = cmd_decompose(fn("pairwise4")).payload;
  EXPECT_EQ(p4["degree2"]["num_terms"], 6);
}

TEST(Commands, RunIsReplayableFromItsReport) {
  auto c = config("eq2", "C");
  c.inputs = "10,10";
  c.seed = 42;
  const auto first = cmd_run(c);
  EXPECT_EQ(first.report.payload["output"], 1);
  const auto replay = cmd_run(ExperimentConfig::from_json(first.report.config));
  EXPECT_EQ(replay.report.to_json(), first.report.to_json());
  EXPECT_EQ(replay.transcript_jsonl, first.transcript_jsonl);
}

TEST(Commands, SweepCoversEveryInputAndSeed) {
  auto c = config("and", "B");
  const auto s = cmd_sweep(c);
  EXPECT_EQ(s.report.payload["rows"], 400);
  EXPECT_EQ(s.report.payload["failures"], 0);
  std::istringstream lines(s.csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "inputs,seed,output,halted,detection_repetition");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 400);
}

TEST(Commands, PrivacyAuditAllCoalitions) {
  const auto r = cmd_privacy_audit(config("and", "B")).payload;
  ASSERT_EQ(r["audits"].size(), 6u);
  for (const auto& a : r["audits"]) EXPECT_LT(std::abs(a["excess_bits"].get<double>()), 1e-9);
  auto c = config("and", "A");
  c.coalition = "Charlie";
  c.inputs = "0,0";
  const auto one = cmd_privacy_audit(c).payload;
  ASSERT_EQ(one["audits"].size(), 1u);
  EXPECT_TRUE(one["audits"][0].contains("observed"));
  auto m = config("pairwise3", "Multiparty");
  const auto t = cmd_privacy_audit(m).payload;
  EXPECT_EQ(t["entries"].size(), 6u);
}

TEST(Commands, AttackAndEpr) {
  auto c = config("and", "C");
  c.cheat = protocol::CheatConfig::flip_sum(protocol::kBob);
  c.trials = 200;
  const auto a = cmd_attack(c).payload;
  EXPECT_EQ(a["detected"], 200);
  EXPECT_EQ(a["n_rep_cap"], kAttackRepetitionCap);
  auto e = config("and", "B1sided");
  e.trials = 50;
  e.quantum_exchange = true;
  EXPECT_EQ(cmd_epr(e).payload["successes"], 50);
  e.quantum_exchange = false;
  EXPECT_EQ(cmd_epr(e).payload["successes"], 0);
  EXPECT_THROW(cmd_attack(config("and", "C")), ConfigError);
}

TEST_F(Binary, ExitCodes) {
  const std::string out = (dir_ / "out").string();
  EXPECT_EQ(run("ghz-check --samples 200 --out " + out), 0);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "ghz_check.json"));
  EXPECT_EQ(run("run --function " + fn("and") + " --scheme B --inputs 1,1 --out " + out), 0);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "transcript.jsonl"));
  const auto report = nlohmann::json::parse(slurp(dir_ / "out" / "run.json"));
  EXPECT_EQ(report["payload"]["output"], 1);
  // A cheating Bob is caught at some repetition.
  EXPECT_EQ(run("run --function " + fn("and") +
                " --scheme C --inputs 1,1 --cheat flipsum:bob --nrep 200 --seed 5"),
            2);
  EXPECT_EQ(run("run --function " + fn("and") + " --scheme Q --inputs 1,1"), 1);
  EXPECT_EQ(run("run --function " + fn("and") + " --scheme B --ta 0.3 --inputs 1,1"), 1);
  EXPECT_EQ(run("decompose"), 1);
  EXPECT_EQ(run("bogus-command"), 1);
  EXPECT_EQ(run("decompose --function /nonexistent.json"), 1);
}

TEST_F(Binary, ConfigFileAndEnvironmentOutputDir) {
  const fs::path cfg = dir_ / "cfg.json";
  std::ofstream(cfg) << R"({"function_file": ")" << fn("xor")
                     << R"(", "scheme": "A", "inputs": "1,0", "seed": 9})";
  const std::string env_dir = (dir_ / "env").string();
  EXPECT_EQ(run("run --config " + cfg.string() + " --seed 10 --out " + env_dir), 0);
  const auto report = nlohmann::json::parse(slurp(dir_ / "env" / "run.json"));
  EXPECT_EQ(report["seed"], 10);  // flag overrides the file
  EXPECT_EQ(report["payload"]["output"], 1);
  const std::string cmd = "GHZMPC_OUT_DIR=" + (dir_ / "viaenv").string() + " " +
                          std::string(GHZMPC_BINARY) + " decompose --function " + fn("eq2") +
                          " > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "viaenv" / "decompose.json"));
}

}  // namespace
}  // namespace ghzmpc::cli
