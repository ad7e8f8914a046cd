// Copyright 2026 The dosgame Authors.
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

// Runs the installed command-line tool end to end.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const fs::path kSource = DOSGAME_SOURCE_DIR;

int RunCli(const std::string& args) {
  const std::string cmd =
      std::string(DOSGAME_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> Snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), dir).string()] = Slurp(e.path());
    }
  }
  return files;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("dosgame_cli_" +
             std::string(::testing::UnitTest::GetInstance()
                             ->current_test_info()
                             ->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string Config(const std::string& name) const {
    return (kSource / "configs" / name).string();
  }
  void RunAll(const fs::path& out) {
    const std::string o = " --out " + out.string();
    const std::string d = " --config " + Config("default.json");
    ASSERT_EQ(RunCli("steady" + d + o), 0);
    ASSERT_EQ(RunCli("solve" + d + o), 0);
    ASSERT_EQ(RunCli("learn" + d + o + " --episodes 2000 --oracle"), 0);
    ASSERT_EQ(RunCli("simulate" + d + o), 0);
    ASSERT_EQ(RunCli("bayes" + d + o), 0);
    ASSERT_EQ(RunCli("monotone --config " + Config("example2_monotone.json") + o),
              0);
    ASSERT_EQ(RunCli("equilibrium " + Config("table1.txt") + o), 0);
  }

  fs::path root_;
};

TEST_F(CliTest, EveryCommandIsByteIdenticalOnRerun) {
  RunAll(root_ / "a");
  RunAll(root_ / "b");
  const auto a = Snapshot(root_ / "a");
  const auto b = Snapshot(root_ / "b");
  EXPECT_EQ(a.size(), 18u);
  EXPECT_EQ(a, b);
  for (const char* f : {"steady.json", "oracle_q.json", "oracle_policies.csv",
                        "learned_q.json", "convergence.csv", "learn_report.json",
                        "trajectory.csv", "bayes_attacker.csv", "bayes.json",
                        "monotone.json", "equilibrium.json"}) {
    EXPECT_TRUE(a.count(f)) << f;
  }
}

TEST_F(CliTest, SeedChangesLearnedTables) {
  const std::string d = " --config " + Config("default.json") + " --episodes 200";
  ASSERT_EQ(RunCli("learn" + d + " --seed 1 --out " + (root_ / "s1").string()), 0);
  ASSERT_EQ(RunCli("learn" + d + " --seed 2 --out " + (root_ / "s2").string()), 0);
  EXPECT_NE(Slurp(root_ / "s1" / "learned_q.json"),
            Slurp(root_ / "s2" / "learned_q.json"));
}

TEST_F(CliTest, ExitCodes) {
  const std::string o = " --out " + root_.string();
  EXPECT_EQ(RunCli("--help"), 0);
  EXPECT_EQ(RunCli("steady --help"), 0);
  EXPECT_EQ(RunCli(""), 2);
  EXPECT_EQ(RunCli("frobnicate"), 2);
  EXPECT_EQ(RunCli("steady --bogus"), 2);
  EXPECT_EQ(RunCli("steady" + o), 2);
  EXPECT_EQ(RunCli("steady --config " + (root_ / "missing.json").string() + o), 2);

  std::ofstream(root_ / "broken.json") << "{ \"seed\": 1, ";
  EXPECT_EQ(RunCli("steady --config " + (root_ / "broken.json").string() + o), 2);
  std::string text = Slurp(Config("example2_monotone.json"));
  const std::size_t at = text.find("\"seed\"");
  text.erase(at, text.find('\n', at) - at);
  std::ofstream(root_ / "noseed.json") << text;
  EXPECT_EQ(RunCli("solve --config " + (root_ / "noseed.json").string() + o), 2);
  EXPECT_EQ(RunCli("bayes --config " + Config("example2_monotone.json") + o), 2);
  EXPECT_EQ(RunCli("learn --config " + Config("default.json") + " --episodes -3" +
                o),
            2);

  // No policy file has been written yet.
  EXPECT_EQ(RunCli("simulate --config " + Config("default.json") + " --out " +
                (root_ / "empty").string()),
            1);
  std::ofstream(root_ / "bad.txt") << "1 2\n3 4\n";
  EXPECT_EQ(RunCli("equilibrium " + (root_ / "bad.txt").string() + o), 2);
}

}  // namespace
