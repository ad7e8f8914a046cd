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

#include "dosgame/io.h"

#include <cmath>
#include <limits>
#include <string>

#include <gtest/gtest.h>

#include "test_support.h"

namespace dosgame {
namespace {

Json BaseDoc() {
  return Json::parse(R"({
    "seed": 5,
    "model": {"A": 1.2, "C": 0.7, "Q": 0.8, "R": 0.8},
    "channel": {"gains": [0.6, 0.8], "kernel": [[0.5, 0.5], [0.5, 0.5]],
                "sigma2": 0.5},
    "game": {"actions_attacker": [1, 6], "actions_sensor": [2, 5],
             "alpha_s": 1, "alpha_a": 0.1, "beta": 0.75, "tau_max": 4}
  })");
}

std::string ErrorOf(const Json& doc) {
  try {
    ParseConfig(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ConfigTest, ParsesMinimalDocument) {
  const ExperimentConfig cfg = ParseConfig(BaseDoc());
  EXPECT_EQ(cfg.seed, 5u);
  EXPECT_EQ(cfg.learn.seed, 5u);
  EXPECT_EQ(cfg.game.num_states(), 20);
  EXPECT_EQ(cfg.game.params().alpha_a, 0.1);
  EXPECT_EQ(cfg.game.channel().alpha(), 1.0);
  EXPECT_EQ(cfg.learn.episodes, 50000);
  EXPECT_FALSE(cfg.bayes.has_value());
  EXPECT_EQ(cfg.output_dir, "out");
  EXPECT_NEAR(cfg.game.steady().p_bar(0, 0), testing::ScalarPBar(), 1e-9);
}

TEST(ConfigTest, OptionalSections) {
  Json doc = BaseDoc();
  doc["learn"] = {{"episodes", 10}, {"solver", "lemke_howson"},
                  {"checkpoints", {5, 10}}};
  doc["bayes"] = {{"m", 2}, {"belief", "kernel"}, {"payoff", "immediate"}};
  doc["simulate"] = {{"horizon", 7}, {"start_state", 3}};
  doc["game"]["gain_mode"] = "markov";
  doc["output_dir"] = "elsewhere";
  const ExperimentConfig cfg = ParseConfig(doc);
  EXPECT_EQ(cfg.learn.episodes, 10);
  EXPECT_EQ(cfg.learn.solver, StageSolver::kLemkeHowson);
  EXPECT_EQ(cfg.learn.checkpoints.size(), 2u);
  ASSERT_TRUE(cfg.bayes.has_value());
  EXPECT_EQ(cfg.bayes->m, 2);
  EXPECT_EQ(cfg.bayes->belief, BeliefMode::kKernel);
  EXPECT_EQ(cfg.bayes->payoff, BayesPayoff::kImmediate);
  EXPECT_EQ(cfg.simulate.horizon, 7);
  EXPECT_EQ(cfg.game.params().gain_mode, GainMode::kMarkov);
  EXPECT_EQ(cfg.output_dir, "elsewhere");
}

TEST(ConfigTest, ErrorsNameTheField) {
  Json doc = BaseDoc();
  doc.erase("seed");
  EXPECT_EQ(ErrorOf(doc).rfind("seed", 0), 0u);

  doc = BaseDoc();
  doc["game"]["beta"] = 1.5;
  EXPECT_EQ(ErrorOf(doc).rfind("game", 0), 0u);

  doc = BaseDoc();
  doc["channel"]["kernel"] = {{1.0, 0.0}, {0.0, 1.0}};
  EXPECT_EQ(ErrorOf(doc).rfind("channel", 0), 0u);

  doc = BaseDoc();
  doc["model"]["A"] = "big";
  EXPECT_EQ(ErrorOf(doc).rfind("model.A", 0), 0u);

  doc = BaseDoc();
  doc["learn"] = {{"exploration", 2.0}};
  EXPECT_EQ(ErrorOf(doc).rfind("learn.exploration", 0), 0u);

  doc = BaseDoc();
  doc["bayes"] = {{"belief", "kernel"}};
  EXPECT_EQ(ErrorOf(doc).rfind("bayes", 0), 0u);

  doc = BaseDoc();
  doc["learn"] = {{"solver", "simplex"}};
  EXPECT_EQ(ErrorOf(doc).rfind("learn.solver", 0), 0u);
}

TEST(FormatTest, ShortestRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.0, 0.0}) {
    EXPECT_EQ(std::stod(FormatDouble(x)), x);
  }
  EXPECT_EQ(FormatDouble(0.25), "0.25");
}

TEST(QTableIoTest, JsonRoundTripIsExact) {
  const GameSpec spec = testing::DefaultSpec();
  QTable q(spec.num_states(), 2, 2);
  for (int i = 0; i < q.num_cells(); ++i) {
    q.values(1)[i] = std::sin(i) / 3.0;
    q.values(2)[i] = -q.values(1)[i];
    q.visits()[i] = i;
  }
  const Json doc = QTableToJson(spec, q);
  const QTable back = QTableFromJson(spec, Json::parse(doc.dump()));
  EXPECT_EQ(back.values(1), q.values(1));
  EXPECT_EQ(back.values(2), q.values(2));
  EXPECT_EQ(back.visits(), q.visits());
  const std::string csv = QTableCsv(spec, q, 1);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "state,\"(1,2)\",\"(1,5)\",\"(6,2)\",\"(6,5)\"");
}

TEST(PolicyIoTest, CsvRoundTrip) {
  const GameSpec spec = testing::DefaultSpec();
  std::vector<EquilibriumResult> eq(spec.num_states());
  for (int s = 0; s < spec.num_states(); ++s) {
    eq[s].strat_p1.probs = Eigen::Vector2d(s / 19.0, 1 - s / 19.0);
    eq[s].strat_p2 = MixedStrategy::Pure(2, s % 2);
  }
  const auto [pa, ps] = ParsePoliciesCsv(spec, PoliciesCsv(spec, eq));
  for (int s = 0; s < spec.num_states(); ++s) {
    EXPECT_EQ(pa[s].probs, eq[s].strat_p1.probs);
    EXPECT_EQ(ps[s].probs, eq[s].strat_p2.probs);
  }
  EXPECT_THROW(ParsePoliciesCsv(spec, "state\n"), std::runtime_error);
}

TEST(TypeStrategyIoTest, TableLayout) {
  const GameSpec spec = testing::DefaultSpec();
  const TypeStrategy s{{MixedStrategy::Pure(2, 0), MixedStrategy::Uniform(2)}};
  EXPECT_EQ(TypeStrategyCsv(spec, s, 1),
            ",g_a=0.6,g_a=0.8\n"
            "\"Pr(a1=1|g_a)\",1,0.5\n"
            "\"Pr(a1=6|g_a)\",0,0.5\n");
  EXPECT_EQ(TypeStrategyCsv(spec, s, 2).substr(0, 17), ",g_s=0.6,g_s=0.8\n");
}

TEST(MatrixFileTest, BlocksCommentsAndProfile) {
  const MatrixFile mf = ParseMatrixFile(
      "# comment\n1 2\n3 4\n\n-1 -2  # trailing\n-3 -4\n"
      "profile 0.25 0.75 | 1 0\n");
  EXPECT_EQ(mf.payoff_p1(1, 0), 3.0);
  EXPECT_EQ(mf.payoff_p2(0, 1), -2.0);
  ASSERT_TRUE(mf.profile.has_value());
  EXPECT_DOUBLE_EQ(mf.profile->first.probs(1), 0.75);
  EXPECT_DOUBLE_EQ(mf.profile->second.probs(0), 1.0);
  EXPECT_FALSE(ParseMatrixFile("1 2\n\n3 4\n").profile.has_value());
  EXPECT_THROW(ParseMatrixFile("1 2\n3\n\n1 2\n3 4\n"), std::runtime_error);
  EXPECT_THROW(ParseMatrixFile("1 2\n"), std::runtime_error);
  EXPECT_THROW(ParseMatrixFile("1 2\n\n3 4\nprofile 0.5 0.5 | 1 0\n"),
               std::runtime_error);
}

}  // namespace
}  // namespace dosgame
